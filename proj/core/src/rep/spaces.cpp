#include "qes/rep/spaces.hpp"

#include <algorithm>
#include <chrono>

#include "qes/util/parallel.hpp"

namespace qes::rep {

using exact::FactoredRatFn;

MonomialBasis::MonomialBasis(Chart chart, unsigned n) : chart_(chart), n_(n) {
  const Var a = weyl::first_var(chart), b = weyl::second_var(chart);
  const unsigned step = chart == Chart::XY ? 1 : 2;
  for (unsigned w = 0; w <= n; ++w)
    for (unsigned q = 0; q * step <= w; ++q) {
      // p descending as q ascends.
      const unsigned p = w - q * step;
      monomials_.push_back(Monomial::of(a, p) * Monomial::of(b, q));
    }
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

MonomialBasis MonomialBasis::P(unsigned n) { return MonomialBasis(Chart::XY, n); }
MonomialBasis MonomialBasis::Q(unsigned n) { return MonomialBasis(Chart::UV, n); }

std::optional<std::size_t> MonomialBasis::index_of(Monomial m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

unsigned MonomialBasis::weight(Monomial m) const {
  const unsigned step = chart_ == Chart::XY ? 1 : 2;
  return m.exponent(weyl::first_var(chart_)) + step * m.exponent(weyl::second_var(chart_));
}

std::vector<std::string> MonomialBasis::labels() const {
  std::vector<std::string> out;
  for (const auto& m : monomials_) out.push_back(MPoly::monomial(m).to_string());
  return out;
}

Bindings qes_binding(unsigned n) { return {{Var::nu, MPoly(exact::make_rational(-static_cast<long>(n), 3))}}; }

namespace {

exact::VarMask chart_mask(Chart ch) {
  return static_cast<exact::VarMask>(exact::mask(weyl::first_var(ch)) | exact::mask(weyl::second_var(ch)));
}

// Image of every basis monomial, split into chart monomials.
std::vector<std::map<Monomial, MPoly>> images(const DiffOp& op, const MonomialBasis& basis, const Bindings& bindings) {
  if (op.chart() != basis.chart()) throw weyl::ChartMismatch("operator and basis charts differ");
  const DiffOp bound = bindings.empty() ? op : op.subst(bindings);
  if (!bound.has_polynomial_coefficients()) throw std::invalid_argument("operator must have polynomial coefficients");
  std::vector<std::map<Monomial, MPoly>> out(basis.size());
  util::parallel_for(basis.size(), [&](std::size_t j) {
    const auto img = apply(bound, FactoredRatFn(MPoly::monomial(basis[j])));
    out[j] = img.as_polynomial().value().collect(chart_mask(basis.chart()));
  });
  return out;
}

}  // namespace

InvarianceResult invariance_check(const DiffOp& op, const MonomialBasis& basis, const Bindings& bindings) {
  InvarianceResult r;
  const auto imgs = images(op, basis, bindings);
  for (std::size_t j = 0; j < imgs.size(); ++j) {
    MPoly overflow;
    for (const auto& [m, c] : imgs[j])
      if (!basis.index_of(m)) overflow += MPoly::monomial(m) * c;
    if (!overflow.is_zero()) {
      r.invariant = false;
      r.leakage.push_back({j, std::move(overflow)});
    }
  }
  return r;
}

PolyMatrix matrix_of(const DiffOp& op, const MonomialBasis& basis, const Bindings& bindings) {
  const auto imgs = images(op, basis, bindings);
  PolyMatrix m(basis.size(), basis.size());
  for (std::size_t j = 0; j < imgs.size(); ++j)
    for (const auto& [mono, c] : imgs[j]) {
      const auto i = basis.index_of(mono);
      if (!i) throw NotInvariant("image of " + MPoly::monomial(basis[j]).to_string() + " leaves the space");
      m(*i, j) = c;
    }
  return m;
}

RatMatrix specialize(const PolyMatrix& m, const Bindings& bindings) {
  return m.map([&](const MPoly& p) {
    const MPoly s = p.subst(bindings);
    if (!s.is_constant()) throw std::domain_error("unbound parameter in matrix entry: " + s.to_string());
    return s.constant_term();
  });
}

models::VerificationReport particular_integral_check(unsigned n, Chart chart) {
  const auto start = std::chrono::steady_clock::now();
  models::VerificationReport r;
  const bool xy = chart == Chart::XY;
  r.identity = std::string("particular_integral_") + (xy ? "P" : "Q") + std::to_string(n);
  const Bindings b = qes_binding(n);
  const DiffOp h = (xy ? models::h_xy() : models::h_g2_uv()).subst(b);
  const DiffOp ip = xy ? models::ipar_xy(static_cast<int>(n)) : models::ipar_uv(static_cast<int>(n));
  const DiffOp c = commutator(h, ip);
  const MonomialBasis basis = xy ? MonomialBasis::P(n) : MonomialBasis::Q(n);
  std::vector<FactoredRatFn> imgs(basis.size());
  util::parallel_for(basis.size(),
                     [&](std::size_t j) { imgs[j] = apply(c, FactoredRatFn(MPoly::monomial(basis[j]))); });
  std::size_t nonzero = 0;
  for (std::size_t j = 0; j < imgs.size(); ++j)
    if (!imgs[j].is_zero()) {
      ++nonzero;
      r.residual_terms.push_back({0, 0, MPoly::monomial(basis[j]).to_string() + " -> " + imgs[j].to_string()});
    }
  r.status = nonzero == 0 ? models::Status::ExactPass : models::Status::ExactFail;
  r.notes.push_back("commutator order " + std::to_string(c.order()) + ", " + std::to_string(basis.size()) +
                    " basis images, " + std::to_string(nonzero) + " nonzero");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

BigRat kappa(unsigned n) { return exact::make_rational(static_cast<long>(n * (n + 3)), 9); }

}  // namespace qes::rep
