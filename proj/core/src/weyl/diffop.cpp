#include "qes/weyl/diffop.hpp"

#include <algorithm>

namespace qes::weyl {

using exact::Base;
using exact::DenExponents;

namespace {

BigRat binomial(unsigned n, unsigned k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return BigRat(r);
}

Chart chart_of(Base b) { return (b == Base::Dxy || b == Base::Y) ? Chart::XY : Chart::UV; }

// Lazily filled table of mixed partial derivatives of one coefficient.
class DerivTable {
 public:
  DerivTable(const FactoredRatFn& f, Var v1, Var v2) : v1_(v1), v2_(v2) { rows_.push_back({f}); }

  const FactoredRatFn& get(unsigned i, unsigned j) {
    while (rows_.size() <= i) rows_.push_back({rows_.back()[0].diff(v1_)});
    auto& row = rows_[i];
    while (row.size() <= j) row.push_back(row.back().diff(v2_));
    return row[j];
  }

 private:
  Var v1_, v2_;
  std::vector<std::vector<FactoredRatFn>> rows_;
};

}  // namespace

std::string_view chart_name(Chart c) { return c == Chart::XY ? "XY" : "UV"; }
Var first_var(Chart c) { return c == Chart::XY ? Var::x : Var::u; }
Var second_var(Chart c) { return c == Chart::XY ? Var::y : Var::v; }

DiffOp::DiffOp(Chart chart, TermMap terms) : chart_(chart) {
  for (auto& [o, c] : terms)
    if (!c.is_zero()) terms_.emplace(o, std::move(c));
}

DiffOp DiffOp::scalar(Chart chart, FactoredRatFn c) { return term(chart, 0, 0, std::move(c)); }

DiffOp DiffOp::term(Chart chart, unsigned a, unsigned b, FactoredRatFn c) {
  DiffOp op(chart);
  op.add_term(a, b, c);
  return op;
}

unsigned DiffOp::order() const { return terms_.empty() ? 0 : terms_.begin()->first.total(); }

FactoredRatFn DiffOp::coefficient(unsigned a, unsigned b) const {
  auto it = terms_.find(Order{a, b});
  return it == terms_.end() ? FactoredRatFn() : it->second;
}

bool DiffOp::has_polynomial_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_polynomial(); });
}

void DiffOp::add_term(unsigned a, unsigned b, const FactoredRatFn& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Order{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOp DiffOp::operator-() const {
  DiffOp r = *this;
  for (auto& [_, c] : r.terms_) c = -c;
  return r;
}

void DiffOp::check_chart(const DiffOp& o) const {
  if (o.chart_ != chart_)
    throw ChartMismatch("operators live in different charts (" + std::string(chart_name(chart_)) + " vs " +
                        std::string(chart_name(o.chart_)) + ")");
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  check_chart(o);
  for (const auto& [k, c] : o.terms_) add_term(k.a, k.b, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  check_chart(o);
  for (const auto& [k, c] : o.terms_) add_term(k.a, k.b, -c);
  return *this;
}

DiffOp& DiffOp::operator*=(const BigRat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [_, t] : terms_) t *= c;
  return *this;
}

DiffOp& DiffOp::operator*=(const FactoredRatFn& c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

bool operator==(const DiffOp& a, const DiffOp& b) {
  if (a.chart_ != b.chart_ || a.terms_.size() != b.terms_.size()) return false;
  for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
    if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
  return true;
}

DiffOp DiffOp::subst(const std::map<Var, MPoly>& bindings) const {
  return map_coefficients([&](const FactoredRatFn& c) { return c.subst(bindings); });
}

DiffOp DiffOp::map_coefficients(const std::function<FactoredRatFn(const FactoredRatFn&)>& f) const {
  DiffOp r(chart_);
  for (const auto& [k, c] : terms_) r.add_term(k.a, k.b, f(c));
  return r;
}

std::vector<SerializedTerm> DiffOp::serialize() const {
  std::vector<SerializedTerm> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back({k.a, k.b, c.to_string()});
  return out;
}

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  const std::string d1 = "d" + std::string(exact::name(first_var(chart_)));
  const std::string d2 = "d" + std::string(exact::name(second_var(chart_)));
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (k.a) out += "*" + d1 + (k.a > 1 ? "^" + std::to_string(k.a) : "");
    if (k.b) out += "*" + d2 + (k.b > 1 ? "^" + std::to_string(k.b) : "");
  }
  return out;
}

DiffOp compose(const DiffOp& A, const DiffOp& B) {
  if (A.chart() != B.chart()) throw ChartMismatch("compose: operators live in different charts");
  const Var v1 = first_var(A.chart()), v2 = second_var(A.chart());
  DiffOp r(A.chart());
  std::vector<DerivTable> tables;
  tables.reserve(B.terms().size());
  for (const auto& [_, cb] : B.terms()) tables.emplace_back(cb, v1, v2);
  for (const auto& [ka, ca] : A.terms()) {
    std::size_t idx = 0;
    for (const auto& [kb, cb] : B.terms()) {
      DerivTable& tab = tables[idx++];
      for (unsigned i = 0; i <= ka.a; ++i) {
        for (unsigned j = 0; j <= ka.b; ++j) {
          const FactoredRatFn& d = tab.get(i, j);
          if (d.is_zero()) continue;
          FactoredRatFn c = ca * d;
          c *= binomial(ka.a, i) * binomial(ka.b, j);
          r.add_term(ka.a - i + kb.a, ka.b - j + kb.b, c);
        }
      }
    }
  }
  return r;
}

DiffOp commutator(const DiffOp& A, const DiffOp& B) { return compose(A, B) - compose(B, A); }

DiffOp power(const DiffOp& A, unsigned k) {
  DiffOp r = DiffOp::identity(A.chart());
  for (unsigned i = 0; i < k; ++i) r = compose(r, A);
  return r;
}

FactoredRatFn apply(const DiffOp& A, const FactoredRatFn& p) {
  const Var v1 = first_var(A.chart()), v2 = second_var(A.chart());
  DerivTable tab(p, v1, v2);
  FactoredRatFn out;
  for (const auto& [k, c] : A.terms()) {
    const FactoredRatFn& d = tab.get(k.a, k.b);
    if (!d.is_zero()) out += c * d;
  }
  return out;
}

DiffOp conjugate_by_power(const DiffOp& A, Base base, const MPoly& s) {
  if (chart_of(base) != A.chart())
    throw ChartMismatch("conjugate_by_power: base " + std::string(exact::base_name(base)) + " is not in chart " +
                        std::string(chart_name(A.chart())));
  if (s.is_zero() || A.is_zero()) return A;
  const Chart ch = A.chart();
  const MPoly& B = exact::base_polynomial(base);
  const DiffOp X = DiffOp::term(ch, 1, 0) + DiffOp::scalar(ch, FactoredRatFn::over(s * B.diff(first_var(ch)), base));
  const DiffOp Y = DiffOp::term(ch, 0, 1) + DiffOp::scalar(ch, FactoredRatFn::over(s * B.diff(second_var(ch)), base));
  std::vector<DiffOp> xp{DiffOp::identity(ch)}, yp{DiffOp::identity(ch)};
  std::map<std::pair<unsigned, unsigned>, DiffOp> mixed;
  DiffOp r(ch);
  for (const auto& [k, c] : A.terms()) {
    while (xp.size() <= k.a) xp.push_back(compose(xp.back(), X));
    while (yp.size() <= k.b) yp.push_back(compose(yp.back(), Y));
    auto it = mixed.find({k.a, k.b});
    if (it == mixed.end()) it = mixed.emplace(std::pair{k.a, k.b}, compose(xp[k.a], yp[k.b])).first;
    r += c * it->second;
  }
  return r;
}

namespace {

FactoredRatFn to_uv(const FactoredRatFn& f, unsigned a, unsigned b) {
  MPoly num = f.numerator();
  const DenExponents& den = f.den();
  if (den[static_cast<std::size_t>(Base::Duv)] || den[static_cast<std::size_t>(Base::V)])
    throw ChartMismatch("restrict_to_even: coefficient already uses UV bases");
  if (num.support() & (exact::mask(Var::u) | exact::mask(Var::v)))
    throw ChartMismatch("restrict_to_even: coefficient mentions u or v");
  unsigned py = den[static_cast<std::size_t>(Base::Y)];
  if (py % 2) {
    num *= exact::vars::y();
    ++py;
  }
  if (!num.has_parity(Var::y, 0)) {
    throw ParityViolation("coefficient of d^" + std::to_string(a) + "_x d^" + std::to_string(b) +
                              "_y has the wrong y-parity: " + f.to_string(),
                          a, b);
  }
  DenExponents e{};
  e[static_cast<std::size_t>(Base::Duv)] = den[static_cast<std::size_t>(Base::Dxy)];
  e[static_cast<std::size_t>(Base::V)] = py / 2;
  return FactoredRatFn(exact::even_xy_to_uv(num), e);
}

}  // namespace

DiffOp restrict_to_even(const DiffOp& A) {
  if (A.chart() != Chart::XY) throw ChartMismatch("restrict_to_even expects an XY operator");
  DiffOp r(Chart::UV);
  for (const auto& [k, c] : A.terms()) {
    // d^b/dy^b g(y^2) = sum_j b!/(j!(b-2j)!) (2y)^(b-2j) g^(b-j)(v)
    for (unsigned j = 0; 2 * j <= k.b; ++j) {
      const unsigned p = k.b - 2 * j;
      BigInt num, den1, den2;
      mpz_fac_ui(num.get_mpz_t(), k.b);
      mpz_fac_ui(den1.get_mpz_t(), j);
      mpz_fac_ui(den2.get_mpz_t(), p);
      BigRat factor(num, den1 * den2);
      factor.canonicalize();
      factor *= BigRat(BigInt(1) << p);
      FactoredRatFn coef = c * FactoredRatFn(exact::vars::y().pow(p) * factor);
      r.add_term(k.a, k.b - j, to_uv(coef, k.a, k.b));
    }
  }
  return r;
}

DiffOp reflect_y(const DiffOp& A) {
  if (A.chart() != Chart::XY) throw ChartMismatch("reflect_y expects an XY operator");
  DiffOp r(Chart::XY);
  for (const auto& [k, c] : A.terms()) {
    FactoredRatFn f = c.reflect(Var::y);
    if (k.b % 2) f = -f;
    r.add_term(k.a, k.b, f);
  }
  return r;
}

}  // namespace qes::weyl
