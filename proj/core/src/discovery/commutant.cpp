#include "qes/discovery/commutant.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <unordered_map>

#include "qes/discovery/modular.hpp"
#include "qes/models/catalog.hpp"
#include "qes/util/parallel.hpp"

namespace qes::discovery {

using exact::BigInt;
using exact::FactoredRatFn;
using exact::Monomial;
using exact::MPoly;
using exact::Var;

namespace {

struct Unknown {
  unsigned a, b;
  Monomial mono;
};

std::vector<unsigned> degrees_of(const AnsatzSpec& spec) {
  auto d = spec.max_degree.empty() ? default_degrees(spec.max_order) : spec.max_degree;
  if (d.size() != spec.max_order + 1) throw std::invalid_argument("ansatz: one degree bound per order required");
  return d;
}

std::vector<Unknown> enumerate(const AnsatzSpec& spec) {
  const auto deg = degrees_of(spec);
  const Var v1 = weyl::first_var(spec.chart), v2 = weyl::second_var(spec.chart);
  std::vector<Unknown> out;
  for (unsigned r = 0; r <= spec.max_order; ++r)
    for (unsigned a = r + 1; a-- > 0;)
      for (unsigned d = 0; d <= deg[r]; ++d)
        for (unsigned p = d + 1; p-- > 0;) out.push_back({a, r - a, Monomial::of(v1, p) * Monomial::of(v2, d - p)});
  return out;
}

// Row key: (a, b, packed chart monomial).
struct Key {
  unsigned a, b;
  std::uint64_t mono;
  bool operator==(const Key&) const = default;
};
struct KeyHash {
  std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.mono * 1315423911u + k.a * 131 + k.b); }
};

class RowIndex {
 public:
  std::size_t operator()(const Key& k) {
    const auto [it, inserted] = index_.try_emplace(k, index_.size());
    return it->second;
  }
  std::size_t size() const { return index_.size(); }

 private:
  std::unordered_map<Key, std::size_t, KeyHash> index_;
};

MPoly polynomial(const FactoredRatFn& c) {
  auto p = c.as_polynomial();
  if (!p) throw std::invalid_argument("discovery: non-polynomial coefficient");
  if (p->support() & exact::kParamMask) throw std::invalid_argument("discovery: unbound parameter in operator");
  return std::move(*p);
}

std::vector<std::pair<std::size_t, BigRat>> entries(const DiffOp& op, RowIndex& rows) {
  std::vector<std::pair<std::size_t, BigRat>> out;
  for (const auto& [ord, c] : op.terms()) {
    const MPoly poly = polynomial(c);
    for (const auto& t : poly.terms()) out.emplace_back(rows({ord.a, ord.b, t.mono.packed()}), t.coef);
  }
  return out;
}

DiffOp to_operator(const std::vector<Unknown>& unknowns, const std::vector<BigRat>& v, Chart chart) {
  std::map<std::pair<unsigned, unsigned>, MPoly> coeffs;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) coeffs[{unknowns[i].a, unknowns[i].b}] += MPoly::monomial(unknowns[i].mono, v[i]);
  DiffOp out(chart);
  for (const auto& [ab, c] : coeffs)
    if (!c.is_zero()) out.add_term(ab.first, ab.second, FactoredRatFn(c));
  return out;
}

// Coordinates of op in the ansatz; nullopt when op does not fit.
std::optional<std::vector<BigRat>> coordinates(const std::vector<Unknown>& unknowns, const DiffOp& op) {
  std::map<std::tuple<unsigned, unsigned, std::uint64_t>, std::size_t> index;
  for (std::size_t i = 0; i < unknowns.size(); ++i) index[{unknowns[i].a, unknowns[i].b, unknowns[i].mono.packed()}] = i;
  std::vector<BigRat> v(unknowns.size(), BigRat(0));
  for (const auto& [ord, c] : op.terms()) {
    const MPoly poly = polynomial(c);
    for (const auto& t : poly.terms()) {
      const auto it = index.find({ord.a, ord.b, t.mono.packed()});
      if (it == index.end()) return std::nullopt;
      v[it->second] = t.coef;
    }
  }
  return v;
}

std::size_t rank_of(const std::vector<std::vector<BigRat>>& vs) {
  if (vs.empty()) return 0;
  rep::RatMatrix m(vs.size(), vs[0].size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs[i].size(); ++j) m(i, j) = vs[i][j];
  return rep::rank(m);
}

BigInt crt(const BigInt& r, const BigInt& m, std::uint64_t residue, std::uint64_t p) {
  const Zp f(p);
  const std::uint64_t rp = mpz_fdiv_ui(r.get_mpz_t(), p), mp = mpz_fdiv_ui(m.get_mpz_t(), p);
  const std::uint64_t t = f.mul(f.sub(residue, rp), f.inv(mp));
  return r + m * BigInt(static_cast<unsigned long>(t));
}

bool lex_better(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

}  // namespace

std::vector<unsigned> default_degrees(unsigned max_order) {
  std::vector<unsigned> d;
  for (unsigned r = 0; r <= max_order; ++r) d.push_back(r + 4);
  return d;
}

std::size_t unknown_count(const AnsatzSpec& spec) {
  std::size_t n = 0;
  const auto deg = degrees_of(spec);
  for (unsigned r = 0; r <= spec.max_order; ++r) n += (r + 1) * (deg[r] + 1) * (deg[r] + 2) / 2;
  return n;
}

LinearSolution solve_multimodular(const SparseSystem& a, const std::vector<std::pair<std::size_t, BigRat>>& rhs) {
  const std::size_t n = a.columns.size(), width = n + (rhs.empty() ? 0 : 1);
  LinearSolution out;
  std::vector<std::size_t> ref;      // pivot columns of the reference prime
  std::vector<std::size_t> free;     // non-pivot columns, augmented column last
  std::vector<BigInt> residues;      // R[i][free[j]] at i * free.size() + j
  BigInt modulus = 1;
  unsigned agreeing = 0, next_attempt = 1;
  for (const std::uint64_t p : large_primes()) {
    const Zp f(p);
    std::vector<std::vector<std::uint64_t>> rows(a.rows, std::vector<std::uint64_t>(width, 0));
    bool lucky = true;
    const auto put = [&](std::size_t r, std::size_t c, const BigRat& v) {
      const auto m = f.from_rational(v);
      if (!m) lucky = false;
      else rows[r][c] = *m;
    };
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [r, v] : a.columns[j]) put(r, j, v);
    for (const auto& [r, v] : rhs) put(r, n, v);
    if (!lucky) continue;
    ++out.primes;
    const auto piv = rref_mod(rows, width, f);
    if (ref.empty() || lex_better(piv, ref)) {
      ref = piv;
      free.clear();
      std::vector<bool> is_pivot(width, false);
      for (const auto c : ref) is_pivot[c] = true;
      for (std::size_t c = 0; c < width; ++c)
        if (!is_pivot[c]) free.push_back(c);
      residues.assign(ref.size() * free.size(), BigInt(0));
      modulus = 1;
      agreeing = 0;
      next_attempt = 1;
    } else if (piv != ref) {
      continue;
    }
    for (std::size_t i = 0; i < ref.size(); ++i)
      for (std::size_t j = 0; j < free.size(); ++j) {
        auto& r = residues[i * free.size() + j];
        r = crt(r, modulus, rows[i][free[j]], p);
      }
    modulus *= BigInt(static_cast<unsigned long>(p));
    ++agreeing;

    const bool inconsistent = !rhs.empty() && !ref.empty() && ref.back() == n;
    if (inconsistent) {
      if (agreeing < 2) continue;
      out.consistent = false;
      out.augmented_rank = ref.size();
      // Rank of A alone from the same elimination: the augmented pivot is the last one.
      out.rank = ref.size() - 1;
      return out;
    }
    if (agreeing < next_attempt) continue;
    next_attempt *= 2;

    std::vector<BigRat> rec(residues.size());
    bool ok = true;
    for (std::size_t k = 0; k < residues.size() && ok; ++k) {
      const auto q = rational_reconstruct(residues[k], modulus);
      if (!q) ok = false;
      else rec[k] = *q;
    }
    if (!ok) continue;

    const std::size_t nf = free.size();
    std::vector<std::vector<BigRat>> basis;
    for (std::size_t j = 0; j < nf; ++j) {
      if (free[j] == n) continue;
      std::vector<BigRat> v(n, BigRat(0));
      v[free[j]] = 1;
      for (std::size_t i = 0; i < ref.size(); ++i) v[ref[i]] = -rec[i * nf + j];
      basis.push_back(std::move(v));
    }
    std::optional<std::vector<BigRat>> part;
    if (!rhs.empty()) {
      std::vector<BigRat> v(n, BigRat(0));
      for (std::size_t i = 0; i < ref.size(); ++i) v[ref[i]] = rec[i * nf + (nf - 1)];
      part = std::move(v);
    }
    // Exact verification of every reconstructed vector.
    const auto image = [&](const std::vector<BigRat>& v) {
      std::vector<BigRat> acc(a.rows, BigRat(0));
      for (std::size_t j = 0; j < n; ++j)
        if (v[j] != 0)
          for (const auto& [r, val] : a.columns[j]) acc[r] += val * v[j];
      return acc;
    };
    for (const auto& v : basis)
      for (const auto& e : image(v)) ok = ok && e == 0;
    if (part) {
      auto acc = image(*part);
      for (const auto& [r, val] : rhs) acc[r] -= val;
      for (const auto& e : acc) ok = ok && e == 0;
    }
    if (!ok) continue;
    out.rank = out.augmented_rank = ref.size();
    out.nullspace = std::move(basis);
    out.particular = std::move(part);
    return out;
  }
  throw std::runtime_error("solve_multimodular: reconstruction did not stabilize");
}

bool commutes_on_monomials(const DiffOp& h, const DiffOp& k) {
  const unsigned top = h.order() + k.order();
  const Var v1 = weyl::first_var(h.chart()), v2 = weyl::second_var(h.chart());
  for (unsigned d = 0; d + 1 <= std::max(top, 1u); ++d)
    for (unsigned p = 0; p <= d; ++p) {
      const FactoredRatFn m(MPoly::monomial(Monomial::of(v1, p) * Monomial::of(v2, d - p)));
      const FactoredRatFn lhs = weyl::apply(h, weyl::apply(k, m)), rhs = weyl::apply(k, weyl::apply(h, m));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

CommutantBasis commutant_solve(const DiffOp& h, const AnsatzSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  CommutantBasis out;
  out.spec = spec;
  if (spec.max_degree.empty()) out.spec.max_degree = default_degrees(spec.max_order);
  out.unknowns = unknown_count(out.spec);
  if (out.unknowns > spec.max_unknowns)
    throw AnsatzTooLarge("ansatz has " + std::to_string(out.unknowns) + " unknowns, cap " + std::to_string(spec.max_unknowns));
  if (h.chart() != spec.chart) throw weyl::ChartMismatch("commutant_solve: chart mismatch");
  const DiffOp hb = h.subst(spec.bindings);
  const auto unknowns = enumerate(out.spec);

  RowIndex rows;
  SparseSystem sys;
  for (const auto& u : unknowns)
    sys.columns.push_back(entries(weyl::commutator(hb, DiffOp::term(spec.chart, u.a, u.b, FactoredRatFn(MPoly::monomial(u.mono)))), rows));
  sys.rows = rows.size();
  out.equations = sys.rows;

  const auto sol = solve_multimodular(sys);
  out.primes = sol.primes;
  out.nullspace_dim = sol.nullspace.size();
  out.verified = true;
  for (const auto& v : sol.nullspace) {
    out.members.push_back(to_operator(unknowns, v, spec.chart));
    out.verified = out.verified && commutes_on_monomials(hb, out.members.back());
  }

  std::vector<std::vector<BigRat>> trivial;
  const std::pair<const char*, DiffOp> candidates[] = {
      {"I", DiffOp::identity(spec.chart)}, {"h", hb}, {"h^2", weyl::compose(hb, hb)}};
  for (const auto& [name, op] : candidates)
    if (auto c = coordinates(unknowns, op)) {
      out.trivial.emplace_back(name);
      trivial.push_back(std::move(*c));
    }
  out.quotient_dim = out.nullspace_dim - rank_of(trivial);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

bool in_span(const CommutantBasis& basis, const DiffOp& op) {
  const auto unknowns = enumerate(basis.spec);
  const auto target = coordinates(unknowns, op);
  if (!target) return false;
  std::vector<std::vector<BigRat>> vs;
  for (const auto& m : basis.members) vs.push_back(*coordinates(unknowns, m));
  const std::size_t r = rank_of(vs);
  vs.push_back(*target);
  return rank_of(vs) == r;
}

Bindings random_bindings(std::uint64_t seed, const std::vector<Var>& vars) {
  std::mt19937_64 g(seed);
  Bindings b;
  for (const Var v : vars) {
    long num = 0;
    while (num == 0) num = static_cast<long>(g() % 19) - 9;
    const long den = static_cast<long>(g() % 7) + 1;
    b[v] = MPoly(exact::make_rational(num, den));
  }
  return b;
}

std::vector<MembershipCheck> k_membership_checks(std::size_t count, std::uint64_t seed) {
  std::vector<MembershipCheck> out(count);
  const DiffOp k = models::k_a2_xy(), printed = models::k_a2_xy_as_printed(), h = models::h_xy();
  util::parallel_for(count, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    auto& m = out[i];
    m.bindings = random_bindings(seed + i, {Var::tau, Var::mu, Var::nu});
    AnsatzSpec spec;
    spec.bindings = m.bindings;
    const auto basis = commutant_solve(h, spec);
    m.nullspace_dim = basis.nullspace_dim;
    m.quotient_dim = basis.quotient_dim;
    m.verified = basis.verified;
    m.member = in_span(basis, k.subst(m.bindings));
    m.printed_member = in_span(basis, printed.subst(m.bindings));
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return out;
}

KmReport find_km(const BigRat& lambda, const BigRat& nu, const BigRat& tau, const BigRat& mu, unsigned max_order,
                 std::optional<unsigned> degree_bound) {
  const auto start = std::chrono::steady_clock::now();
  KmReport r;
  r.bindings = {{Var::lambda, MPoly(lambda)}, {Var::nu, MPoly(nu)}, {Var::tau, MPoly(tau)}, {Var::mu, MPoly(mu)}};
  r.spec.chart = Chart::UV;
  r.spec.max_order = max_order;
  r.spec.max_degree = default_degrees(max_order);
  if (degree_bound) std::fill(r.spec.max_degree.begin(), r.spec.max_degree.end(), *degree_bound);
  r.spec.bindings = r.bindings;
  r.unknowns = unknown_count(r.spec);

  const DiffOp hg = models::h_g2_uv().subst(r.bindings);
  const DiffOp k = models::k_a2_xy().subst(r.bindings);
  const DiffOp ksq = weyl::restrict_to_even(weyl::compose(k, k));
  const DiffOp base = weyl::commutator(hg, ksq);
  RowIndex rows;
  const auto base_entries = entries(base, rows);
  r.uncorrected_residual_terms = base_entries.size();
  if (lambda == 0) {
    r.solvable = base.is_zero();
    if (r.solvable) r.solution = DiffOp(Chart::UV);
    r.verified = r.solvable;
    r.notes.push_back("lambda = 0: the system reduces to [h, k^2] = 0");
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  if (r.unknowns > r.spec.max_unknowns) throw AnsatzTooLarge("find_km: ansatz too large");

  // [h_G2, K] = -[h_G2, k^2] / lambda
  const auto unknowns = enumerate(r.spec);
  SparseSystem sys;
  for (const auto& u : unknowns)
    sys.columns.push_back(entries(weyl::commutator(hg, DiffOp::term(Chart::UV, u.a, u.b, FactoredRatFn(MPoly::monomial(u.mono)))), rows));
  sys.rows = rows.size();
  r.equations = sys.rows;
  std::vector<std::pair<std::size_t, BigRat>> rhs;
  for (const auto& [row, v] : base_entries) rhs.emplace_back(row, BigRat(-v / lambda));

  const auto sol = solve_multimodular(sys, rhs);
  r.rank = sol.rank;
  r.augmented_rank = sol.augmented_rank;
  r.solvable = sol.consistent;
  if (sol.consistent) {
    r.solution = to_operator(unknowns, *sol.particular, Chart::UV);
    r.verified = commutes_on_monomials(hg, ksq + lambda * *r.solution);
    r.notes.push_back("homogeneous freedom: " + std::to_string(sol.nullspace.size()) + " commutant directions");
  } else {
    r.notes.push_back("no solution within the degree bounds; obstruction rank " +
                      std::to_string(r.augmented_rank - r.rank));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace qes::discovery
