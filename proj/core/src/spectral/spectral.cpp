#include "qes/spectral/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qes/exact/parse.hpp"

namespace qes::spectral {

using exact::make_rational;
using cld = std::complex<long double>;

namespace {

// Berkowitz recurrence; returns coefficients highest degree first.
template <class T>
std::vector<T> berkowitz(const rep::Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  if (n == 0) return {T(1)};
  std::vector<T> p{T(1), -a(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R C, -R S C, ..., -R S^{r-1} C.
    std::vector<T> t(r + 2, T(0));
    t[0] = T(1);
    t[1] = -a(r, r);
    std::vector<T> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t k = 2; k <= r + 1; ++k) {
      T s(0);
      for (std::size_t i = 0; i < r; ++i) s += a(r, i) * v[i];
      t[k] = -s;
      if (k == r + 1) break;
      std::vector<T> w(r, T(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) w[i] += a(i, j) * v[j];
      v = std::move(w);
    }
    std::vector<T> q(r + 2, T(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) q[i] += t[i - j] * p[j];
    p = std::move(q);
  }
  return p;
}

BigInt isqrt_exact(const BigInt& v, bool& exact) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  exact = r * r == v;
  return r;
}

// sqrt of a non-negative rational, if it is rational.
std::optional<BigRat> rational_sqrt(const BigRat& d) {
  if (d < 0) return std::nullopt;
  bool en = false, ed = false;
  const BigInt n = isqrt_exact(d.get_num(), en), m = isqrt_exact(d.get_den(), ed);
  if (!en || !ed) return std::nullopt;
  BigRat r(n, m);
  r.canonicalize();
  return r;
}

long double abs_bound(const UPoly& p, long double r) {
  long double s = 0, x = 1;
  for (const auto& c : p.coeffs()) {
    s += std::fabs(static_cast<long double>(c.get_d())) * x;
    x *= r;
  }
  return s;
}

cld eval_ld(const std::vector<long double>& c, cld z, cld* deriv = nullptr) {
  cld v = 0, d = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    d = d * z + v;
    v = v * z + c[k];
  }
  if (deriv) *deriv = d;
  return v;
}

double relative_residual(const UPoly& p, std::complex<double> z) {
  std::vector<long double> c;
  for (const auto& x : p.coeffs()) c.push_back(static_cast<long double>(x.get_d()));
  const long double den = abs_bound(p, std::abs(cld(z)));
  return den == 0 ? 0.0 : static_cast<double>(std::abs(eval_ld(c, cld(z))) / den);
}

// Aberth-Ehrlich iteration on a squarefree monic polynomial of degree >= 1.
std::vector<std::complex<double>> aberth(const UPoly& g) {
  const int m = g.degree();
  std::vector<long double> c;
  for (const auto& x : g.coeffs()) c.push_back(static_cast<long double>(x.get_d()));
  long double radius = 0;
  for (int k = 0; k < m; ++k) radius = std::max(radius, std::fabs(c[static_cast<std::size_t>(k)]));
  radius += 1;
  std::vector<cld> z(static_cast<std::size_t>(m));
  const long double pi = std::acos(-1.0L);
  for (int k = 0; k < m; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, 2 * pi * k / m + 0.4L);
  constexpr int kMaxIter = 2000;
  bool converged = false;
  for (int it = 0; it < kMaxIter && !converged; ++it) {
    converged = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      cld d;
      const cld v = eval_ld(c, z[k], &d);
      if (v == cld(0)) continue;
      const cld w = v / d;
      cld s = 0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) s += cld(1) / (z[k] - z[j]);
      const cld step = w / (cld(1) - w * s);
      z[k] -= step;
      if (std::abs(step) > 1e-17L * (1 + std::abs(z[k]))) converged = false;
    }
  }
  for (auto& zk : z)
    for (int i = 0; i < 3; ++i) {
      cld d;
      const cld v = eval_ld(c, zk, &d);
      if (d == cld(0) || v == cld(0)) break;
      zk -= v / d;
    }
  std::vector<std::complex<double>> out;
  for (const auto& zk : z) out.emplace_back(static_cast<double>(zk.real()), static_cast<double>(zk.imag()));
  for (const auto& zk : out)
    if (relative_residual(g, zk) > 1e-12)
      throw RootFailure("root iteration did not converge for " + g.to_string());
  return out;
}

// Positive divisors of |v| when it is small enough to enumerate.
std::vector<BigInt> small_divisors(const BigInt& v) {
  std::vector<BigInt> out;
  BigInt a = abs(v);
  if (a == 0 || a > 1000000) return {BigInt(1)};
  const long n = a.get_si();
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out.emplace_back(d);
  return out;
}

// Leading coefficient of the primitive integer multiple of g.
BigInt integer_leading(const UPoly& g) {
  BigInt l = 1;
  for (const auto& c : g.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  BigInt cont = 0;
  for (const auto& c : g.coeffs()) {
    const BigInt v = c.get_num() * (l / c.get_den());
    mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), v.get_mpz_t());
  }
  const BigRat lead = g.leading() * BigRat(l) / BigRat(cont);
  return lead.get_num();
}

BigRat round_to(double x, const BigInt& q) {
  BigRat r(BigInt(static_cast<long>(std::llround(x * q.get_d()))), q);
  r.canonicalize();
  return r;
}

void add_quadratic_roots(const BigRat& s, const BigRat& p, std::vector<Root>& out) {
  // E^2 - s E + p
  const BigRat a = s / 2;
  BigRat d = a * a - p;
  d.canonicalize();
  if (auto r = rational_sqrt(d)) {
    for (int sg : {-1, 1}) {
      BigRat v = a + sg * *r;
      v.canonicalize();
      out.push_back({{v.get_d(), 0.0}, 1, ExactRoot{v, 0, 1}, 0});
    }
    return;
  }
  const double ad = a.get_d(), dd = d.get_d();
  for (int sg : {-1, 1}) {
    std::complex<double> z = dd >= 0 ? std::complex<double>(ad + sg * std::sqrt(dd), 0)
                                     : std::complex<double>(ad, sg * std::sqrt(-dd));
    out.push_back({z, 1, ExactRoot{a, d, sg}, 0});
  }
}

// Roots of a monic squarefree factor, with exact identification.
std::vector<Root> solve_squarefree(UPoly g) {
  std::vector<Root> out;
  if (g.degree() == 1) {
    const BigRat r = -g.coeff(0);
    out.push_back({{r.get_d(), 0.0}, 1, ExactRoot{r, 0, 1}, 0});
    return out;
  }
  if (g.degree() == 2) {
    add_quadratic_roots(-g.coeff(1), g.coeff(0), out);
    return out;
  }
  auto z = aberth(g);
  const auto divs = small_divisors(integer_leading(g));
  // Rational roots.
  for (std::size_t k = 0; k < z.size() && g.degree() > 2;) {
    bool hit = false;
    if (std::abs(z[k].imag()) < 1e-6 * (1 + std::abs(z[k])))
      for (const auto& q : divs) {
        const BigRat r = round_to(z[k].real(), q);
        if (g.eval(r) == 0) {
          g = divmod(g, UPoly::linear(r)).first;
          out.push_back({{r.get_d(), 0.0}, 1, ExactRoot{r, 0, 1}, 0});
          z.erase(z.begin() + static_cast<std::ptrdiff_t>(k));
          hit = true;
          break;
        }
      }
    if (!hit) ++k;
  }
  // Rational quadratic factors.
  for (std::size_t i = 0; i < z.size() && g.degree() > 2; ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const auto s = z[i] + z[j], p = z[i] * z[j];
      if (std::abs(s.imag()) > 1e-6 * (1 + std::abs(s)) || std::abs(p.imag()) > 1e-6 * (1 + std::abs(p))) continue;
      bool hit = false;
      for (const auto& q : divs) {
        const BigRat sr = round_to(s.real(), q), pr = round_to(p.real(), q);
        const UPoly quad({pr, BigRat(-sr), BigRat(1)});
        auto [quot, rem] = divmod(g, quad);
        if (!rem.is_zero()) continue;
        g = quot;
        add_quadratic_roots(sr, pr, out);
        z.erase(z.begin() + static_cast<std::ptrdiff_t>(j));
        z.erase(z.begin() + static_cast<std::ptrdiff_t>(i));
        hit = true;
        break;
      }
      if (hit) {
        i = static_cast<std::size_t>(-1);
        break;
      }
    }
  if (g.degree() <= 2) {
    auto rest = solve_squarefree(g);
    out.insert(out.end(), rest.begin(), rest.end());
  } else {
    for (auto zk : z) {
      if (std::abs(zk.imag()) < 1e-14 * (1 + std::abs(zk))) zk.imag(0);
      out.push_back({zk, 1, std::nullopt, 0});
    }
  }
  return out;
}

std::string sqrt_string(const BigRat& d) {
  // sqrt(n/m) = sqrt(n m)/m; pull square factors out of n m.
  BigInt t = abs(d.get_num()) * d.get_den();
  BigInt outside = 1;
  for (unsigned long p = 2; p < 10000 && BigInt(p) * BigInt(p) <= t; ++p) {
    const BigInt pp = BigInt(p) * BigInt(p);
    while (t % pp == 0) {
      t /= pp;
      outside *= p;
    }
  }
  BigRat c(outside, d.get_den());
  c.canonicalize();
  std::string s = t == 1 ? "" : "sqrt(" + t.get_str() + ")";
  if (d < 0) s += s.empty() ? "i" : "*i";
  return c == 1 ? s : exact::to_string(c) + "*" + s;
}

}  // namespace

UPoly CharPoly::specialize(const Bindings& bindings) const {
  std::vector<BigRat> c;
  for (const auto& p : coeffs) {
    const MPoly s = p.subst(bindings);
    if (!s.is_constant()) throw std::domain_error("unbound parameter in characteristic polynomial: " + s.to_string());
    c.push_back(s.constant_term());
  }
  return UPoly(std::move(c));
}

std::string CharPoly::to_string() const {
  std::string s;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string c = coeffs[k].to_string();
    if (k == 0) {
      s += c;
      continue;
    }
    if (c != "1") s += (coeffs[k].size() > 1 ? "(" + c + ")" : c) + "*";
    s += k == 1 ? "E" : "E^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

CharPoly operator*(const CharPoly& a, const CharPoly& b) {
  CharPoly r;
  if (a.coeffs.empty() || b.coeffs.empty()) return r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, MPoly());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return r;
}

CharPoly char_poly_from_strings(const std::vector<std::string>& coeffs) {
  CharPoly p;
  for (const auto& s : coeffs) p.coeffs.push_back(exact::parse_poly(s));
  p.coeffs.emplace_back(1);
  return p;
}

CharPoly char_poly(const PolyMatrix& m) {
  auto p = berkowitz(m);
  std::reverse(p.begin(), p.end());
  return CharPoly{std::move(p)};
}

UPoly char_poly(const RatMatrix& m) {
  auto p = berkowitz(m);
  std::reverse(p.begin(), p.end());
  return UPoly(std::move(p));
}

unsigned factor_multiplicity(const CharPoly& p, const CharPoly& factor) {
  if (factor.coeffs.empty() || !(factor.coeffs.back() == MPoly(1)))
    throw std::invalid_argument("factor must be monic in E");
  if (factor.degree() == 0) throw std::invalid_argument("factor must have positive degree");
  unsigned k = 0;
  std::vector<MPoly> r = p.coeffs;
  while (r.size() > factor.degree()) {
    // Division by a monic polynomial stays in Q[params].
    const std::size_t df = factor.degree();
    std::vector<MPoly> q(r.size() - df);
    for (std::size_t i = q.size(); i-- > 0;) {
      q[i] = r[i + df];
      if (q[i].is_zero()) continue;
      for (std::size_t j = 0; j <= df; ++j) r[i + j] -= q[i] * factor.coeffs[j];
    }
    for (std::size_t i = 0; i < df; ++i)
      if (!r[i].is_zero()) return k;
    ++k;
    r = std::move(q);
  }
  return k;
}

std::string ExactRoot::to_string() const {
  if (rational()) return exact::to_string(a);
  const std::string root = sqrt_string(d);
  if (a == 0) return (sign < 0 ? "-" : "") + root;
  return exact::to_string(a) + (sign < 0 ? " - " : " + ") + root;
}

std::vector<Root> numeric_roots(const UPoly& p) {
  if (p.degree() < 1) return {};
  std::vector<Root> out;
  for (const auto& [g, mult] : squarefree_decomposition(p))
    for (auto r : solve_squarefree(g)) {
      r.multiplicity = mult;
      r.residual = relative_residual(g, r.value);
      out.push_back(std::move(r));
    }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

std::vector<Root> numeric_roots(const CharPoly& p, const Bindings& bindings) {
  return numeric_roots(p.specialize(bindings));
}

std::vector<Eigenpair> eigenpairs(const RatMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Eigenpair> out;
  Eigen::MatrixXcd md(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) md(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  for (const auto& root : numeric_roots(char_poly(m))) {
    Eigenpair ep{root, {}, {}, 0};
    if (root.exact && root.exact->rational()) {
      RatMatrix shifted = m;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= root.exact->a;
      ep.exact_vectors = rep::kernel(shifted);
    } else {
      Eigen::MatrixXcd a = md;
      a.diagonal().array() -= root.value;
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      const double tol = 1e-9 * std::max(1.0, sv(0));
      Eigen::Index count = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) <= tol) ++count;
      count = std::max<Eigen::Index>(count, 1);
      const Eigen::MatrixXcd& v = svd.matrixV();
      for (Eigen::Index c = v.cols() - count; c < v.cols(); ++c) {
        std::vector<std::complex<double>> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = v(static_cast<Eigen::Index>(i), c);
        ep.numeric_vectors.push_back(std::move(w));
      }
    }
    // Residual of every basis vector.
    auto check = [&](const Eigen::VectorXcd& w) {
      const double nw = w.norm();
      if (nw == 0) return;
      ep.residual = std::max(ep.residual, (md * w - root.value * w).norm() / nw);
    };
    for (const auto& w : ep.exact_vectors) {
      Eigen::VectorXcd x(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) = w[i].get_d();
      check(x);
    }
    for (const auto& w : ep.numeric_vectors) check(Eigen::Map<const Eigen::VectorXcd>(w.data(), static_cast<Eigen::Index>(n)));
    out.push_back(std::move(ep));
  }
  return out;
}

std::string EigenfunctionDescriptor::to_string() const {
  std::string s;
  if (polynomial) {
    s = "(" + polynomial->to_string() + ")";
  } else {
    s = "(";
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (i) s += " + ";
      char buf[96];
      std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)*", coefficients[i].real(), coefficients[i].imag());
      s += buf + basis_labels[i];
    }
    s += ")";
  }
  for (const auto& f : factors) {
    if (f.exponent.is_zero()) continue;
    s += "*" + f.base + "^(" + f.exponent.to_string() + ")";
  }
  return s;
}

EigenfunctionDescriptor assemble_eigenfunction(const Eigenpair& pair, std::size_t vector_index, ModelKind model,
                                               unsigned n, const MPoly& lambda) {
  EigenfunctionDescriptor d;
  d.model = model;
  d.n = n;
  const rep::MonomialBasis basis = model == ModelKind::A2 ? rep::MonomialBasis::P(n) : rep::MonomialBasis::Q(n);
  d.basis_labels = basis.labels();
  if (vector_index < pair.exact_vectors.size()) {
    const auto& v = pair.exact_vectors[vector_index];
    if (v.size() != basis.size()) throw std::invalid_argument("eigenvector does not match the basis");
    MPoly p;
    for (std::size_t i = 0; i < v.size(); ++i) p += MPoly::monomial(basis[i], v[i]);
    d.polynomial = std::move(p);
  } else if (vector_index < pair.numeric_vectors.size()) {
    d.coefficients = pair.numeric_vectors[vector_index];
    if (d.coefficients.size() != basis.size()) throw std::invalid_argument("eigenvector does not match the basis");
  } else {
    throw std::out_of_range("eigenvector index out of range");
  }
  const long ln = static_cast<long>(n);
  switch (model) {
    case ModelKind::A2:
      d.factors.push_back({"D", MPoly(make_rational(-ln, 6))});
      d.kappa = rep::kappa(n);
      break;
    case ModelKind::G2: {
      const MPoly nu = MPoly(make_rational(-ln, 3));
      d.factors.push_back({"v", lambda * make_rational(3, 2)});
      d.factors.push_back({"Dt", (nu - lambda) * make_rational(1, 2)});
      break;
    }
    case ModelKind::A2_lambda_third:
      d.factors.push_back({"v", MPoly(make_rational(1, 2))});
      d.factors.push_back({"Dt", MPoly(make_rational(-(ln + 1), 6))});
      d.kappa = make_rational((ln + 1) * (ln + 4), 9);
      break;
  }
  return d;
}

}  // namespace qes::spectral
