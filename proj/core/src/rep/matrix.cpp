#include "qes/rep/matrix.hpp"

namespace qes::rep {

namespace {

BigInt exact_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

MPoly exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_constant()) return a * BigRat(1 / b.constant_term());
  auto q = a.divide_exact(b);
  if (!q) throw std::logic_error("fraction-free elimination: inexact division");
  return std::move(*q);
}

bool is_zero(const BigInt& a) { return a == 0; }
bool is_zero(const MPoly& a) { return a.is_zero(); }

template <class T>
FFReduction<T> ff_reduce(Matrix<T> m) {
  FFReduction<T> out{std::move(m), {}, T(1)};
  Matrix<T>& a = out.reduced;
  T prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(p, k), a(r, k));
    const T piv = a(r, c);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      const T f = a(i, c);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (k == c) continue;
        T v = piv * a(i, k);
        if (!is_zero(f) && !is_zero(a(r, k))) v -= f * a(r, k);
        a(i, k) = is_zero(v) ? T(0) : exact_div(v, prev);
      }
      a(i, c) = T(0);
    }
    prev = piv;
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.pivot = prev;
  return out;
}

template <class T>
std::vector<std::vector<T>> ff_kernel(const FFReduction<T>& red) {
  const auto& a = red.reduced;
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : red.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(a.cols(), T(0));
    v[f] = red.pivot;
    for (std::size_t i = 0; i < red.pivot_cols.size(); ++i) v[red.pivot_cols[i]] = -a(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix<BigInt> integer_rows(const RatMatrix& m) {
  Matrix<BigInt> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_num() * exact_div(l, m(i, j).get_den());
  }
  return out;
}

}  // namespace

FFReduction<BigInt> fraction_free_reduce(Matrix<BigInt> m) { return ff_reduce(std::move(m)); }
FFReduction<MPoly> fraction_free_reduce(Matrix<MPoly> m) { return ff_reduce(std::move(m)); }

std::vector<std::vector<BigRat>> kernel(const RatMatrix& m) {
  const auto red = ff_reduce(integer_rows(m));
  std::vector<std::vector<BigRat>> out;
  for (auto& v : ff_kernel(red)) {
    BigInt g = 0;
    for (const auto& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    // Sign convention: last nonzero entry (the free coordinate) positive.
    BigInt sign = 1;
    for (auto it = v.rbegin(); it != v.rend(); ++it)
      if (*it != 0) {
        sign = *it < 0 ? -1 : 1;
        break;
      }
    std::vector<BigRat> row;
    row.reserve(v.size());
    for (const auto& e : v) row.emplace_back(exact_div(e, g) * sign);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<MPoly>> kernel(const PolyMatrix& m) { return ff_kernel(ff_reduce(m)); }

BigRat determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  BigRat scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    scale /= BigRat(l);
  }
  // Bareiss with row swaps; integer_rows scaled row i by the lcm above.
  Matrix<BigInt> b = integer_rows(m);
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && b(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(b(p, j), b(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) b(i, j) = exact_div(b(k, k) * b(i, j) - b(i, k) * b(k, j), prev);
      b(i, k) = 0;
    }
    prev = b(k, k);
  }
  BigRat out = BigRat(prev * sign) * scale;
  out.canonicalize();
  return out;
}

MPoly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return MPoly(1);
  PolyMatrix b = m;
  long sign = 1;
  MPoly prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && b(p, k).is_zero()) ++p;
    if (p == n) return MPoly();
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(b(p, j), b(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) b(i, j) = exact_div(b(k, k) * b(i, j) - b(i, k) * b(k, j), prev);
      b(i, k) = MPoly();
    }
    prev = b(k, k);
  }
  return prev * BigRat(sign);
}

std::size_t rank(const RatMatrix& m) { return ff_reduce(integer_rows(m)).pivot_cols.size(); }
std::size_t rank(const PolyMatrix& m) { return ff_reduce(m).pivot_cols.size(); }

}  // namespace qes::rep
