#include "qes/discovery/modular.hpp"

#include <stdexcept>

namespace qes::discovery {

std::uint64_t Zp::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1u) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::optional<std::uint64_t> Zp::from_rational(const exact::BigRat& r) const {
  static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");
  const std::uint64_t d = mpz_fdiv_ui(r.get_den_mpz_t(), p_);
  if (d == 0) return std::nullopt;
  const std::uint64_t n = mpz_fdiv_ui(r.get_num_mpz_t(), p_);
  return mul(n, inv(d));
}

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  const Zp f(n);
  // Deterministic for 64-bit inputs.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = f.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = f.mul(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

const std::vector<std::uint64_t>& large_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = (1ull << 62) - 1; out.size() < 64; c -= 2)
      if (is_prime(c)) out.push_back(c);
    return out;
  }();
  return primes;
}

namespace {

// Montgomery arithmetic with R = 2^64; valid for odd p < 2^63.
class Montgomery {
 public:
  __extension__ using u128 = unsigned __int128;

  explicit Montgomery(std::uint64_t p) : p_(p) {
    std::uint64_t inv = p;  // p * p = 1 mod 8 seeds the Newton iteration
    for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
    neg_inv_ = ~inv + 1;
  }
  std::uint64_t to(std::uint64_t a) const { return static_cast<std::uint64_t>((static_cast<u128>(a) << 64) % p_); }
  std::uint64_t from(std::uint64_t a) const { return redc(a); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return redc(static_cast<u128>(a) * b); }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }

 private:
  std::uint64_t redc(u128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inv_;
    const std::uint64_t r = static_cast<std::uint64_t>((t + static_cast<u128>(m) * p_) >> 64);
    return r >= p_ ? r - p_ : r;
  }
  std::uint64_t p_, neg_inv_;
};

}  // namespace

std::vector<std::size_t> rref_mod(std::vector<std::vector<std::uint64_t>>& rows, std::size_t ncols, const Zp& f) {
  const Montgomery mg(f.prime());
  for (auto& row : rows)
    for (std::size_t k = 0; k < ncols; ++k)
      if (row[k]) row[k] = mg.to(row[k]);
  std::vector<std::size_t> pivots, nz;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    auto& prow = rows[r];
    const std::uint64_t inv = mg.to(f.inv(mg.from(prow[c])));
    nz.clear();
    for (std::size_t k = c; k < ncols; ++k)
      if (prow[k]) {
        prow[k] = mg.mul(prow[k], inv);
        nz.push_back(k);
      }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      auto& row = rows[i];
      const std::uint64_t m = row[c];
      for (const std::size_t k : nz) row[k] = mg.sub(row[k], mg.mul(m, prow[k]));
    }
    pivots.push_back(c);
    ++r;
  }
  for (auto& row : rows)
    for (std::size_t k = 0; k < ncols; ++k)
      if (row[k]) row[k] = mg.from(row[k]);
  return pivots;
}

std::optional<exact::BigRat> rational_reconstruct(const exact::BigInt& residue, const exact::BigInt& modulus) {
  exact::BigInt bound;
  mpz_sqrt(bound.get_mpz_t(), exact::BigInt(modulus / 2).get_mpz_t());
  exact::BigInt r0 = modulus, r1 = residue % modulus;
  if (r1 < 0) r1 += modulus;
  exact::BigInt t0 = 0, t1 = 1;
  while (r1 > bound) {
    const exact::BigInt q = r0 / r1;
    exact::BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  exact::BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  exact::BigRat out(r1, t1);
  out.canonicalize();
  return out;
}

}  // namespace qes::discovery
