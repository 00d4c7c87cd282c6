#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qes/exact/rational.hpp"

namespace qes::discovery {

// Arithmetic modulo a prime below 2^63.
class Zp {
 public:
  explicit Zp(std::uint64_t p) : p_(p) {}
  std::uint64_t prime() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p_);
  }
  std::uint64_t neg(std::uint64_t a) const { return a ? p_ - a : 0; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

  // nullopt when the denominator vanishes modulo p.
  std::optional<std::uint64_t> from_rational(const exact::BigRat& r) const;

 private:
  std::uint64_t p_;
};

// Primes just below 2^62, in decreasing order.
const std::vector<std::uint64_t>& large_primes();

// Dense row-major matrix over Z_p reduced in place to reduced row echelon
// form; returns the pivot columns.
std::vector<std::size_t> rref_mod(std::vector<std::vector<std::uint64_t>>& rows, std::size_t ncols, const Zp& f);

// Rational reconstruction of a residue modulo m (Wang); nullopt when no
// fraction with |num|, den <= sqrt(m/2) exists.
std::optional<exact::BigRat> rational_reconstruct(const exact::BigInt& residue, const exact::BigInt& modulus);

}  // namespace qes::discovery
