#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "qes/exact/variables.hpp"

namespace qes::exact {

// Power product over the fixed universe. Exponents are packed one byte per
// variable with x in the most significant byte, so comparing the packed word
// is exactly lexicographic order. Exponents are limited to 127.
class Monomial {
 public:
  static constexpr unsigned kMaxExponent = 127;

  constexpr Monomial() = default;

  static Monomial of(Var v, unsigned e = 1) {
    if (e > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
    return Monomial(static_cast<std::uint64_t>(e) << shift(v));
  }

  static constexpr Monomial from_packed(std::uint64_t bits) { return Monomial(bits); }

  constexpr std::uint64_t packed() const { return bits_; }

  constexpr unsigned exponent(Var v) const {
    return static_cast<unsigned>((bits_ >> shift(v)) & 0xffu);
  }

  constexpr unsigned degree() const {
    std::uint64_t b = bits_;
    unsigned d = 0;
    while (b) {
      d += static_cast<unsigned>(b & 0xffu);
      b >>= 8;
    }
    return d;
  }

  // Degree restricted to the variables in `m`.
  unsigned degree(VarMask m) const;

  constexpr bool is_one() const { return bits_ == 0; }

  Monomial operator*(Monomial o) const {
    const std::uint64_t s = bits_ + o.bits_;
    if (s & kHighBits) throw std::overflow_error("monomial exponent overflow");
    return Monomial(s);
  }

  constexpr bool divides(Monomial o) const {
    return (((o.bits_ | kHighBits) - bits_) & kHighBits) == kHighBits;
  }

  // Requires divisor.divides(*this).
  constexpr Monomial operator/(Monomial divisor) const { return Monomial(bits_ - divisor.bits_); }

  Monomial with_exponent(Var v, unsigned e) const {
    if (e > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
    const std::uint64_t cleared = bits_ & ~(std::uint64_t{0xff} << shift(v));
    return Monomial(cleared | (static_cast<std::uint64_t>(e) << shift(v)));
  }

  // Keeps only the exponents of variables in `m`.
  Monomial restrict(VarMask m) const;

  constexpr bool operator==(const Monomial&) const = default;

  // Graded lexicographic order.
  std::strong_ordering operator<=>(const Monomial& o) const {
    const unsigned da = degree(), db = o.degree();
    if (da != db) return da <=> db;
    return bits_ <=> o.bits_;
  }

 private:
  static constexpr std::uint64_t kHighBits = 0x8080808080808080ull;
  static constexpr unsigned shift(Var v) { return 8u * (7u - static_cast<unsigned>(v)); }
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}

  std::uint64_t bits_ = 0;
};

}  // namespace qes::exact

template <>
struct std::hash<qes::exact::Monomial> {
  std::size_t operator()(const qes::exact::Monomial& m) const noexcept {
    std::uint64_t z = m.packed() + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};
