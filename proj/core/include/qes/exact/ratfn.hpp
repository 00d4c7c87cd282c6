#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "qes/exact/mpoly.hpp"

namespace qes::exact {

// The only polynomials allowed in a denominator.
enum class Base : std::uint8_t {
  Dxy = 0,  // D(x, y), the determinant of the contravariant metric
  Duv,      // D(u, v), the same polynomial after x -> u, y^2 -> v
  V,        // v
  Y,        // y
};

inline constexpr std::size_t kBaseCount = 4;

const MPoly& base_polynomial(Base b);
std::string_view base_name(Base b);

using DenExponents = std::array<unsigned, kBaseCount>;

// numerator / prod_b base(b)^den[b].
//
// Every arithmetic result is normalized: a base power is lowered while the
// numerator stays divisible by that base. Equality is cross-multiplication,
// so it holds regardless of how far normalization got.
class FactoredRatFn {
 public:
  FactoredRatFn() = default;
  FactoredRatFn(MPoly num);  // NOLINT(google-explicit-constructor)
  FactoredRatFn(MPoly num, DenExponents den);
  FactoredRatFn(long c) : FactoredRatFn(MPoly(c)) {}  // NOLINT(google-explicit-constructor)

  static FactoredRatFn over(MPoly num, Base b, unsigned power = 1);

  const MPoly& numerator() const { return num_; }
  const DenExponents& den() const { return den_; }
  unsigned power(Base b) const { return den_[static_cast<std::size_t>(b)]; }
  MPoly denominator() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const;
  std::optional<MPoly> as_polynomial() const;

  FactoredRatFn operator-() const;
  FactoredRatFn& operator+=(const FactoredRatFn& o);
  FactoredRatFn& operator-=(const FactoredRatFn& o);
  FactoredRatFn& operator*=(const FactoredRatFn& o);
  FactoredRatFn& operator*=(const BigRat& c);

  friend FactoredRatFn operator+(FactoredRatFn a, const FactoredRatFn& b) { return a += b; }
  friend FactoredRatFn operator-(FactoredRatFn a, const FactoredRatFn& b) { return a -= b; }
  friend FactoredRatFn operator*(FactoredRatFn a, const FactoredRatFn& b) { return a *= b; }
  friend FactoredRatFn operator*(FactoredRatFn a, const BigRat& c) { return a *= c; }
  friend FactoredRatFn operator*(const BigRat& c, FactoredRatFn a) { return a *= c; }

  friend bool operator==(const FactoredRatFn& a, const FactoredRatFn& b);

  FactoredRatFn diff(Var v, unsigned order = 1) const;

  // Throws std::domain_error when a bound variable occurs in a denominator
  // base that is still present after normalization.
  FactoredRatFn subst(const std::map<Var, MPoly>& bindings) const;

  // y -> -y (or any reflection of a variable that no base is odd in).
  FactoredRatFn reflect(Var v) const;

  // "num" or "(num)/(D^2*v)".
  std::string to_string() const;

  // Lowers denominator powers where the numerator is divisible.
  void normalize();

 private:
  MPoly num_;
  DenExponents den_{};
};

}  // namespace qes::exact
