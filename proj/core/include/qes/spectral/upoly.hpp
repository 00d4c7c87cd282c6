#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "qes/exact/rational.hpp"

namespace qes::spectral {

using exact::BigInt;
using exact::BigRat;

// Dense univariate polynomial over Q; coefficient i multiplies E^i. The
// coefficient vector never has a trailing zero.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<BigRat> coeffs);
  static UPoly constant(const BigRat& c) { return UPoly({c}); }
  // E - r
  static UPoly linear(const BigRat& r) { return UPoly({BigRat(-r), BigRat(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigRat>& coeffs() const { return c_; }
  BigRat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigRat(0); }
  const BigRat& leading() const { return c_.back(); }

  UPoly monic() const;
  UPoly derivative() const;
  BigRat eval(const BigRat& x) const;
  std::complex<double> eval(std::complex<double> z) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "E") const;

 private:
  void trim();
  std::vector<BigRat> c_;
};

// Quotient and remainder; b must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);

// Yun: f = lc * prod_i g_i^i with every g_i monic, squarefree and pairwise
// coprime; factors of degree 0 are omitted.
std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& f);

}  // namespace qes::spectral
