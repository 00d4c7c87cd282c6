#include "qes/spectral/upoly.hpp"

#include <stdexcept>

namespace qes::spectral {

UPoly::UPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  UPoly r = *this;
  const BigRat lc = leading();
  for (auto& c : r.c_) c /= lc;
  return r;
}

UPoly UPoly::derivative() const {
  std::vector<BigRat> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(d));
}

BigRat UPoly::eval(const BigRat& x) const {
  BigRat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

std::complex<double> UPoly::eval(std::complex<double> z) const {
  std::complex<double> r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + it->get_d();
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<BigRat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<BigRat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<BigRat> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const BigRat& c = c_[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    const BigRat mag = neg ? BigRat(-c) : c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    const bool unit = mag == 1;
    if (!unit || k == 0) s += exact::to_string(mag);
    if (k > 0) {
      if (!unit) s += "*";
      s += var;
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<BigRat> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<BigRat> q(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree() - db; k >= 0; --k) {
    const BigRat f = r[static_cast<std::size_t>(k + db)] / b.leading();
    q[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<UPoly, unsigned>> out;
  if (f.degree() < 1) return out;
  const UPoly fm = f.monic();
  const UPoly d = fm.derivative();
  const UPoly a0 = gcd(fm, d);
  UPoly b = divmod(fm, a0).first;
  UPoly c = divmod(d, a0).first;
  UPoly dd = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    const UPoly a = gcd(b, dd);
    if (a.degree() > 0) out.emplace_back(a, i);
    b = divmod(b, a).first;
    c = divmod(dd, a).first;
    dd = c - b.derivative();
  }
  return out;
}

}  // namespace qes::spectral
