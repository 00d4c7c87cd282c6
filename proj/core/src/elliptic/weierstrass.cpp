#include "qes/elliptic/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qes::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

// Real coordinates (a, b) with z = a * p + b * r.
std::pair<double, double> coords(cplx z, cplx p, cplx r) {
  const double det = p.real() * r.imag() - p.imag() * r.real();
  const double a = (z.real() * r.imag() - z.imag() * r.real()) / det;
  const double b = (p.real() * z.imag() - p.imag() * z.real()) / det;
  return {a, b};
}

}  // namespace

Lattice::Lattice(cplx omega1, cplx omega2) : w1_(omega1), w2_(omega2) {
  if (std::abs(w1_) == 0 || std::abs(w2_) == 0 || std::abs((w2_ / w1_).imag()) < 1e-14)
    throw std::invalid_argument("half-periods must be linearly independent over R");
  cplx a = w1_, b = w2_;
  if ((b / a).imag() < 0) b = -b;
  for (int it = 0; it < 200; ++it) {
    b -= std::round((b / a).real()) * a;
    if (std::abs(b) < std::abs(a) * (1 - 1e-15)) {
      const cplx t = a;
      a = b;
      b = -t;
    } else {
      break;
    }
  }
  r1_ = a;
  r3_ = b;
  q_ = std::exp(kI * kPi * (r3_ / r1_));
  const auto s0 = theta1_scaled(0);
  theta1p0_ = s0[1];
  eta_r1_ = -(kPi * kPi / (12.0 * r1_)) * s0[3] / s0[1];
  eta_r3_ = (eta_r1_ * r3_ - kI * kPi / 2.0) / r1_;
  for (int i = 0; i < 2; ++i) {
    const cplx w = i == 0 ? w1_ : w2_;
    const auto [x, y] = coords(w, r1_, r3_);
    eta_user_[static_cast<std::size_t>(i)] = std::round(x) * eta_r1_ + std::round(y) * eta_r3_;
  }
  for (int i = 0; i < 3; ++i) e_[static_cast<std::size_t>(i)] = wp(half_period(i));
  g2_ = -4.0 * (e_[0] * e_[1] + e_[1] * e_[2] + e_[0] * e_[2]);
  g3_ = 4.0 * e_[0] * e_[1] * e_[2];
}

cplx Lattice::half_period(int index) const {
  switch (index) {
    case 0: return w1_;
    case 1: return w2_;
    case 2: return w1_ + w2_;
    default: throw std::out_of_range("half-period index must be 0, 1 or 2");
  }
}

double Lattice::min_period() const { return 2 * std::min(std::abs(r1_), std::abs(r3_)); }

std::array<cplx, 4> Lattice::theta1_scaled(cplx v) const {
  // theta_1(v) = 2 q^{1/4} sum (-1)^n q^{n(n+1)} sin((2n+1) v). The prefactor
  // and exp(|Im v|) are divided out so that neither overflows; every ratio
  // used below is invariant under this scaling.
  std::array<cplx, 4> s{};
  const cplx lq = kI * kPi * (r3_ / r1_);
  const double shift = std::abs(v.imag());
  for (int n = 0; n < 200; ++n) {
    const double m = 2.0 * n + 1;
    const cplx base = lq * static_cast<double>(n * (n + 1)) - shift;
    const cplx ea = std::exp(base + kI * m * v), eb = std::exp(base - kI * m * v);
    const cplx sn = (ea - eb) / (2.0 * kI), cs = (ea + eb) / 2.0;
    const double sg = (n % 2) ? -1.0 : 1.0;
    s[0] += sg * sn;
    s[1] += sg * m * cs;
    s[2] -= sg * m * m * sn;
    s[3] -= sg * m * m * m * cs;
    const double bound = (std::abs(ea) + std::abs(eb)) * m * m * m;
    if (n >= 1 && bound <= 1e-18 * std::max(std::abs(s[0]), 1e-300)) break;
  }
  return s;
}

Lattice::Reduced Lattice::reduce_full(cplx z) const {
  const auto [a, b] = coords(z, 2.0 * r1_, 2.0 * r3_);
  Reduced best{z - std::round(a) * 2.0 * r1_ - std::round(b) * 2.0 * r3_, std::llround(a), std::llround(b)};
  const Reduced base = best;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      const cplx c = base.z - static_cast<double>(i) * 2.0 * r1_ - static_cast<double>(j) * 2.0 * r3_;
      if (std::abs(c) < std::abs(best.z)) best = {c, base.m + i, base.n + j};
    }
  return best;
}

cplx Lattice::reduce(cplx z) const { return reduce_full(z).z; }

double Lattice::distance_to_lattice(cplx z) const { return std::abs(reduce(z)); }

cplx Lattice::wp(cplx z) const {
  const cplx zr = reduce(z);
  if (std::abs(zr) < 1e-12 * min_period()) throw PoleProximity("wp evaluated at a lattice point");
  const cplx c = kPi / (2.0 * r1_);
  const auto s = theta1_scaled(c * zr);
  const cplx l1 = s[1] / s[0];
  return -eta_r1_ / r1_ - c * c * (s[2] / s[0] - l1 * l1);
}

cplx Lattice::wp_prime(cplx z) const {
  const cplx zr = reduce(z);
  if (std::abs(zr) < 1e-12 * min_period()) throw PoleProximity("wp' evaluated at a lattice point");
  const cplx c = kPi / (2.0 * r1_);
  const auto s = theta1_scaled(c * zr);
  const cplx l1 = s[1] / s[0];
  return -c * c * c * (s[3] / s[0] - 3.0 * s[2] * s[1] / (s[0] * s[0]) + 2.0 * l1 * l1 * l1);
}

cplx Lattice::zeta(cplx z) const {
  const Reduced r = reduce_full(z);
  if (std::abs(r.z) < 1e-12 * min_period()) throw PoleProximity("zeta evaluated at a lattice point");
  const cplx c = kPi / (2.0 * r1_);
  const auto s = theta1_scaled(c * r.z);
  const cplx shift = 2.0 * (static_cast<double>(r.m) * eta_r1_ + static_cast<double>(r.n) * eta_r3_);
  return eta_r1_ * r.z / r1_ + c * s[1] / s[0] + shift;
}

cplx Lattice::log_sigma(cplx z) const {
  // sigma(z + 2P) = -sigma(z) exp(2 zeta(P)(z + P)) for each primitive half-period P.
  const Reduced r = reduce_full(z);
  const cplx c = kPi / (2.0 * r1_);
  const cplx v = c * r.z;
  const auto s = theta1_scaled(v);
  if (s[0] == cplx(0)) throw PoleProximity("sigma vanishes");
  const double m = static_cast<double>(r.m), n = static_cast<double>(r.n);
  const cplx eta = m * eta_r1_ + n * eta_r3_;
  const cplx quasi = 2.0 * eta * (r.z + m * r1_ + n * r3_) +
                     kI * kPi * static_cast<double>((r.m + r.n + r.m * r.n) & 1);
  return -std::log(c) + eta_r1_ * r.z * r.z / (2.0 * r1_) + std::abs(v.imag()) + std::log(s[0] / theta1p0_) + quasi;
}

cplx Lattice::sigma(cplx z) const {
  if (z == cplx(0)) return 0;
  const cplx r = std::exp(log_sigma(z));
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) throw std::overflow_error("sigma overflow");
  return r;
}

EllipticContext::EllipticContext(cplx omega1, cplx omega2, int half_period_index)
    : lat_(omega1, omega2), index_(half_period_index) {
  if (index_ < 0) {
    const auto& e = lat_.roots();
    auto is_real = [&](int i) { return std::abs(e[i].imag()) < 1e-10 * (1 + std::abs(e[i])); };
    bool any_real = false;
    for (int i = 0; i < 3; ++i) any_real = any_real || is_real(i);
    for (int i = 0; i < 3; ++i) {
      if (any_real && !is_real(i)) continue;
      if (index_ < 0 || std::abs(e[i]) < std::abs(e[index_])) index_ = i;
    }
  }
  if (index_ > 2) throw std::out_of_range("half-period index must be 0, 1 or 2");
  tau_ = -lat_.roots()[static_cast<std::size_t>(index_)];
  mu_ = tau_ * tau_ - lat_.g2() / 12.0;
  log_sigma_w_ = lat_.log_sigma(omega());
  zeta_w_ = lat_.zeta(omega());
}

cplx EllipticContext::sigma1(cplx z) const {
  const cplx zw = z + omega();
  if (zw == cplx(0)) return 0;
  return std::exp(lat_.log_sigma(zw) - log_sigma_w_ - zeta_w_ * z);
}

double EllipticContext::invariant_residual() const {
  const cplx g2 = lat_.g2(), g3 = lat_.g3();
  double r = 0;
  for (const cplx& e : lat_.roots())
    r = std::max(r, std::abs(4.0 * e * e * e - g2 * e - g3) / (1 + std::pow(std::abs(e), 3)));
  const double scale2 = 1 + std::abs(g2), scale3 = 1 + std::abs(g3);
  r = std::max(r, std::abs(g2 - 12.0 * (tau_ * tau_ - mu_)) / scale2);
  r = std::max(r, std::abs(g3 - 4.0 * tau_ * (2.0 * tau_ * tau_ - 3.0 * mu_)) / scale3);
  return r;
}

}  // namespace qes::elliptic
