#pragma once

#include <array>
#include <complex>
#include <stdexcept>

namespace qes::elliptic {

using cplx = std::complex<double>;

struct PoleProximity : std::domain_error {
  using std::domain_error::domain_error;
};

// Weierstrass functions of the lattice 2 w1 Z + 2 w2 Z. Internally the basis
// is Gauss-reduced and the functions are evaluated through Jacobi theta
// series, which converge geometrically with nome |q| <= exp(-pi sqrt(3)/2).
class Lattice {
 public:
  Lattice(cplx omega1, cplx omega2);

  cplx omega1() const { return w1_; }
  cplx omega2() const { return w2_; }
  // Half-periods w1, w2, w1 + w2.
  cplx half_period(int index) const;
  // Shortest nonzero period.
  double min_period() const;
  // e_i = wp(half_period(i)).
  const std::array<cplx, 3>& roots() const { return e_; }
  cplx g2() const { return g2_; }
  cplx g3() const { return g3_; }

  // Distance from z to the nearest lattice point.
  double distance_to_lattice(cplx z) const;

  cplx wp(cplx z) const;
  cplx wp_prime(cplx z) const;
  cplx zeta(cplx z) const;
  // Entire; reduced to the fundamental cell and continued by
  // quasi-periodicity. Throws std::overflow_error.
  cplx sigma(cplx z) const;
  // A logarithm of sigma(z), z not a lattice point; the branch is arbitrary
  // but consistent enough for ratios of nearby values.
  cplx log_sigma(cplx z) const;
  // zeta(w_i) for the user basis half-periods w1, w2.
  cplx eta1() const { return eta_user_[0]; }
  cplx eta2() const { return eta_user_[1]; }

 private:
  // theta_1^(k)(v) / (2 q^{1/4}) for k = 0..3.
  std::array<cplx, 4> theta1_scaled(cplx v) const;
  // z = z_r + 2 m r1 + 2 n r3 with z_r nearest the origin.
  struct Reduced {
    cplx z;
    long long m, n;
  };
  Reduced reduce_full(cplx z) const;
  cplx reduce(cplx z) const;

  cplx w1_, w2_;        // user half-periods
  cplx r1_, r3_;        // reduced half-periods, Im(r3/r1) > 0
  cplx q_;              // exp(i pi r3/r1)
  cplx eta_r1_;         // zeta(r1)
  cplx eta_r3_;         // zeta(r3)
  cplx theta1p0_;       // scaled theta_1'(0)
  std::array<cplx, 3> e_{};
  std::array<cplx, 2> eta_user_{};
  cplx g2_, g3_;
};

// Lattice together with the chosen half-period w, wp(w) = -tau.
class EllipticContext {
 public:
  // half_period_index < 0 selects the default: among real roots, the one of
  // smallest magnitude (any root of smallest magnitude if none is real).
  EllipticContext(cplx omega1, cplx omega2, int half_period_index = -1);

  const Lattice& lattice() const { return lat_; }
  int half_period_index() const { return index_; }
  cplx omega() const { return lat_.half_period(index_); }
  cplx tau() const { return tau_; }
  cplx mu() const { return mu_; }

  cplx wp(cplx z) const { return lat_.wp(z); }
  cplx wp_prime(cplx z) const { return lat_.wp_prime(z); }
  cplx sigma(cplx z) const { return lat_.sigma(z); }
  // sigma(z + w)/sigma(w) * exp(-zeta(w) z)
  cplx sigma1(cplx z) const;

  // max |4 e^3 - g2 e - g3| and the residuals of g2 = 12(tau^2 - mu),
  // g3 = 4 tau (2 tau^2 - 3 mu).
  double invariant_residual() const;

 private:
  Lattice lat_;
  int index_;
  cplx tau_, mu_;
  cplx log_sigma_w_, zeta_w_;
};

}  // namespace qes::elliptic
