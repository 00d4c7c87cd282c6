#pragma once

#include <array>
#include <stdexcept>

#include "qes/elliptic/weierstrass.hpp"
#include "qes/exact/mpoly.hpp"

namespace qes::elliptic {

// Values for the variable universe, indexed by exact::index(Var).
using Point = std::array<cplx, exact::kVarCount>;

// Floating evaluation of an exact polynomial at complex values.
cplx evaluate(const exact::MPoly& p, const Point& values);

// Reduced A2 coordinates; y3 = -y1 - y2.
struct EllipticPoint {
  cplx y1, y2;
  cplx y3() const { return -y1 - y2; }
};

struct XY {
  cplx x, y;
};

struct DegenerateMap : std::domain_error {
  using std::domain_error::domain_error;
};

// The invariant coordinates built from f = wp + tau:
//   x = (f'1 - f'2)/den,  y = 2 (f1 - f2)/den,  den = f1 f'2 - f2 f'1.
// Throws DegenerateMap when |den| <= 1e-8. Debug builds also assert
// x(-p) = x(p) and y(-p) = -y(p) to 1e-10.
XY map_xy(const EllipticPoint& p, const EllipticContext& ctx);

// Smallest distance, over y1, y2, y1 + y2, y1 - y2, 2 y1 + y2, y1 + 2 y2, to
// a lattice point, in units of the shortest period.
double pole_distance(const EllipticPoint& p, const Lattice& lattice);

// Closed forms of the rational (tau = mu = 0) and trigonometric
// (mu = 0, tau = alpha^2/12) limits of map_xy.
XY rational_limit_xy(const EllipticPoint& p);
XY trig_limit_xy(const EllipticPoint& p, double alpha);

}  // namespace qes::elliptic
