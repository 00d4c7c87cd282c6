#include "qes/elliptic/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qes::elliptic {

using exact::Var;

cplx evaluate(const exact::MPoly& p, const Point& values) {
  cplx sum = 0;
  for (const auto& t : p.terms()) {
    cplx term = t.coef.get_d();
    for (std::size_t i = 0; i < exact::kVarCount; ++i) {
      const unsigned e = t.mono.exponent(static_cast<Var>(i));
      for (unsigned k = 0; k < e; ++k) term *= values[i];
    }
    sum += term;
  }
  return sum;
}

namespace {

XY map_unchecked(const EllipticPoint& p, const EllipticContext& ctx) {
  const cplx f1 = ctx.wp(p.y1) + ctx.tau(), f2 = ctx.wp(p.y2) + ctx.tau();
  const cplx d1 = ctx.wp_prime(p.y1), d2 = ctx.wp_prime(p.y2);
  const cplx den = f1 * d2 - f2 * d1;
  if (std::abs(den) <= 1e-8) throw DegenerateMap("map_xy: vanishing denominator");
  return {(d1 - d2) / den, 2.0 * (f1 - f2) / den};
}

}  // namespace

XY map_xy(const EllipticPoint& p, const EllipticContext& ctx) {
  const XY r = map_unchecked(p, ctx);
#ifndef NDEBUG
  const XY m = map_unchecked({-p.y1, -p.y2}, ctx);
  const auto close = [](cplx a, cplx b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)); };
  if (!close(m.x, r.x) || !close(m.y, -r.y)) throw std::logic_error("map_xy: parity violated");
#endif
  return r;
}

double pole_distance(const EllipticPoint& p, const Lattice& lattice) {
  const std::array<cplx, 6> args{p.y1, p.y2, p.y1 + p.y2, p.y1 - p.y2, 2.0 * p.y1 + p.y2, p.y1 + 2.0 * p.y2};
  double d = std::numeric_limits<double>::infinity();
  for (const cplx a : args) d = std::min(d, lattice.distance_to_lattice(a));
  return d / lattice.min_period();
}

XY rational_limit_xy(const EllipticPoint& p) {
  const cplx a = p.y1, b = p.y2;
  return {-(a * a + b * b + a * b), -a * b * (a + b)};
}

XY trig_limit_xy(const EllipticPoint& p, double alpha) {
  const cplx a = alpha * p.y1, b = alpha * p.y2;
  return {(std::cos(a) + std::cos(b) + std::cos(a + b) - 3.0) / (alpha * alpha),
          2.0 * (std::sin(a) + std::sin(b) - std::sin(a + b)) / (alpha * alpha * alpha)};
}

}  // namespace qes::elliptic
