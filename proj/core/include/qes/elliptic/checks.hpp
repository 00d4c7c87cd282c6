#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qes/elliptic/mapping.hpp"

namespace qes::elliptic {

enum class CheckId {
  potential_match,
  jacobian_DW,
  sigma_factorization,
  trig_degeneration_I,
  trig_degeneration_II,
  discriminant_trig,
  eigenfunction_residual,
  matushko_n2,
};

std::string_view check_name(CheckId id);
std::optional<CheckId> check_from_name(std::string_view name);
const std::vector<CheckId>& all_checks();
double default_tolerance(CheckId id);

struct CheckOptions {
  double nu = 0.37;              // coupling for potential_match
  double fd_step = 1e-5;         // first derivatives, in units of the shortest period
  // Second derivatives of the holomorphic eigenfunctions by the trapezoid
  // rule on a circle: radius = contour_radius * distance to the nearest
  // excluded point, capped at contour_cap shortest periods.
  double contour_radius = 0.25;
  double contour_cap = 0.05;
  unsigned contour_nodes = 32;
  double exclusion = 0.05;       // pole exclusion radius, same units
  std::map<CheckId, double> tolerances;
};

struct SampleFailure {
  std::size_t index;
  EllipticPoint point;
  double rel_error;
  std::string reason;
};

struct NumericCheckReport {
  std::string check;
  std::size_t samples = 0;
  double max_rel_error = 0;
  double tolerance = 0;
  // Empty for exploratory checks, which never assert a verdict.
  std::optional<bool> passed;
  std::vector<SampleFailure> failures;
  std::vector<std::string> notes;
  std::map<std::string, double> stats;
  double seconds = 0;
};

// Seeded points with |Re|, |Im| <= 0.75 shortest period per coordinate,
// rejecting pole_distance < exclusion and points within `exclusion` of the
// chosen half-period, where sigma1 vanishes.
std::vector<EllipticPoint> sample_points(const EllipticContext& ctx, std::size_t count, std::uint64_t seed,
                                         double exclusion = 0.05);

// Jacobian d(x, y)/d(y1, y2) by central differences of map_xy with one
// Richardson level; `step` is absolute.
cplx jacobian_fd(const EllipticPoint& p, const EllipticContext& ctx, double step);
// sigma(y1 - y2) sigma(y1 + 2 y2) sigma(2 y1 + y2) / (sigma1(y1) sigma1(y2) sigma1(y1 + y2))^3
cplx jacobian_sigma(const EllipticPoint& p, const EllipticContext& ctx);

// Trigonometric degenerations use their own lattice w1 = pi/alpha,
// w2 = 1000 i w1 with alpha = 2 pi / (shortest period of ctx).
NumericCheckReport numeric_check(CheckId id, const EllipticContext& ctx, std::size_t samples, std::uint64_t seed,
                                 const CheckOptions& options = {});

}  // namespace qes::elliptic
