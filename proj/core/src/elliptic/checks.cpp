#include "qes/elliptic/checks.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "qes/models/catalog.hpp"
#include "qes/rep/spaces.hpp"
#include "qes/util/parallel.hpp"

namespace qes::elliptic {

using exact::Var;

namespace {

constexpr std::array<std::pair<CheckId, std::string_view>, 8> kNames{{
    {CheckId::potential_match, "potential_match"},
    {CheckId::jacobian_DW, "jacobian_DW"},
    {CheckId::sigma_factorization, "sigma_factorization"},
    {CheckId::trig_degeneration_I, "trig_degeneration_I"},
    {CheckId::trig_degeneration_II, "trig_degeneration_II"},
    {CheckId::discriminant_trig, "discriminant_trig"},
    {CheckId::eigenfunction_residual, "eigenfunction_residual"},
    {CheckId::matushko_n2, "matushko_n2"},
}};

Point params(cplx tau, cplx mu, cplx x = 0, cplx y = 0) {
  Point p{};
  p[exact::index(Var::x)] = x;
  p[exact::index(Var::y)] = y;
  p[exact::index(Var::tau)] = tau;
  p[exact::index(Var::mu)] = mu;
  return p;
}

cplx det_d(const XY& m, const EllipticContext& ctx) {
  static const exact::MPoly d = models::det_D();
  return evaluate(d, params(ctx.tau(), ctx.mu(), m.x, m.y));
}

double shortest(const EllipticContext& ctx) { return ctx.lattice().min_period(); }

double uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

// Per-sample relative errors, computed in parallel into disjoint slots.
std::vector<double> per_sample(const std::vector<EllipticPoint>& pts, const std::function<double(const EllipticPoint&)>& f) {
  std::vector<double> out(pts.size());
  util::parallel_for(pts.size(), [&](std::size_t i) { out[i] = f(pts[i]); });
  return out;
}

void finish(NumericCheckReport& r, const std::vector<EllipticPoint>& pts, const std::vector<double>& err) {
  r.samples = pts.size();
  r.max_rel_error = 0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double e = std::isfinite(err[i]) ? err[i] : std::numeric_limits<double>::infinity();
    r.max_rel_error = std::max(r.max_rel_error, e);
    if (!(e <= r.tolerance)) r.failures.push_back({i, pts[i], e, "relative error above tolerance"});
  }
  r.passed = r.failures.empty();
}

// |r_i - mean| / |mean| for a sequence that should be constant.
std::vector<double> constancy(const std::vector<cplx>& ratios, NumericCheckReport& r) {
  cplx mean = 0;
  for (const cplx c : ratios) mean += c;
  mean /= static_cast<double>(ratios.size());
  r.stats["constant_re"] = mean.real();
  r.stats["constant_im"] = mean.imag();
  std::vector<double> out;
  out.reserve(ratios.size());
  for (const cplx c : ratios) out.push_back(std::abs(c - mean) / std::abs(mean));
  return out;
}

EllipticContext degenerate_context(const EllipticContext& ctx, int index, double& alpha) {
  alpha = 2 * std::numbers::pi / shortest(ctx);
  const cplx w1 = std::numbers::pi / alpha;
  return EllipticContext(w1, cplx(0, 1000) * w1, index);
}

// Relative error of W against the closed form; `negate` compares -W.
std::vector<double> trig_errors(const EllipticContext& deg, double alpha, bool case_two, const std::vector<EllipticPoint>& pts,
                                double step, bool negate) {
  return per_sample(pts, [&](const EllipticPoint& p) {
    const cplx w = (negate ? -1.0 : 1.0) * jacobian_fd(p, deg, step);
    const auto s = [&](cplx a) { return std::sin(alpha * a / 2.0); };
    const auto c = [&](cplx a) { return std::cos(alpha * a / 2.0); };
    cplx closed = 8.0 / (alpha * alpha * alpha) * s(p.y1 - p.y2) * s(p.y1 + 2.0 * p.y2) * s(2.0 * p.y1 + p.y2);
    if (case_two) closed /= std::pow(c(p.y1) * c(p.y2) * c(p.y1 + p.y2), 3);
    return std::abs(w - closed) / std::abs(closed);
  });
}

// Eigenvectors of h(x, y) on P_2 at nu = -2/3 and the context's tau, mu.
struct State {
  cplx energy;  // eigenvalue of H = E(h) + E0
  std::vector<cplx> coefficients;
  double matrix_residual;
};

std::vector<State> n2_states(const EllipticContext& ctx, const rep::MonomialBasis& basis) {
  const auto pm = rep::matrix_of(models::h_xy(), basis, rep::qes_binding(2));
  const std::size_t n = basis.size();
  Eigen::MatrixXcd m(n, n);
  const Point pt = params(ctx.tau(), ctx.mu());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evaluate(pm(i, j), pt);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  // E0 = 3 nu (3 nu + 1) tau = 2 tau at nu = -2/3.
  const cplx e0 = 2.0 * ctx.tau();
  std::vector<State> out;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n); ++k) {
    const Eigen::VectorXcd v = es.eigenvectors().col(k);
    const cplx lam = es.eigenvalues()(k);
    State s{lam + e0, std::vector<cplx>(v.data(), v.data() + v.size()), (m * v - lam * v).norm() / v.norm()};
    out.push_back(std::move(s));
  }
  return out;
}

cplx basis_value(const rep::MonomialBasis& basis, std::size_t i, const XY& m) {
  return std::pow(m.x, static_cast<int>(basis[i].exponent(Var::x))) *
         std::pow(m.y, static_cast<int>(basis[i].exponent(Var::y)));
}

cplx potential_sum(const EllipticContext& ctx, const EllipticPoint& p) {
  return ctx.wp(p.y1 - p.y2) + ctx.wp(2.0 * p.y1 + p.y2) + ctx.wp(p.y1 + 2.0 * p.y2);
}

NumericCheckReport eigenfunction_residual(const EllipticContext& ctx, const std::vector<EllipticPoint>& pts,
                                          const CheckOptions& o, NumericCheckReport r) {
  const auto basis = rep::MonomialBasis::P(2);
  const auto states = n2_states(ctx, basis);
  double worst_matrix = 0;
  for (const auto& s : states) worst_matrix = std::max(worst_matrix, s.matrix_residual);
  r.stats["states"] = static_cast<double>(states.size());
  r.stats["max_matrix_residual"] = worst_matrix;
  // kappa = nu (nu - 1) at nu = -2/3.
  const double kappa = 10.0 / 9.0;
  const unsigned nodes = std::max(8u, o.contour_nodes);
  std::vector<cplx> unit(nodes);
  for (unsigned k = 0; k < nodes; ++k) unit[k] = std::polar(1.0, 2 * std::numbers::pi * k / nodes);
  std::vector<double> err(pts.size());
  util::parallel_for(pts.size(), [&](std::size_t idx) {
    const EllipticPoint c = pts[idx];
    const XY mc = map_xy(c, ctx);
    const cplx dc = det_d(mc, ctx);
    // psi_k(p) = P_k(p) (D(p)/D(c))^{-1/3}; the constant D(c)^{-1/3} is dropped.
    const auto values = [&](cplx dy1, cplx dy2) {
      const XY m = map_xy({c.y1 + dy1, c.y2 + dy2}, ctx);
      const cplx g = std::pow(det_d(m, ctx) / dc, -1.0 / 3.0);
      std::vector<cplx> out(states.size());
      for (std::size_t k = 0; k < states.size(); ++k) {
        cplx p = 0;
        for (std::size_t i = 0; i < basis.size(); ++i) p += states[k].coefficients[i] * basis_value(basis, i, m);
        out[k] = p * g;
      }
      return out;
    };
    const auto center = values(0, 0);
    // f''(0) along (e1, e2) = (2 / (N rho^2)) sum_k f(rho w^k e) w^{-2k}; aliasing error ~ (rho / R)^N
    // with R the distance to the nearest singularity of psi in that direction.
    const auto second = [&](double rho, double e1, double e2) {
      std::vector<cplx> acc(states.size(), 0.0);
      for (unsigned k = 0; k < nodes; ++k) {
        const cplx t = rho * unit[k];
        const auto v = values(t * e1, t * e2);
        const cplx w = std::conj(unit[(2 * k) % nodes]);
        for (std::size_t s = 0; s < states.size(); ++s) acc[s] += v[s] * w;
      }
      for (auto& a : acc) a *= 2.0 / (nodes * rho * rho);
      return acc;
    };
    // Halve the radius until two successive radii agree; singularities of the
    // map (zeros of its denominator) are not covered by pole_distance.
    const auto stable_second = [&](double e1, double e2) {
      double rho = std::min(o.contour_radius * pole_distance(c, ctx.lattice()), o.contour_cap) * shortest(ctx);
      auto prev = second(rho, e1, e2);
      for (int level = 0; level < 8; ++level) {
        rho /= 2;
        auto next = second(rho, e1, e2);
        double diff = 0, size = 0;
        for (std::size_t s = 0; s < next.size(); ++s) {
          diff = std::max(diff, std::abs(next[s] - prev[s]));
          size = std::max(size, std::abs(next[s]));
        }
        prev = std::move(next);
        if (diff <= 1e-10 * size) break;
      }
      return prev;
    };
    const auto d11 = stable_second(1, 0), d22 = stable_second(0, 1), dsum = stable_second(1, 1);
    const cplx vsum = kappa * potential_sum(ctx, c);
    double worst = 0;
    for (std::size_t k = 0; k < states.size(); ++k) {
      const cplx d12 = (dsum[k] - d11[k] - d22[k]) / 2.0;
      const cplx hpsi = -(d11[k] + d22[k] - d12) / 3.0 + vsum * center[k];
      const cplx epsi = states[k].energy * center[k];
      const double scale = std::abs(epsi) > 0 ? std::abs(epsi) : std::abs(center[k]);
      worst = std::max(worst, std::abs(hpsi - epsi) / scale);
    }
    err[idx] = worst;
  });
  for (std::size_t k = 0; k < states.size(); ++k) {
    r.stats["energy_" + std::to_string(k) + "_re"] = states[k].energy.real();
    r.stats["energy_" + std::to_string(k) + "_im"] = states[k].energy.imag();
  }
  r.notes.push_back("H = -(1/3)(d11 + d22 - d12) + nu(nu-1) sum wp at nu = -2/3; psi = P D^{-1/3}; E_H = E(h) + 2 tau");
  finish(r, pts, err);
  return r;
}

NumericCheckReport matushko(const EllipticContext& ctx, const std::vector<EllipticPoint>& pts, NumericCheckReport r) {
  std::vector<std::array<double, 3>> res(pts.size());
  util::parallel_for(pts.size(), [&](std::size_t i) {
    const auto& p = pts[i];
    const cplx a = ctx.wp(p.y1), b = ctx.wp_prime(p.y1), c = ctx.wp(p.y2), d = ctx.wp_prime(p.y2);
    const cplx det = a * d - b * c;
    const cplx u1 = (d - b) / det, u2 = (a - c) / det;
    const XY m = map_xy(p, ctx);
    // Candidate relation: x = -u1/(1 + tau u1), y = 2 u2/(1 + tau u1).
    const cplx g = 1.0 + ctx.tau() * u1;
    res[i] = {std::abs(u1 - m.x) / std::abs(m.x), std::abs(u2 - m.y) / std::abs(m.y),
              std::max(std::abs(-u1 / g - m.x) / std::abs(m.x), std::abs(2.0 * u2 / g - m.y) / std::abs(m.y))};
  });
  std::array<double, 3> worst{}, mean{};
  for (const auto& v : res)
    for (int j = 0; j < 3; ++j) {
      worst[j] = std::max(worst[j], v[j]);
      mean[j] += v[j] / static_cast<double>(res.size());
    }
  r.stats = {{"identity_max_rel_u1_vs_x", worst[0]},  {"identity_max_rel_u2_vs_y", worst[1]},
             {"identity_mean_rel_u1_vs_x", mean[0]}, {"identity_mean_rel_u2_vs_y", mean[1]},
             {"mobius_max_rel", worst[2]},           {"mobius_mean_rel", mean[2]}};
  r.samples = pts.size();
  r.max_rel_error = worst[2];
  r.notes.push_back("M u = (1, 1) with rows (wp(y_i), wp'(y_i)); exploratory, no verdict");
  r.notes.push_back("mobius: x = -u1/(1 + tau u1), y = 2 u2/(1 + tau u1)");
  return r;
}

}  // namespace

std::string_view check_name(CheckId id) {
  for (const auto& [k, n] : kNames)
    if (k == id) return n;
  return "unknown";
}

std::optional<CheckId> check_from_name(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

const std::vector<CheckId>& all_checks() {
  static const std::vector<CheckId> ids = [] {
    std::vector<CheckId> v;
    for (const auto& [k, n] : kNames) v.push_back(k);
    return v;
  }();
  return ids;
}

double default_tolerance(CheckId id) {
  switch (id) {
    case CheckId::potential_match: return 1e-8;
    case CheckId::jacobian_DW:
    case CheckId::sigma_factorization:
    case CheckId::discriminant_trig:
    case CheckId::eigenfunction_residual: return 1e-6;
    case CheckId::trig_degeneration_I:
    case CheckId::trig_degeneration_II: return 1e-5;
    case CheckId::matushko_n2: return 0;
  }
  return 0;
}

std::vector<EllipticPoint> sample_points(const EllipticContext& ctx, std::size_t count, std::uint64_t seed,
                                         double exclusion) {
  std::mt19937_64 gen(seed);
  const double scale = shortest(ctx);
  const auto coord = [&] { return cplx((2 * uniform(gen) - 1) * 0.75 * scale, (2 * uniform(gen) - 1) * 0.75 * scale); };
  const auto& lat = ctx.lattice();
  std::vector<EllipticPoint> out;
  for (std::size_t tries = 0; out.size() < count; ++tries) {
    if (tries > 1000 * (count + 10)) throw std::runtime_error("sample_points: rejection sampling exhausted");
    const EllipticPoint p{coord(), coord()};
    if (pole_distance(p, lat) < exclusion) continue;
    bool near_zero = false;
    for (const cplx a : {p.y1, p.y2, p.y1 + p.y2})
      near_zero = near_zero || lat.distance_to_lattice(a - ctx.omega()) < exclusion * scale;
    if (near_zero) continue;
    try {
      map_xy(p, ctx);
    } catch (const DegenerateMap&) {
      continue;
    }
    out.push_back(p);
  }
  return out;
}

cplx jacobian_fd(const EllipticPoint& p, const EllipticContext& ctx, double step) {
  const auto d = [&](int which, double h) {
    const cplx e1 = which == 0 ? h : 0, e2 = which == 1 ? h : 0;
    const XY a = map_xy({p.y1 + e1, p.y2 + e2}, ctx), b = map_xy({p.y1 - e1, p.y2 - e2}, ctx);
    return XY{(a.x - b.x) / (2 * h), (a.y - b.y) / (2 * h)};
  };
  const auto rich = [&](int which) {
    const XY c = d(which, step), f = d(which, step / 2);
    return XY{(4.0 * f.x - c.x) / 3.0, (4.0 * f.y - c.y) / 3.0};
  };
  const XY d1 = rich(0), d2 = rich(1);
  return d2.y * d1.x - d2.x * d1.y;
}

cplx jacobian_sigma(const EllipticPoint& p, const EllipticContext& ctx) {
  const auto& lat = ctx.lattice();
  const cplx num = lat.sigma(p.y1 - p.y2) * lat.sigma(p.y1 + 2.0 * p.y2) * lat.sigma(2.0 * p.y1 + p.y2);
  return num / std::pow(ctx.sigma1(p.y1) * ctx.sigma1(p.y2) * ctx.sigma1(p.y1 + p.y2), 3);
}

NumericCheckReport numeric_check(CheckId id, const EllipticContext& ctx, std::size_t samples, std::uint64_t seed,
                                 const CheckOptions& options) {
  if (samples == 0) throw std::invalid_argument("numeric_check: samples must be positive");
  const auto start = std::chrono::steady_clock::now();
  NumericCheckReport r;
  r.check = std::string(check_name(id));
  const auto tol = options.tolerances.find(id);
  r.tolerance = tol != options.tolerances.end() ? tol->second : default_tolerance(id);
  const double step = options.fd_step * shortest(ctx);

  switch (id) {
    case CheckId::potential_match: {
      const auto pts = sample_points(ctx, samples, seed, options.exclusion);
      static const exact::MPoly num = models::potential_numerator_xy();
      const double nu = options.nu;
      const auto err = per_sample(pts, [&](const EllipticPoint& p) {
        const XY m = map_xy(p, ctx);
        const Point at = params(ctx.tau(), ctx.mu(), m.x, m.y);
        const cplx n = evaluate(num, at);
        const cplx lhs = 3 * nu * (nu - 1) / 4 * n * n / det_d(m, ctx);
        const cplx rhs = nu * (nu - 1) * potential_sum(ctx, p);
        return std::abs(lhs - rhs) / std::abs(rhs);
      });
      r.stats["nu"] = nu;
      finish(r, pts, err);
      break;
    }
    case CheckId::jacobian_DW: {
      const auto pts = sample_points(ctx, samples, seed, options.exclusion);
      const auto err = per_sample(pts, [&](const EllipticPoint& p) {
        const cplx w = jacobian_fd(p, ctx, step);
        return std::abs(12.0 * det_d(map_xy(p, ctx), ctx) - w * w) / std::abs(w * w);
      });
      finish(r, pts, err);
      break;
    }
    case CheckId::sigma_factorization: {
      const auto pts = sample_points(ctx, samples, seed, options.exclusion);
      std::vector<cplx> ratios(pts.size());
      util::parallel_for(pts.size(), [&](std::size_t i) {
        ratios[i] = jacobian_fd(pts[i], ctx, step) / jacobian_sigma(pts[i], ctx);
      });
      r.notes.push_back("ratio W_fd / W_sigma should be constant; constant reported in stats");
      finish(r, pts, constancy(ratios, r));
      break;
    }
    case CheckId::trig_degeneration_I:
    case CheckId::trig_degeneration_II: {
      const bool two = id == CheckId::trig_degeneration_II;
      double alpha = 0;
      // Case I: the double root -alpha^2/12 sits at w2; case II: the simple root alpha^2/6 at w1.
      const EllipticContext deg = degenerate_context(ctx, two ? 0 : 1, alpha);
      const auto pts = sample_points(deg, samples, seed, options.exclusion);
      r.stats["alpha"] = alpha;
      r.stats["tau"] = deg.tau().real();
      r.stats["mu"] = deg.mu().real();
      const double h = options.fd_step * shortest(deg);
      const auto flipped = trig_errors(deg, alpha, two, pts, h, true);
      r.stats["max_rel_error_opposite_orientation"] = *std::max_element(flipped.begin(), flipped.end());
      r.notes.push_back("opposite orientation: -W, i.e. y -> -y in the change of variables");
      finish(r, pts, trig_errors(deg, alpha, two, pts, h, false));
      break;
    }
    case CheckId::discriminant_trig: {
      double alpha = 0;
      const EllipticContext deg = degenerate_context(ctx, 1, alpha);
      const auto pts = sample_points(deg, samples, seed, options.exclusion);
      // tau = alpha^2/12 = alpha'^2/3 with alpha' = alpha/2.
      const double a = alpha / 2;
      std::vector<cplx> ratios(pts.size());
      util::parallel_for(pts.size(), [&](std::size_t i) {
        const auto& p = pts[i];
        const cplx y3 = p.y3();
        const cplx s = std::sin(a * (p.y1 - p.y2)) * std::sin(a * (p.y1 - y3)) * std::sin(a * (p.y2 - y3));
        ratios[i] = det_d(map_xy(p, deg), deg) / (s * s);
      });
      r.stats["alpha_prime"] = a;
      finish(r, pts, constancy(ratios, r));
      break;
    }
    case CheckId::eigenfunction_residual:
      r = eigenfunction_residual(ctx, sample_points(ctx, samples, seed, options.exclusion), options, r);
      break;
    case CheckId::matushko_n2:
      r = matushko(ctx, sample_points(ctx, samples, seed, options.exclusion), r);
      break;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace qes::elliptic
