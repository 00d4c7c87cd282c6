#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qes/elliptic/checks.hpp"
#include "qes/util/parallel.hpp"

using namespace qes::elliptic;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

const EllipticContext& rect() {
  static const EllipticContext ctx(0.5, cplx(0, 0.8));
  return ctx;
}

}  // namespace

// Reference values from an independent 40-digit theta-function evaluation.
TEST_CASE("weierstrass values on the rectangular lattice") {
  const auto& L = rect().lattice();
  const cplx z(0.13, 0.05);
  CHECK(rel(L.wp(z), cplx(38.356035900336343722, -34.452291535515312422)) < 1e-12);
  CHECK(rel(L.wp_prime(z), cplx(-332.97784392208339342, 660.90529600119160256)) < 1e-12);
  CHECK(rel(L.sigma(z), cplx(0.13000779456762110858, 0.049972157544948316305)) < 1e-13);
  CHECK(rel(L.g2(), cplx(131.22128528948736279)) < 1e-12);
  CHECK(rel(L.g3(), cplx(278.66637398013706987)) < 1e-12);
  CHECK(rel(L.eta1(), cplx(1.6432342133393810339)) < 1e-12);
  CHECK(rel(L.roots()[0], cplx(6.5865350960439994141)) < 1e-12);
}

TEST_CASE("context invariants and default half-period") {
  const auto& ctx = rect();
  // Real roots 6.59, -3.81, -2.78: smallest magnitude is at w1 + w2.
  CHECK(ctx.half_period_index() == 2);
  CHECK(std::abs(ctx.tau() - cplx(2.7751093735160499719)) < 1e-12);
  CHECK(ctx.invariant_residual() < 1e-12);
  const auto& e = ctx.lattice().roots();
  CHECK(std::abs(e[0] + e[1] + e[2]) < 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(rel(ctx.lattice().wp(ctx.lattice().half_period(i)), e[static_cast<std::size_t>(i)]) < 1e-10);
  CHECK_THROWS_AS(EllipticContext(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("weierstrass functional identities") {
  const auto& L = rect().lattice();
  for (int k = 0; k < 20; ++k) {
    const cplx z(0.11 + 0.031 * k, 0.37 - 0.029 * k);
    const cplx p = L.wp(z), pp = L.wp_prime(z);
    CHECK(std::abs(pp * pp - (4.0 * p * p * p - L.g2() * p - L.g3())) < 1e-10 * (1 + std::pow(std::abs(p), 3)));
    CHECK(rel(L.wp(-z), p) < 1e-10);
    CHECK(rel(L.sigma(-z), -L.sigma(z)) < 1e-10);
    const cplx pdd = 6.0 * p * p - L.g2() / 2.0;
    CHECK(rel(pdd * pdd / (4.0 * pp * pp) - 2.0 * p, L.wp(2.0 * z)) < 1e-9);
    const cplx w = L.omega1();
    CHECK(rel(-L.sigma(z) * std::exp(2.0 * L.eta1() * (z + w)), L.sigma(z + 2.0 * w)) < 1e-8);
    CHECK(rel(L.zeta(z + 2.0 * w), L.zeta(z) + 2.0 * L.eta1()) < 1e-10);
  }
  CHECK(std::abs(L.sigma(cplx(1e-4, 0)) / 1e-4 - 1.0) < 1e-6);
  CHECK_THROWS_AS(L.wp(2.0 * L.omega2()), PoleProximity);
}

TEST_CASE("quasi-periodicity on a strongly skewed lattice in log form") {
  const Lattice L(0.5, cplx(0.5, 0.03));
  const cplx z(0.13, 0.05), w = L.omega1();
  const cplx lhs = L.log_sigma(z + 2.0 * w);
  const cplx rhs = L.log_sigma(z) + 2.0 * L.eta1() * (z + w) + cplx(0, std::numbers::pi);
  // Same value up to the branch of the logarithm.
  const cplx d = lhs - rhs;
  CHECK(std::abs(d.real()) < 1e-9 * std::abs(lhs));
  CHECK(std::abs(std::remainder(d.imag(), 2 * std::numbers::pi)) < 1e-8);
}

TEST_CASE("one-dimensional jacobian") {
  const auto& ctx = rect();
  double literal = 0, corrected = 0;
  for (int k = 0; k < 20; ++k) {
    const cplx y(0.07 + 0.017 * k, 0.05 - 0.011 * k);
    const cplx rhs = ctx.sigma(2.0 * y) / std::pow(ctx.sigma1(y), 4);
    const cplx f = ctx.wp(y) + ctx.tau();
    literal = std::max(literal, rel(-ctx.wp_prime(y), rhs));
    corrected = std::max(corrected, rel(-ctx.wp_prime(y) / (f * f), rhs));
  }
  // -wp' alone misses the factor (wp - e)^2; d(1/f)/dy matches.
  CHECK(literal > 1e-2);
  CHECK(corrected < 1e-8);
}

TEST_CASE("trigonometric degeneration of wp") {
  const double alpha = 1.3;
  const cplx w1 = std::numbers::pi / alpha;
  const Lattice L(w1, cplx(0, 1000) * w1);
  for (const cplx z : {cplx(0.3, 0.1), cplx(-1.1, 0.4), cplx(2.0, -0.2)}) {
    const cplx s = std::sin(alpha * z / 2.0);
    CHECK(rel(L.wp(z), alpha * alpha / (4.0 * s * s) - alpha * alpha / 12) < 1e-5);
  }
}

TEST_CASE("change of variables") {
  const auto& ctx = rect();
  const EllipticPoint p{cplx(0.31, 0.05), cplx(-0.12, 0.2)};
  const XY a = map_xy(p, ctx), s = map_xy({p.y2, p.y1}, ctx), m = map_xy({-p.y1, -p.y2}, ctx);
  CHECK(rel(s.x, a.x) < 1e-12);
  CHECK(rel(s.y, a.y) < 1e-12);
  CHECK(rel(m.x, a.x) < 1e-10);
  CHECK(rel(m.y, -a.y) < 1e-10);
  CHECK_THROWS_AS(map_xy({p.y1, p.y1}, ctx), DegenerateMap);

  // Large periods: tau, mu -> 0.
  const EllipticContext rat(50.0, cplx(0, 50));
  const XY r = map_xy(p, rat), lim = rational_limit_xy(p);
  CHECK(rel(r.x, lim.x) < 1e-4);
  // The closed form's y carries the opposite sign to the map.
  CHECK(rel(r.y, -lim.y) < 1e-4);
  CHECK(rel(r.y, lim.y) > 1.0);

  const double alpha = 1.3;
  const cplx w1 = std::numbers::pi / alpha;
  const EllipticContext trig(w1, cplx(0, 1000) * w1, 1);
  CHECK(std::abs(trig.tau() - alpha * alpha / 12) < 1e-12);
  CHECK(std::abs(trig.mu()) < 1e-10);
  const XY t = map_xy(p, trig), tl = trig_limit_xy(p, alpha);
  CHECK(rel(t.x, tl.x) < 1e-5);
  CHECK(rel(t.y, tl.y) < 1e-5);
}

TEST_CASE("sampling is seeded and pole-excluded") {
  const auto& ctx = rect();
  const auto a = sample_points(ctx, 50, 11), b = sample_points(ctx, 50, 11), c = sample_points(ctx, 50, 12);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].y1 == b[i].y1);
    CHECK(a[i].y2 == b[i].y2);
    CHECK(pole_distance(a[i], ctx.lattice()) >= 0.05);
  }
  CHECK(a[0].y1 != c[0].y1);
}

TEST_CASE("numeric checks on the rectangular lattice") {
  const auto& ctx = rect();
  const auto pm = numeric_check(CheckId::potential_match, ctx, 40, 3);
  CHECK(*pm.passed);
  CHECK(pm.max_rel_error < 1e-8);
  const auto dw = numeric_check(CheckId::jacobian_DW, ctx, 40, 3);
  CHECK(*dw.passed);
  const auto sf = numeric_check(CheckId::sigma_factorization, ctx, 40, 3);
  CHECK(*sf.passed);
  CHECK(std::abs(sf.stats.at("constant_re") + 1.0) < 1e-6);
  const auto dt = numeric_check(CheckId::discriminant_trig, ctx, 40, 3);
  CHECK(*dt.passed);
  const auto ef = numeric_check(CheckId::eigenfunction_residual, ctx, 8, 3);
  CHECK(*ef.passed);
  CHECK(ef.stats.at("states") == 6);
  const auto mt = numeric_check(CheckId::matushko_n2, ctx, 20, 3);
  CHECK_FALSE(mt.passed.has_value());
  CHECK(mt.stats.at("mobius_max_rel") < 1e-10);
  CHECK_THROWS_AS(numeric_check(CheckId::jacobian_DW, ctx, 0, 3), std::invalid_argument);
}

TEST_CASE("trigonometric jacobians differ from the closed forms by orientation") {
  for (const auto id : {CheckId::trig_degeneration_I, CheckId::trig_degeneration_II}) {
    const auto r = numeric_check(id, rect(), 30, 5);
    CHECK_FALSE(*r.passed);
    CHECK(std::abs(r.max_rel_error - 2.0) < 1e-6);
    CHECK(r.stats.at("max_rel_error_opposite_orientation") < 1e-5);
  }
}

TEST_CASE("reports do not depend on the thread count") {
  const unsigned before = qes::util::thread_count();
  qes::util::set_thread_count(1);
  const auto a = numeric_check(CheckId::jacobian_DW, rect(), 30, 9);
  qes::util::set_thread_count(4);
  const auto b = numeric_check(CheckId::jacobian_DW, rect(), 30, 9);
  qes::util::set_thread_count(before);
  CHECK(a.max_rel_error == b.max_rel_error);
  CHECK(check_from_name("jacobian_DW") == CheckId::jacobian_DW);
  CHECK_FALSE(check_from_name("nope").has_value());
}
