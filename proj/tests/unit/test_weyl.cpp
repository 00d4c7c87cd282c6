#include <random>

#include "doctest.h"
#include "qes/exact/parse.hpp"
#include "qes/weyl/diffop.hpp"

using namespace qes::exact;
using namespace qes::weyl;

namespace {

MPoly P(const char* s) { return parse_poly(s); }
DiffOp T(unsigned a, unsigned b, const char* c, Chart ch = Chart::XY) {
  return DiffOp::term(ch, a, b, FactoredRatFn(P(c)));
}
const DiffOp Dx = T(1, 0, "1");
const DiffOp Dy = T(0, 1, "1");

DiffOp random_op(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3), e(0, 2);
  DiffOp op(Chart::XY);
  for (unsigned a = 0; a <= 2; ++a)
    for (unsigned b = 0; a + b <= 2; ++b) {
      MPoly coef;
      for (int k = 0; k < 2; ++k) {
        const unsigned ex = static_cast<unsigned>(e(rng)), ey = static_cast<unsigned>(e(rng));
        if (ex + ey > 2) continue;
        coef += MPoly::monomial(Monomial::of(Var::x, ex) * Monomial::of(Var::y, ey), c(rng));
      }
      op.add_term(a, b, coef);
    }
  return op;
}

}  // namespace

TEST_CASE("compose examples") {
  CHECK(compose(Dx, T(0, 0, "x")) == T(1, 0, "x") + T(0, 0, "1"));
  CHECK(compose(Dx, T(0, 1, "x^2")) == T(1, 1, "x^2") + T(0, 1, "2*x"));
  const DiffOp J1 = Dx, J3 = T(1, 0, "x");
  // Hand Leibniz: d(x d) = x d^2 + d, (x d) d = x d^2, difference d.
  CHECK(compose(J1, J3) == T(2, 0, "x") + Dx);
  CHECK(compose(J3, J1) == T(2, 0, "x"));
  CHECK(compose(J1, J3) - compose(J3, J1) == Dx);
  CHECK_THROWS_AS(compose(Dx, T(1, 0, "1", Chart::UV)), ChartMismatch);
}

TEST_CASE("commutator examples") {
  CHECK(commutator(Dx, Dy).is_zero());
  CHECK(commutator(T(1, 0, "x"), Dx) == -Dx);
}

TEST_CASE("apply") {
  CHECK(apply(T(2, 0, "y") + T(0, 1, "x"), FactoredRatFn(P("x^3 + y^2"))) == FactoredRatFn(P("6*x*y + 2*x*y")));
  CHECK(apply(Dx, FactoredRatFn::over(1, Base::Dxy)) ==
        FactoredRatFn::over(-base_polynomial(Base::Dxy).diff(Var::x), Base::Dxy, 2));
}

TEST_CASE("conjugate_by_power") {
  const MPoly s = vars::nu();
  // y^{-s} d_y y^{s} = d_y + s/y
  CHECK(conjugate_by_power(Dy, Base::Y, s) == Dy + DiffOp::scalar(Chart::XY, FactoredRatFn::over(s, Base::Y)));
  const MPoly& d = base_polynomial(Base::Dxy);
  const MPoly half_nu = vars::nu() * make_rational(1, 2);
  CHECK(conjugate_by_power(Dx, Base::Dxy, half_nu) ==
        Dx + DiffOp::scalar(Chart::XY, FactoredRatFn::over(half_nu * d.diff(Var::x), Base::Dxy)));
  const DiffOp A = T(2, 0, "x^2") + T(1, 1, "y") + T(0, 0, "tau");
  CHECK(conjugate_by_power(A, Base::Dxy, MPoly()) == A);
  const DiffOp C = conjugate_by_power(A, Base::Dxy, half_nu);
  CHECK(conjugate_by_power(C, Base::Dxy, -half_nu) == A);
  CHECK_THROWS_AS(conjugate_by_power(A, Base::V, half_nu), ChartMismatch);
  // Checked against direct application on D^{s} f with s = 2: D^{-2} A (D^2 f).
  const FactoredRatFn f(P("x^2*y + 3*y"));
  const FactoredRatFn d2(d * d);
  const DiffOp C2 = conjugate_by_power(A, Base::Dxy, MPoly(2));
  CHECK(apply(C2, f) * d2 == apply(A, d2 * f));
}

TEST_CASE("restrict_to_even") {
  CHECK(restrict_to_even(T(0, 1, "y")) == T(0, 1, "2*v", Chart::UV));
  CHECK(restrict_to_even(T(0, 2, "1")) == T(0, 1, "2", Chart::UV) + T(0, 2, "4*v", Chart::UV));
  CHECK_THROWS_AS(restrict_to_even(T(0, 1, "1")), ParityViolation);
  CHECK_THROWS_AS(restrict_to_even(T(1, 0, "y")), ParityViolation);
}

TEST_CASE("operator algebra properties on random triples") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 40; ++i) {
    const DiffOp A = random_op(rng), B = random_op(rng), C = random_op(rng);
    REQUIRE(compose(compose(A, B), C) == compose(A, compose(B, C)));
    const DiffOp jac = commutator(A, commutator(B, C)) + commutator(B, commutator(C, A)) +
                       commutator(C, commutator(A, B));
    REQUIRE(jac.is_zero());
    const DiffOp AB = commutator(A, B);
    if (!AB.is_zero()) REQUIRE(AB.order() + 1 <= A.order() + B.order());
  }
}

TEST_CASE("restrict_to_even commutes with composition on even operators") {
  const DiffOp A = T(2, 0, "x^2 + y^2") + T(1, 1, "x*y") + T(0, 2, "1 + y^2") + T(0, 1, "y");
  const DiffOp B = T(1, 0, "y^2") + T(0, 2, "x") + T(0, 0, "tau*y^2");
  CHECK(restrict_to_even(compose(A, B)) == compose(restrict_to_even(A), restrict_to_even(B)));
  CHECK(reflect_y(A) == A);
  CHECK(reflect_y(T(0, 0, "y")) == T(0, 0, "-y"));
}

TEST_CASE("serialization is canonical") {
  const DiffOp A = T(0, 0, "1") + T(1, 0, "x") + T(0, 2, "y") + T(1, 1, "2");
  const auto s = A.serialize();
  REQUIRE(s.size() == 4);
  CHECK((s[0].a == 1 && s[0].b == 1));
  CHECK((s[1].a == 0 && s[1].b == 2));
  CHECK((s[2].a == 1 && s[2].b == 0));
  CHECK(s[3].coefficient == "1");
}
