#include "doctest.h"
#include "qes/exact/parse.hpp"
#include "qes/models/catalog.hpp"

using namespace qes::exact;
using namespace qes::weyl;
using namespace qes::models;

namespace {

MPoly P(const char* s) { return parse_poly(s); }
DiffOp T(unsigned a, unsigned b, const char* c, Chart ch = Chart::XY) {
  return DiffOp::term(ch, a, b, FactoredRatFn(P(c)));
}

}  // namespace

TEST_CASE("catalog scalars") {
  CHECK(std::get<MPoly>(build({ModelTag::E0_scalar})) == P("3*nu*(3*nu + 1)*tau"));
  const MPoly d0 = det_D().subst({{Var::tau, MPoly()}, {Var::mu, MPoly()}});
  CHECK(d0 == P("-(4*x^3 + 27*y^2)/12"));
  const auto v = std::get<FactoredRatFn>(build({ModelTag::V_A2}));
  CHECK(v.power(Base::Dxy) == 1);
  CHECK(v.numerator() == P("3/4*nu*(nu - 1)") * potential_numerator_xy() * potential_numerator_xy());
  CHECK(potential_numerator_uv() == even_xy_to_uv(potential_numerator_xy()));
}

TEST_CASE("sl(3) generators") {
  const DiffOp j7 = std::get<DiffOp>(build({ModelTag::Sl3Gen, 7}));
  const DiffOp inner = T(1, 0, "x") + T(0, 1, "y") + T(0, 0, "3*nu");
  CHECK(j7 == compose(T(0, 0, "x"), inner));
  CHECK_THROWS_AS(sl3_generator(9), UnknownGenerator);
  CHECK(expand_word({"J1", "J3"}, Algebra::sl3) == T(2, 0, "x") + T(1, 0, "1"));
  CHECK_THROWS_AS(expand_word({"J9"}, Algebra::sl3), UnknownGenerator);
  CHECK_THROWS_AS(expand_word({"Q1"}, Algebra::g2), UnknownGenerator);
}

TEST_CASE("h(x, y) forms agree") {
  CHECK(expand_generator_form(h_sl3_words(), Algebra::sl3) == h_xy());
  CHECK(restrict_to_even(h_xy()) == h_uv());
  CHECK(h_xy().has_polynomial_coefficients());
  CHECK(h_xy().order() == 2);
}

TEST_CASE("k commutes with h") {
  const DiffOp k = k_a2_xy();
  CHECK(k.order() == 3);
  CHECK(commutator(h_xy(), k).is_zero());
  CHECK_FALSE(commutator(h_xy(), k_a2_xy_as_printed()).is_zero());
  CHECK(reflect_y(k) == -k);
}

TEST_CASE("g(2) generator form of h_m") {
  CHECK(expand_generator_form(h_m_g2_words_consistent(), Algebra::g2) == h_m_uv());
  CHECK_FALSE(expand_generator_form(h_m_g2_words_as_printed(), Algebra::g2) == h_m_uv());
}

TEST_CASE("particular integrals annihilate their polynomial spaces") {
  const DiffOp ip = ipar_xy(1);
  CHECK(ip.order() == 2);
  CHECK(apply(ip, FactoredRatFn(P("1 + x + y"))).is_zero());
  CHECK_FALSE(apply(ip, FactoredRatFn(P("x^2"))).is_zero());
  CHECK(apply(ipar_uv(2), FactoredRatFn(P("1 + u + v + u^2"))).is_zero());
  CHECK_THROWS(build({ModelTag::IparXY}));
}
