#include <random>

#include "doctest.h"
#include "qes/exact/parse.hpp"
#include "qes/exact/ratfn.hpp"

using namespace qes::exact;
using namespace qes::exact::vars;

namespace {

MPoly P(const char* s) { return parse_poly(s); }

MPoly random_poly(std::mt19937_64& rng, unsigned max_deg, std::initializer_list<Var> vs) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, static_cast<int>(max_deg)), nterms(0, 5);
  std::vector<Term> ts;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    unsigned budget = static_cast<unsigned>(deg(rng));
    for (Var v : vs) {
      std::uniform_int_distribution<unsigned> e(0, budget);
      const unsigned k = e(rng);
      budget -= k;
      m = m * Monomial::of(v, k);
    }
    ts.push_back({m, make_rational(coef(rng), 1 + static_cast<long>(rng() % 3))});
  }
  return MPoly::from_terms(std::move(ts));
}

}  // namespace

TEST_CASE("rationals stay canonical") {
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK(parse_rational(" -7/12 ") == make_rational(-7, 12));
  CHECK(parse_rational("+4") == 4);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("3x"), std::invalid_argument);
}

TEST_CASE("monomial packing") {
  const Monomial a = Monomial::of(Var::x, 2) * Monomial::of(Var::tau);
  CHECK(a.exponent(Var::x) == 2);
  CHECK(a.degree() == 3);
  CHECK(a.degree(mask(Var::x)) == 2);
  CHECK(Monomial::of(Var::x).divides(a));
  CHECK_FALSE(Monomial::of(Var::y).divides(a));
  CHECK((a / Monomial::of(Var::x)).exponent(Var::x) == 1);
  CHECK(a.restrict(kParamMask) == Monomial::of(Var::tau));
  CHECK(Monomial::of(Var::y, 3) > Monomial::of(Var::x, 2));  // graded first
  CHECK(Monomial::of(Var::x, 2) > Monomial::of(Var::x) * Monomial::of(Var::y));
  CHECK_THROWS_AS(Monomial::of(Var::x, 100) * Monomial::of(Var::x, 100), std::overflow_error);
}

TEST_CASE("poly_arith examples") {
  CHECK((x() + y()) * (x() - y()) == x().pow(2) - y().pow(2));
  CHECK(P("4*x^3+27*y^2") + MPoly() == P("4*x^3+27*y^2"));
  const MPoly d12 = base_polynomial(Base::Dxy) * BigRat(12);
  CHECK(d12.subst({{Var::tau, MPoly()}, {Var::mu, MPoly()}}).to_string() == "-4*x^3 - 27*y^2");
}

TEST_CASE("poly_diff examples") {
  CHECK(P("4*x^3+27*y^2").diff(Var::x) == P("12*x^2"));
  CHECK(P("x^3").diff(Var::y).is_zero());
  // Transcribed trigonometric discriminant polynomial and its tau-derivative term by term.
  const MPoly dtrig = P("12*tau*x^4 + 4*x^3 + 72*tau^2*x^2*y^2 + 108*tau*x*y^2 + 27*y^2 + 108*tau^3*y^4");
  CHECK(dtrig.diff(Var::tau) == P("12*x^4 + 144*tau*x^2*y^2 + 108*x*y^2 + 324*tau^2*y^4"));
  const MPoly d12 = base_polynomial(Base::Dxy) * BigRat(12);
  CHECK(-d12.subst(Var::mu, MPoly()) == dtrig);
  CHECK(P("x^3*y^2").diff(Var::x, 2) == P("6*x*y^2"));
}

TEST_CASE("poly_subst examples") {
  CHECK(P("1+3*nu").subst(Var::nu, make_rational(-1, 3)).is_zero());
  CHECK(P("u+3*tau*u^2").subst({{Var::u, x()}, {Var::v, y().pow(2)}}) == P("x+3*tau*x^2"));
  CHECK(P("3*nu*(3*nu+1)*tau").subst(Var::nu, make_rational(-2, 3)) == P("2*tau"));
}

TEST_CASE("canonical text round-trips through the parser") {
  const MPoly p = P("(x - 2/3*y + tau)^3 - mu*lambda/5");
  CHECK(parse_poly(p.to_string()) == p);
  CHECK(P("-x^2").to_string() == "-x^2");
  CHECK(MPoly().to_string() == "0");
  CHECK_THROWS_AS(parse_poly("x/y"), ParseError);
  CHECK_THROWS_AS(parse_poly("z+1"), ParseError);
  CHECK_THROWS_AS(parse_poly("(x+1"), ParseError);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(20240517);
  for (int i = 0; i < 1000; ++i) {
    const MPoly a = random_poly(rng, 4, {Var::x, Var::y, Var::tau});
    const MPoly b = random_poly(rng, 4, {Var::x, Var::y, Var::mu});
    const MPoly c = random_poly(rng, 4, {Var::y, Var::tau, Var::nu});
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    REQUIRE(a + b == b + a);
    REQUIRE((a + b) - b == a);
  }
}

TEST_CASE("substitution composes") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const MPoly p = random_poly(rng, 4, {Var::x, Var::y, Var::tau});
    const std::map<Var, MPoly> sigma{{Var::x, random_poly(rng, 2, {Var::y, Var::tau})},
                                     {Var::y, random_poly(rng, 2, {Var::x, Var::mu})}};
    const std::map<Var, MPoly> rho{{Var::x, random_poly(rng, 2, {Var::mu})},
                                   {Var::tau, random_poly(rng, 2, {Var::y, Var::mu})}};
    std::map<Var, MPoly> composed;
    for (const auto& [v, img] : sigma) composed[v] = img.subst(rho);
    for (const auto& [v, img] : rho)
      if (!sigma.count(v)) composed[v] = img;
    REQUIRE(p.subst(sigma).subst(rho) == p.subst(composed));
  }
}

TEST_CASE("exact division") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const MPoly a = random_poly(rng, 3, {Var::x, Var::y, Var::tau});
    const MPoly b = random_poly(rng, 3, {Var::x, Var::y, Var::mu});
    if (b.is_zero()) continue;
    const auto q = (a * b).divide_exact(b);
    REQUIRE(q);
    REQUIRE(*q == a);
  }
  CHECK_FALSE(P("x^2+1").divide_exact(P("x+1")));
  CHECK_FALSE(P("x*y+1").divide_exact(P("x")));
}

TEST_CASE("even_xy_to_uv") {
  CHECK(even_xy_to_uv(P("x + 3*tau*x^2*y^4")) == P("u + 3*tau*u^2*v^2"));
  CHECK_THROWS_AS(even_xy_to_uv(P("x*y")), std::domain_error);
  CHECK(P("x*y^3 + y^2").reflect(Var::y) == P("-x*y^3 + y^2"));
  CHECK(P("x + y^2").has_parity(Var::y, 0));
}

TEST_CASE("factored rational functions") {
  const MPoly& d = base_polynomial(Base::Dxy);
  const FactoredRatFn a = FactoredRatFn::over(x() * d, Base::Dxy, 2);
  CHECK(a.power(Base::Dxy) == 1);
  CHECK(a.numerator() == x());
  // a/b = c/d iff ad - cb = 0
  const FactoredRatFn b(x() * d * d, {3, 0, 0, 0});
  CHECK(a == b);
  CHECK(FactoredRatFn::over(x(), Base::Y) * FactoredRatFn(y()) == FactoredRatFn(x()));
  CHECK((FactoredRatFn::over(1, Base::Y) + FactoredRatFn::over(x(), Base::Y, 2)).to_string() == "(x + y)/(y^2)");
  // d/dx (1/D) = -D_x / D^2
  const FactoredRatFn inv = FactoredRatFn::over(1, Base::Dxy);
  CHECK(inv.diff(Var::x) == FactoredRatFn::over(-d.diff(Var::x), Base::Dxy, 2));
  CHECK(inv.diff(Var::x) * FactoredRatFn(d) + inv * FactoredRatFn(d.diff(Var::x)) == FactoredRatFn());
  CHECK(FactoredRatFn::over(x(), Base::Y).reflect(Var::y) == FactoredRatFn::over(-x(), Base::Y));
  CHECK_THROWS_AS(inv.subst({{Var::tau, MPoly(1)}}), std::domain_error);
  CHECK(FactoredRatFn::over(nu(), Base::Y).subst({{Var::nu, MPoly(2)}}) == FactoredRatFn::over(2, Base::Y));
  CHECK(base_polynomial(Base::Duv) == even_xy_to_uv(d));
}
