#include <cmath>

#include "doctest.h"
#include "qes/exact/parse.hpp"
#include "qes/models/catalog.hpp"
#include "qes/spectral/spectral.hpp"

using namespace qes::exact;
using namespace qes::rep;
using namespace qes::spectral;

namespace {

MPoly P(const char* s) { return parse_poly(s); }

PolyMatrix h_on_p(unsigned n) { return matrix_of(qes::models::h_xy(), MonomialBasis::P(n), qes_binding(n)); }

// det(lambda I - M) by fraction-free elimination, split by powers of lambda.
std::vector<MPoly> det_oracle(const PolyMatrix& m) {
  PolyMatrix a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = (i == j ? MPoly::variable(Var::lambda) : MPoly()) - m(i, j);
  const MPoly d = determinant(a);
  std::vector<MPoly> out(m.rows() + 1);
  for (const auto& [mono, c] : d.collect(mask(Var::lambda))) out[mono.exponent(Var::lambda)] += c;
  return out;
}

}  // namespace

TEST_CASE("Berkowitz agrees with elimination") {
  for (unsigned n = 1; n <= 2; ++n) {
    const PolyMatrix m = h_on_p(n);
    CHECK(char_poly(m).coeffs == det_oracle(m));
  }
}

TEST_CASE("n = 1 and n = 2 characteristic polynomials") {
  const CharPoly c1 = char_poly(h_on_p(1));
  CHECK(c1.degree() == 3);
  CHECK(c1.coeffs[0].is_zero());  // zero is an eigenvalue: the kernel is nontrivial
  const CharPoly q = char_poly_from_strings({"4*mu", "4*tau"});
  const CharPoly c2 = char_poly(h_on_p(2));
  CHECK(c2 == q * q * q);
  CHECK(factor_multiplicity(c2, q) == 3);
}

TEST_CASE("n = 1: h vanishes on P_1") {
  const PolyMatrix m = h_on_p(1);
  CHECK(m.is_zero());
  CHECK(kernel(m).size() == 3);
}

TEST_CASE("n = 2: no zero modes for generic parameters") {
  CHECK(kernel(h_on_p(2)).empty());
  // det M = det(0 - M) = constant term of det(E - M) = (4 mu)^3.
  CHECK(determinant(h_on_p(2)) == P("64*mu^3"));
}

TEST_CASE("roots with multiplicities and exact forms") {
  // (E - 1)^2 (E^2 - 5)(E^2 + 4)
  const UPoly p = UPoly::linear(1) * UPoly::linear(1) * UPoly({-5, 0, 1}) * UPoly({4, 0, 1});
  const auto roots = numeric_roots(p);
  unsigned total = 0;
  for (const auto& r : roots) total += r.multiplicity;
  CHECK(total == 6);
  bool one = false, root5 = false, twoi = false;
  for (const auto& r : roots) {
    REQUIRE(r.exact.has_value());
    CHECK(r.residual < 1e-12);
    if (r.exact->rational()) {
      one = r.exact->a == 1 && r.multiplicity == 2;
      CHECK(std::abs(r.value - 1.0) < 1e-14);
    } else if (r.exact->d == 5) {
      root5 = true;
      CHECK(std::abs(std::abs(r.value.real()) - std::sqrt(5.0)) < 1e-13);
    } else if (r.exact->d == -4) {
      twoi = true;
      CHECK(std::abs(std::abs(r.value.imag()) - 2.0) < 1e-13);
    }
  }
  CHECK(one);
  CHECK(root5);
  CHECK(twoi);
  const auto sf = squarefree_decomposition(p);
  REQUIRE(sf.size() == 2);
  CHECK(sf[0].second == 1);
  CHECK(sf[1] == std::make_pair(UPoly::linear(1), 2u));
}

TEST_CASE("n = 2 spectrum at sample parameters") {
  const CharPoly c2 = char_poly(h_on_p(2));
  // tau = 1, mu = 0: (E^2 + 4E)^3.
  const auto r = numeric_roots(c2, {{Var::tau, MPoly(1)}, {Var::mu, MPoly(0)}});
  REQUIRE(r.size() == 2);
  CHECK(r[0].exact->a == -4);
  CHECK(r[0].multiplicity == 3);
  CHECK(r[1].exact->a == 0);
  // mu = tau^2: a single root -2 tau of multiplicity 6.
  const auto d = numeric_roots(c2, {{Var::tau, MPoly(3)}, {Var::mu, MPoly(9)}});
  REQUIRE(d.size() == 1);
  CHECK(d[0].multiplicity == 6);
  CHECK(d[0].exact->a == -6);
}

TEST_CASE("eigenpairs and eigenfunction descriptors") {
  const RatMatrix m = specialize(h_on_p(2), {{Var::tau, MPoly(1)}, {Var::mu, MPoly(0)}});
  const auto pairs = eigenpairs(m);
  REQUIRE(pairs.size() == 2);
  for (const auto& e : pairs) {
    CHECK(e.geometric_multiplicity() == 3);
    CHECK(e.residual == 0);
    for (const auto& v : e.exact_vectors) {
      // Independent check of M v = E v.
      for (std::size_t i = 0; i < m.rows(); ++i) {
        BigRat s = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        CHECK(s == BigRat(e.eigenvalue.exact->a * v[i]));
      }
    }
  }
  const auto desc = assemble_eigenfunction(pairs[0], 0, ModelKind::A2, 2);
  REQUIRE(desc.factors.size() == 1);
  CHECK(desc.factors[0].base == "D");
  CHECK(desc.factors[0].exponent == P("-1/3"));
  CHECK(desc.kappa == make_rational(10, 9));
}
