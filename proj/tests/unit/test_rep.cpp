#include "doctest.h"
#include "qes/exact/parse.hpp"
#include "qes/models/catalog.hpp"
#include "qes/rep/spaces.hpp"

using namespace qes::exact;
using namespace qes::rep;
using qes::weyl::DiffOp;

namespace {

MPoly P(const char* s) { return parse_poly(s); }

// Brute-force count of u^p v^q with p + 2q <= n.
std::size_t q_dim(unsigned n) {
  std::size_t c = 0;
  for (unsigned p = 0; p <= n; ++p)
    for (unsigned q = 0; p + 2 * q <= n; ++q) ++c;
  return c;
}

}  // namespace

TEST_CASE("monomial bases") {
  for (unsigned n = 0; n <= 6; ++n) {
    CHECK(MonomialBasis::P(n).size() == (n + 1) * (n + 2) / 2);
    CHECK(MonomialBasis::Q(n).size() == q_dim(n));
  }
  const auto b = MonomialBasis::P(2);
  CHECK(b.labels() == std::vector<std::string>{"1", "x", "y", "x^2", "x*y", "y^2"});
  CHECK(b.index_of(Monomial::of(Var::y)) == 2);
  CHECK_FALSE(b.index_of(Monomial::of(Var::x, 3)).has_value());
  CHECK(MonomialBasis::Q(3).labels() == std::vector<std::string>{"1", "u", "u^2", "v", "u^3", "u*v"});
}

TEST_CASE("P_n invariance at the quantized coupling") {
  for (unsigned n = 0; n <= 3; ++n) CHECK(invariance_check(qes::models::h_xy(), MonomialBasis::P(n), qes_binding(n)).invariant);
  const auto off = invariance_check(qes::models::h_xy(), MonomialBasis::P(2), {{Var::nu, MPoly(1)}});
  CHECK_FALSE(off.invariant);
  CHECK_FALSE(off.leakage.empty());
  CHECK_THROWS_AS(matrix_of(qes::models::h_xy(), MonomialBasis::P(2), {{Var::nu, MPoly(1)}}), NotInvariant);
}

TEST_CASE("matrix columns are images of basis monomials") {
  const auto basis = MonomialBasis::P(2);
  const Bindings b = qes_binding(2);
  const DiffOp h = qes::models::h_xy().subst(b);
  const PolyMatrix m = matrix_of(qes::models::h_xy(), basis, b);
  const VarMask xy = static_cast<VarMask>(mask(Var::x) | mask(Var::y));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const MPoly img = apply(h, FactoredRatFn(MPoly::monomial(basis[j]))).as_polynomial().value();
    MPoly rebuilt;
    for (std::size_t i = 0; i < basis.size(); ++i) rebuilt += m(i, j) * MPoly::monomial(basis[i]);
    CHECK(rebuilt == img);
    for (const auto& [mono, c] : img.collect(xy)) CHECK(basis.index_of(mono).has_value());
  }
  // h(1) = 3 nu (1 + 3 nu) mu (2x - 3 mu y^2) = 4 mu x - 6 mu^2 y^2 at nu = -2/3.
  CHECK(m(1, 0) == P("4*mu"));
  CHECK(m(5, 0) == P("-6*mu^2"));
}

TEST_CASE("exact linear algebra") {
  RatMatrix a(3, 3);
  const long v[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = v[i][j];
  CHECK(determinant(a) == 4);
  CHECK(rank(a) == 3);
  CHECK(kernel(a).empty());

  RatMatrix s(2, 3);
  s(0, 0) = 1;
  s(0, 1) = make_rational(1, 2);
  s(0, 2) = 3;
  s(1, 0) = 2;
  s(1, 1) = 1;
  s(1, 2) = 6;
  CHECK(rank(s) == 1);
  const auto k = kernel(s);
  REQUIRE(k.size() == 2);
  for (const auto& vec : k) CHECK(s(0, 0) * vec[0] + s(0, 1) * vec[1] + s(0, 2) * vec[2] == 0);

  PolyMatrix p(2, 2);
  p(0, 0) = P("tau");
  p(0, 1) = P("mu");
  p(1, 0) = P("1");
  p(1, 1) = P("tau");
  CHECK(determinant(p) == P("tau^2 - mu"));
  CHECK(kappa(2) == make_rational(10, 9));
}

TEST_CASE("particular integral annihilates P_n and Q_n") {
  for (unsigned n = 0; n <= 2; ++n) {
    CHECK(particular_integral_check(n, qes::weyl::Chart::XY).status == qes::models::Status::ExactPass);
    CHECK(particular_integral_check(n, qes::weyl::Chart::UV).status == qes::models::Status::ExactPass);
  }
}
