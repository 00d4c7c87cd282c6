#include "doctest.h"
#include "qes/discovery/commutant.hpp"
#include "qes/discovery/modular.hpp"
#include "qes/models/catalog.hpp"
#include "qes/util/parallel.hpp"

#include <random>

using namespace qes::discovery;
using namespace qes::exact;
using qes::weyl::DiffOp;

namespace {

// Gaussian elimination with modular inverses by Fermat, no Montgomery form.
std::vector<std::size_t> naive_rref(std::vector<std::vector<std::uint64_t>>& a, std::size_t ncols, const Zp& f) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t s = r;
    while (s < a.size() && a[s][c] == 0) ++s;
    if (s == a.size()) continue;
    std::swap(a[r], a[s]);
    const auto inv = f.inv(a[r][c]);
    for (auto& e : a[r]) e = f.mul(e, inv);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i != r && a[i][c]) {
        const auto m = a[i][c];
        for (std::size_t j = 0; j < ncols; ++j) a[i][j] = f.sub(a[i][j], f.mul(m, a[r][j]));
      }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

Bindings generic() { return random_bindings(11, {Var::tau, Var::mu, Var::nu}); }

}  // namespace

TEST_CASE("modular rref agrees with naive elimination") {
  const Zp f(large_primes().front());
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 3 + g() % 8, cols = 3 + g() % 8;
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
    for (auto& row : a)
      for (auto& e : row) e = (g() % 3 == 0) ? 0 : g() % f.prime();
    // Force a dependent row.
    if (rows > 2)
      for (std::size_t j = 0; j < cols; ++j) a[rows - 1][j] = f.add(a[0][j], f.mul(3, a[1][j]));
    auto b = a;
    const auto p1 = rref_mod(a, cols, f);
    const auto p2 = naive_rref(b, cols, f);
    CHECK(p1 == p2);
    for (std::size_t i = 0; i < p1.size(); ++i) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("rational reconstruction") {
  const BigInt m = BigInt(static_cast<unsigned long>(large_primes()[0])) * BigInt(static_cast<unsigned long>(large_primes()[1]));
  for (const auto& q : {make_rational(-355, 113), make_rational(7, 1), make_rational(0, 1), make_rational(123456789, 987654)}) {
    const Zp f0(large_primes()[0]), f1(large_primes()[1]);
    const BigInt r0 = static_cast<unsigned long>(*f0.from_rational(q)), r1 = static_cast<unsigned long>(*f1.from_rational(q));
    // x = r0 + p0 * ((r1 - r0) / p0 mod p1)
    const std::uint64_t t = f1.mul(f1.sub(r1.get_ui(), mpz_fdiv_ui(r0.get_mpz_t(), f1.prime())), f1.inv(f0.prime() % f1.prime()));
    const BigInt x = r0 + BigInt(static_cast<unsigned long>(f0.prime())) * BigInt(static_cast<unsigned long>(t));
    const auto back = rational_reconstruct(x, m);
    REQUIRE(back);
    CHECK(*back == q);
  }
}

TEST_CASE("multimodular solve on a small system") {
  // x + 2y = 1/3, 3x + 6y = 1, y - z/7 = 0
  SparseSystem a;
  a.rows = 3;
  a.columns = {{{0, BigRat(1)}, {1, BigRat(3)}}, {{0, BigRat(2)}, {1, BigRat(6)}, {2, BigRat(1)}}, {{2, make_rational(-1, 7)}}};
  const auto s = solve_multimodular(a, {{0, make_rational(1, 3)}, {1, BigRat(1)}});
  REQUIRE(s.consistent);
  CHECK(s.rank == 2);
  REQUIRE(s.nullspace.size() == 1);
  const auto& v = s.nullspace[0];
  CHECK(v[0] + 2 * v[1] == 0);
  CHECK(v[1] * 7 == v[2]);
  const auto& p = *s.particular;
  CHECK(p[0] + 2 * p[1] == make_rational(1, 3));
  CHECK(p[1] * 7 == p[2]);

  const auto bad = solve_multimodular(a, {{0, BigRat(1)}, {1, BigRat(1)}});
  CHECK_FALSE(bad.consistent);
  CHECK(bad.augmented_rank == bad.rank + 1);
}

TEST_CASE("commutant at low order") {
  const auto h = qes::models::h_xy();
  AnsatzSpec s;
  s.bindings = generic();
  s.max_order = 0;
  s.max_degree = {0};
  const auto b0 = commutant_solve(h, s);
  CHECK(b0.nullspace_dim == 1);
  CHECK(b0.quotient_dim == 0);

  s.max_order = 2;
  s.max_degree = {};
  const auto b2 = commutant_solve(h, s);
  CHECK(b2.nullspace_dim == 2);
  CHECK(b2.trivial == std::vector<std::string>{"I", "h"});
  CHECK(b2.verified);
  CHECK(in_span(b2, h.subst(s.bindings)));
  CHECK_FALSE(in_span(b2, qes::models::k_a2_xy().subst(s.bindings)));
}

TEST_CASE("commutant is invariant under rescaling and shifting h") {
  AnsatzSpec s;
  s.bindings = generic();
  const auto h = qes::models::h_xy().subst(s.bindings);
  const auto a = commutant_solve(h, s);
  const auto b = commutant_solve(make_rational(-5, 3) * h + DiffOp::identity(h.chart()) * BigRat(4), s);
  CHECK(a.nullspace_dim == b.nullspace_dim);
  CHECK(a.quotient_dim == 1);
  for (const auto& m : a.members) CHECK(in_span(b, m));
}

TEST_CASE("ansatz size cap") {
  AnsatzSpec s;
  s.bindings = generic();
  s.max_unknowns = 10;
  CHECK_THROWS_AS(commutant_solve(qes::models::h_xy(), s), AnsatzTooLarge);
  CHECK(unknown_count(AnsatzSpec{}) == 285);
}

TEST_CASE("integral membership at random rational points") {
  const auto checks = k_membership_checks(3, 2024);
  for (const auto& c : checks) {
    CHECK(c.verified);
    CHECK(c.nullspace_dim == 3);
    CHECK(c.quotient_dim == 1);
    CHECK(c.member);
    CHECK_FALSE(c.printed_member);
  }
}

TEST_CASE("membership is independent of thread count") {
  qes::util::set_thread_count(1);
  const auto a = k_membership_checks(2, 7);
  qes::util::set_thread_count(3);
  const auto b = k_membership_checks(2, 7);
  qes::util::set_thread_count(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].bindings == b[i].bindings);
    CHECK(a[i].nullspace_dim == b[i].nullspace_dim);
    CHECK(a[i].member == b[i].member);
  }
}

TEST_CASE("K_m search") {
  const BigRat tau = make_rational(2, 5), mu = make_rational(-3, 7);
  const auto zero = find_km(0, 0, tau, mu);
  CHECK(zero.solvable);
  CHECK(zero.uncorrected_residual_terms == 0);
  CHECK(zero.solution->is_zero());

  const auto constant = find_km(make_rational(1, 3), 0, tau, mu, 5, 0u);
  CHECK_FALSE(constant.solvable);
  CHECK(constant.augmented_rank == constant.rank + 1);
  CHECK(constant.uncorrected_residual_terms > 0);

  const auto r = find_km(make_rational(1, 3), 0, tau, mu);
  CHECK(r.unknowns == 840);
  REQUIRE(r.solvable);
  CHECK(r.verified);
  CHECK(r.solution->order() == 5);
}
