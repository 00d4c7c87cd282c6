#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qes/rep/spaces.hpp"

namespace qes::discovery {

using exact::BigRat;
using rep::Bindings;
using weyl::Chart;
using weyl::DiffOp;

// K = sum over a + b <= max_order of c_ab d1^a d2^b, c_ab a polynomial in
// the chart variables of degree <= max_degree[a + b].
struct AnsatzSpec {
  Chart chart = Chart::XY;
  unsigned max_order = 3;
  std::vector<unsigned> max_degree;  // empty: default_degrees(max_order)
  Bindings bindings;                 // every parameter of h must be bound
  std::size_t max_unknowns = 4000;
};

// r + 4 for order r: the integral k(x, y) has degree r + 3, plus a margin of one.
std::vector<unsigned> default_degrees(unsigned max_order);
std::size_t unknown_count(const AnsatzSpec& spec);

struct AnsatzTooLarge : std::length_error {
  using std::length_error::length_error;
};

// Exact solution of a sparse rational linear system by elimination modulo
// word-size primes, Chinese remaindering and rational reconstruction. Every
// reconstructed vector is verified over Q before it is returned.
struct SparseSystem {
  std::size_t rows = 0;
  // columns[j] lists (row, value) with nonzero value.
  std::vector<std::vector<std::pair<std::size_t, BigRat>>> columns;
};

struct LinearSolution {
  bool consistent = true;
  std::size_t rank = 0;
  std::size_t augmented_rank = 0;
  std::vector<std::vector<BigRat>> nullspace;
  std::optional<std::vector<BigRat>> particular;  // A x = b, free variables zero
  unsigned primes = 0;
};

// Solves A x = rhs (homogeneous when rhs is empty).
LinearSolution solve_multimodular(const SparseSystem& a, const std::vector<std::pair<std::size_t, BigRat>>& rhs = {});

struct CommutantBasis {
  AnsatzSpec spec;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t nullspace_dim = 0;
  // Members of {I, h, h^2} that fit the ansatz, and the dimension after quotienting by them.
  std::vector<std::string> trivial;
  std::size_t quotient_dim = 0;
  std::vector<DiffOp> members;
  // Each member re-checked by applying [h, K] to monomials.
  bool verified = false;
  unsigned primes = 0;
  double seconds = 0;
};

CommutantBasis commutant_solve(const DiffOp& h, const AnsatzSpec& spec);

// Exact span membership; false when op does not fit the ansatz.
bool in_span(const CommutantBasis& basis, const DiffOp& op);

// [h, K] applied to every chart monomial of degree <= order(h) + order(K) - 1;
// zero on all of them iff the commutator vanishes.
bool commutes_on_monomials(const DiffOp& h, const DiffOp& k);

struct MembershipCheck {
  Bindings bindings;
  std::size_t nullspace_dim = 0;
  std::size_t quotient_dim = 0;
  bool member = false;          // the integral of the catalog
  bool printed_member = false;  // the literally transcribed integral
  bool verified = false;
  double seconds = 0;
};

// k(x, y) membership in the order-3 commutant of h(x, y) at `count` seeded
// random rational (tau, mu, nu); solves run in parallel.
std::vector<MembershipCheck> k_membership_checks(std::size_t count, std::uint64_t seed);
Bindings random_bindings(std::uint64_t seed, const std::vector<exact::Var>& vars);

struct KmReport {
  Bindings bindings;  // lambda, nu, tau, mu
  AnsatzSpec spec;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  std::size_t augmented_rank = 0;
  bool solvable = false;
  std::optional<DiffOp> solution;
  bool verified = false;
  // [h_G2, k^2] with no correction; nonzero whenever lambda != 0.
  std::size_t uncorrected_residual_terms = 0;
  std::vector<std::string> notes;
  double seconds = 0;
};

// Solves [h_G2, k^2 + lambda K] = 0 for K(u, v) of order <= max_order.
// degree_bound overrides every entry of the default degree pattern.
KmReport find_km(const BigRat& lambda, const BigRat& nu, const BigRat& tau, const BigRat& mu, unsigned max_order = 5,
                 std::optional<unsigned> degree_bound = std::nullopt);

}  // namespace qes::discovery
