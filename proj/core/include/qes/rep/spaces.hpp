#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qes/models/identities.hpp"
#include "qes/rep/matrix.hpp"

namespace qes::rep {

using exact::Monomial;
using exact::Var;
using weyl::Chart;
using weyl::DiffOp;

using Bindings = std::map<Var, MPoly>;

// P_n: x^p y^q with p + q <= n (chart XY). Q_n: u^p v^q with p + 2q <= n
// (chart UV). Ordered by (weighted) degree ascending, then by the power of
// the first variable descending.
class MonomialBasis {
 public:
  static MonomialBasis P(unsigned n);
  static MonomialBasis Q(unsigned n);

  Chart chart() const { return chart_; }
  unsigned n() const { return n_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  std::optional<std::size_t> index_of(Monomial m) const;
  // Weight of a chart monomial: p + q for P, p + 2q for Q.
  unsigned weight(Monomial m) const;
  std::vector<std::string> labels() const;

 private:
  MonomialBasis(Chart chart, unsigned n);
  Chart chart_;
  unsigned n_;
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, std::size_t> index_;
};

// nu = -n/3, the quasi-exact-solvability condition.
Bindings qes_binding(unsigned n);

struct Leakage {
  std::size_t basis_index;
  // Terms of the image outside the span.
  MPoly overflow;
};

struct InvarianceResult {
  bool invariant = true;
  std::vector<Leakage> leakage;
};

InvarianceResult invariance_check(const DiffOp& op, const MonomialBasis& basis, const Bindings& bindings = {});

struct NotInvariant : std::domain_error {
  using std::domain_error::domain_error;
};

// Column j holds the coordinates of op(basis_j); entries are polynomials in
// the unbound parameters. Throws NotInvariant.
PolyMatrix matrix_of(const DiffOp& op, const MonomialBasis& basis, const Bindings& bindings = {});

// Entries with every parameter bound; throws std::domain_error otherwise.
RatMatrix specialize(const PolyMatrix& m, const Bindings& bindings);

// [h, i_par^(n)] applied to every basis monomial, h = h(x, y) on P_n or
// h_G2(u, v) on Q_n with nu = -n/3 and lambda symbolic.
models::VerificationReport particular_integral_check(unsigned n, Chart chart);

// Coupling of the quasi-exactly-solvable sector: n(n + 3)/9.
BigRat kappa(unsigned n);

}  // namespace qes::rep
