#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qes/exact/monomial.hpp"
#include "qes/exact/rational.hpp"
#include "qes/exact/variables.hpp"

namespace qes::exact {

struct Term {
  Monomial mono;
  BigRat coef;
};

// Sparse multivariate polynomial over Q in the variables of `Var`.
//
// Terms are kept sorted by descending graded-lex order with no zero
// coefficients, so structural equality is polynomial equality and the
// first term is the leading term.
class MPoly {
 public:
  MPoly() = default;
  MPoly(const BigRat& c);  // NOLINT(google-explicit-constructor)
  MPoly(long c);           // NOLINT(google-explicit-constructor)

  static MPoly variable(Var v);
  static MPoly monomial(Monomial m, BigRat c = 1);
  // Accepts unsorted terms with duplicates and zeros.
  static MPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  // Coefficient of the monomial 1.
  BigRat constant_term() const;
  BigRat coefficient(Monomial m) const;

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Term& leading_term() const { return terms_.front(); }

  unsigned degree() const;
  unsigned degree(Var v) const;
  unsigned degree(VarMask m) const;
  // Variables that occur with a nonzero exponent.
  VarMask support() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const BigRat& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const BigRat& c) { return a *= c; }
  friend MPoly operator*(const BigRat& c, MPoly a) { return a *= c; }

  friend bool operator==(const MPoly& a, const MPoly& b);

  MPoly pow(unsigned e) const;

  MPoly diff(Var v, unsigned order = 1) const;

  // Simultaneous substitution; variables without a binding are kept.
  MPoly subst(const std::map<Var, MPoly>& bindings) const;
  MPoly subst(Var v, const MPoly& value) const;

  // Exact quotient when `divisor` divides *this, nullopt otherwise.
  std::optional<MPoly> divide_exact(const MPoly& divisor) const;

  // Groups terms by their exponents in the variables of `m`; each value is
  // the coefficient polynomial in the remaining variables.
  std::map<Monomial, MPoly> collect(VarMask m) const;

  // Same polynomial after y -> -y (sign flips on odd powers of `v`).
  MPoly reflect(Var v) const;
  // True when every term has the given parity in `v`.
  bool has_parity(Var v, unsigned parity) const;

  // Canonical text: terms in descending graded-lex order, integer fractions
  // as coefficients, e.g. "-4*x^3 - 27*y^2".
  std::string to_string() const;

 private:
  void add_scaled(const MPoly& o, int sign);
  std::vector<Term> terms_;
};

MPoly operator*(const MPoly& a, const MPoly& b);

// Convenience handles for writing formulas in code.
namespace vars {
inline MPoly x() { return MPoly::variable(Var::x); }
inline MPoly y() { return MPoly::variable(Var::y); }
inline MPoly u() { return MPoly::variable(Var::u); }
inline MPoly v() { return MPoly::variable(Var::v); }
inline MPoly tau() { return MPoly::variable(Var::tau); }
inline MPoly mu() { return MPoly::variable(Var::mu); }
inline MPoly nu() { return MPoly::variable(Var::nu); }
inline MPoly lambda() { return MPoly::variable(Var::lambda); }
}  // namespace vars

// x -> u and y^(2k) -> v^k. Throws std::domain_error naming the first term
// with an odd power of y.
MPoly even_xy_to_uv(const MPoly& p);

}  // namespace qes::exact
