#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qes/exact/ratfn.hpp"

namespace qes::weyl {

using exact::BigInt;
using exact::BigRat;
using exact::FactoredRatFn;
using exact::MPoly;
using exact::Var;

enum class Chart { XY, UV };

std::string_view chart_name(Chart c);
// First and second differential variables of the chart.
Var first_var(Chart c);
Var second_var(Chart c);

struct ChartMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParityViolation : std::domain_error {
  ParityViolation(const std::string& what, unsigned a, unsigned b)
      : std::domain_error(what), a(a), b(b) {}
  unsigned a, b;
};

// Multi-index (a, b) of d^a/d(first)^a d^b/d(second)^b.
struct Order {
  unsigned a = 0;
  unsigned b = 0;
  unsigned total() const { return a + b; }
  bool operator==(const Order&) const = default;
};

// Canonical order: higher total order first, then higher a.
struct OrderLess {
  bool operator()(const Order& l, const Order& r) const {
    if (l.total() != r.total()) return l.total() > r.total();
    return l.a > r.a;
  }
};

struct SerializedTerm {
  unsigned a, b;
  std::string coefficient;
};

// sum over (a, b) of c_ab * d1^a d2^b, all derivatives to the right.
class DiffOp {
 public:
  using TermMap = std::map<Order, FactoredRatFn, OrderLess>;

  explicit DiffOp(Chart chart = Chart::XY) : chart_(chart) {}
  DiffOp(Chart chart, TermMap terms);

  static DiffOp scalar(Chart chart, FactoredRatFn c);
  static DiffOp identity(Chart chart) { return scalar(chart, FactoredRatFn(1)); }
  // c * d1^a d2^b
  static DiffOp term(Chart chart, unsigned a, unsigned b, FactoredRatFn c = FactoredRatFn(1));

  Chart chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Maximal total order; 0 for the zero operator.
  unsigned order() const;
  FactoredRatFn coefficient(unsigned a, unsigned b) const;
  bool has_polynomial_coefficients() const;

  void add_term(unsigned a, unsigned b, const FactoredRatFn& c);

  DiffOp operator-() const;
  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp& operator*=(const BigRat& c);
  // Left multiplication by a function.
  DiffOp& operator*=(const FactoredRatFn& c);

  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const BigRat& c) { return a *= c; }
  friend DiffOp operator*(const BigRat& c, DiffOp a) { return a *= c; }
  friend DiffOp operator*(const FactoredRatFn& c, DiffOp a) { return a *= c; }

  friend bool operator==(const DiffOp& a, const DiffOp& b);

  // Parameter specialization of every coefficient.
  DiffOp subst(const std::map<Var, MPoly>& bindings) const;
  // Maps every coefficient through f; zero results are dropped.
  DiffOp map_coefficients(const std::function<FactoredRatFn(const FactoredRatFn&)>& f) const;

  std::vector<SerializedTerm> serialize() const;
  std::string to_string() const;

 private:
  void check_chart(const DiffOp& o) const;
  Chart chart_;
  TermMap terms_;
};

DiffOp compose(const DiffOp& A, const DiffOp& B);
DiffOp commutator(const DiffOp& A, const DiffOp& B);
// A^k by repeated composition; A^0 is the identity.
DiffOp power(const DiffOp& A, unsigned k);

// Image A(p) of a function.
FactoredRatFn apply(const DiffOp& A, const FactoredRatFn& p);

// base^{-s} o A o base^{s}, with d -> d + s * d(base)/base.
DiffOp conjugate_by_power(const DiffOp& A, exact::Base base, const MPoly& s);

// Operator induced on functions g(x, y^2) through u = x, v = y^2. Throws
// ParityViolation when a coefficient of d_y^b does not have y-parity b mod 2.
DiffOp restrict_to_even(const DiffOp& A);

// y -> -y in the XY chart: coefficient c_ab(x, -y) * (-1)^b.
DiffOp reflect_y(const DiffOp& A);

}  // namespace qes::weyl
