#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qes/rep/spaces.hpp"
#include "qes/spectral/upoly.hpp"

namespace qes::spectral {

using exact::MPoly;
using rep::Bindings;
using rep::PolyMatrix;
using rep::RatMatrix;

// det(E - M) with coefficients in Q[params]; coeffs[i] multiplies E^i and
// the polynomial is monic of degree dim M.
struct CharPoly {
  std::vector<MPoly> coeffs;
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  UPoly specialize(const Bindings& bindings) const;
  std::string to_string() const;
  friend CharPoly operator*(const CharPoly& a, const CharPoly& b);
  friend bool operator==(const CharPoly& a, const CharPoly& b) { return a.coeffs == b.coeffs; }
};

// Monic polynomial from coefficient strings, lowest degree first.
CharPoly char_poly_from_strings(const std::vector<std::string>& coeffs);

// Berkowitz: division-free, exact over any commutative ring.
CharPoly char_poly(const PolyMatrix& m);
UPoly char_poly(const RatMatrix& m);

// Largest k with factor^k dividing p; the factor must be monic in E.
unsigned factor_multiplicity(const CharPoly& p, const CharPoly& factor);

// a + s * sqrt(d), with d a non-square rational or zero; s is +1 or -1.
struct ExactRoot {
  BigRat a;
  BigRat d;
  int sign = 1;
  bool rational() const { return d == 0; }
  std::string to_string() const;
};

struct Root {
  std::complex<double> value;
  unsigned multiplicity = 1;
  std::optional<ExactRoot> exact;
  // |p(E)| relative to sum |c_i| |E|^i for the squarefree factor.
  double residual = 0;
};

struct RootFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All roots with multiplicity. Multiplicities come from the exact squarefree
// decomposition; each squarefree factor is solved by Aberth iteration from a
// deterministic initial ring and Newton-polished. Rational roots and roots
// of rational quadratic factors are identified and certified exactly.
// Roots are ordered by real part, then imaginary part.
std::vector<Root> numeric_roots(const UPoly& p);
std::vector<Root> numeric_roots(const CharPoly& p, const Bindings& bindings);

struct Eigenpair {
  Root eigenvalue;
  // Exact basis of the eigenspace when the eigenvalue is rational.
  std::vector<std::vector<BigRat>> exact_vectors;
  // Orthonormal numeric basis of the eigenspace otherwise.
  std::vector<std::vector<std::complex<double>>> numeric_vectors;
  std::size_t geometric_multiplicity() const {
    return exact_vectors.empty() ? numeric_vectors.size() : exact_vectors.size();
  }
  // max over basis vectors of |(M - E) w| / |w|
  double residual = 0;
};

std::vector<Eigenpair> eigenpairs(const RatMatrix& m);

enum class ModelKind { A2, G2, A2_lambda_third };

struct GaugeFactor {
  std::string base;  // "D", "Dt" or "v"
  MPoly exponent;
};

struct EigenfunctionDescriptor {
  ModelKind model;
  unsigned n = 0;
  // Exact polynomial part, or float coefficients over the basis labels.
  std::optional<MPoly> polynomial;
  std::vector<std::complex<double>> coefficients;
  std::vector<std::string> basis_labels;
  std::vector<GaugeFactor> factors;
  std::optional<BigRat> kappa;
  std::string to_string() const;
};

// Psi = P * D^{-n/6} (A2); Q * v^{3 lambda/2} Dt^{(nu - lambda)/2} with
// nu = -n/3 (G2); Q * v^{1/2} Dt^{-(n+1)/6} with kappa = (n+1)(n+4)/9 for
// the A2 branch at lambda = 1/3.
EigenfunctionDescriptor assemble_eigenfunction(const Eigenpair& pair, std::size_t vector_index, ModelKind model,
                                               unsigned n, const MPoly& lambda = MPoly());

}  // namespace qes::spectral
