#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qes/weyl/diffop.hpp"

namespace qes::models {

using exact::BigRat;
using exact::FactoredRatFn;
using exact::MPoly;
using weyl::Chart;
using weyl::DiffOp;

enum class ModelTag {
  V_A2,
  Det_D,
  LaplaceBeltrami,
  H_alg_XY,
  H_alg_UV,
  Sl3Gen,
  H_from_sl3,
  K_A2_XY,
  K_from_sl3,
  G2Gen,
  H_m_UV,
  H_G2_UV,
  IparXY,
  IparUV,
  E0_scalar,
  G2PotentialNumerator,
};

struct ModelId {
  ModelTag tag;
  int index = 0;          // Sl3Gen: 1..8
  std::string generator;  // G2Gen: J0 J1 J2 J3 J4 R0 R1 R2 T0 T1 T2
};

struct UnknownModel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using Built = std::variant<DiffOp, MPoly, FactoredRatFn>;

// Dispatches on the tag; `n` is required for IparXY and IparUV.
Built build(const ModelId& id, std::optional<int> n = std::nullopt);

// D(x, y), the metric determinant.
MPoly det_D();
// D(u, v).
MPoly det_D_uv();
// x + 2 tau x^2 + mu x^3 - 6(mu - tau^2) y^2 + 3 mu tau x y^2
MPoly potential_numerator_xy();
// Same numerator in (u, v).
MPoly potential_numerator_uv();
// 3 nu (nu - 1)/4 * N^2 / D
FactoredRatFn potential_V();
// 3 nu (3 nu + 1) tau
MPoly e0();

DiffOp laplace_beltrami();
DiffOp laplace_beltrami_uv();

DiffOp h_xy();
DiffOp h_uv();
// h_xy with nu -> nu_value (any polynomial in the parameters).
DiffOp h_xy_at(const MPoly& nu_value);

// J_1 .. J_8 with the representation parameter nu kept symbolic.
DiffOp sl3_generator(int i);

// Third-order integral with the corrected zero-order sign; see k_a2_xy_as_printed.
DiffOp k_a2_xy();
// The zero-order term exactly as printed, for the discrepancy report.
DiffOp k_a2_xy_as_printed();

// g^(2) generators in the UV chart; `n` may be symbolic (n = -3 nu in the
// hidden-algebra form of h(u, v)).
DiffOp g2_generator(std::string_view name, const MPoly& n);

DiffOp h_m_uv();
// h(u, v) + lambda h_m(u, v)
DiffOp h_g2_uv();

// prod_{j=0..n} (J0(n) + j) with J0(n) = x d_x + y d_y - n.
DiffOp ipar_xy(int n);
// prod_{j=0..n} (J0(n) + j) with J0(n) = u d_u + 2 v d_v - n.
DiffOp ipar_uv(int n);

// One word of a hidden-algebra expansion: coefficient times an ordered
// product of generators.
struct GeneratorWord {
  MPoly coefficient;
  std::vector<std::string> letters;  // e.g. {"J3", "J4", "J6"}
  std::string to_string() const;
};

enum class Algebra { sl3, g2 };

struct UnknownGenerator : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Ordered product of the letters; throws UnknownGenerator. For g2 the
// representation parameter is n = -3 nu.
DiffOp expand_word(const std::vector<std::string>& letters, Algebra algebra);
DiffOp expand_generator_form(const std::vector<GeneratorWord>& words, Algebra algebra);

// h(x, y) written in sl(3) generators.
std::vector<GeneratorWord> h_sl3_words();
// k in sl(3) generators as printed. The coefficient of J7 J3 J8 is
// malformed in print and is set to zero here; the correction search
// recovers it. The word J3^3 J5 is kept as printed.
std::vector<GeneratorWord> k_sl3_words_as_printed();
// h_m in g^(2) generators as printed (constant term included as a word
// with no letters).
std::vector<GeneratorWord> h_m_g2_words_as_printed();
// The consistent reading: 12 tau J2 and constant -18 tau nu.
std::vector<GeneratorWord> h_m_g2_words_consistent();

}  // namespace qes::models
