#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qes/models/catalog.hpp"

namespace qes::models {

struct WordCorrection {
  std::size_t word_index;                // position in the printed list
  std::vector<std::string> printed_letters;
  std::vector<std::string> corrected_letters;
  MPoly printed_coefficient;
  MPoly corrected_coefficient;
  std::string describe() const;
};

struct CorrectionSearch {
  bool found = false;
  // Fewest word edits that make the expansion equal the target exactly.
  std::vector<WordCorrection> corrections;
  // Number of minimal edit sets consistent at the sample point.
  std::size_t minimal_sets = 0;
  // Residual target - expansion of the printed words (over-order words kept).
  DiffOp printed_residual;
  std::string failure;
};

// Searches for the smallest set of edits to a generator form so that it
// expands to `target`. An edit either changes one coefficient or, for a word
// whose expansion exceeds the target order, drops one letter. Supports are
// screened modulo a prime at a seeded random parameter point, and the
// corrected coefficients are then solved exactly over Q[tau, mu, nu] and
// re-verified.
CorrectionSearch find_minimal_corrections(const std::vector<GeneratorWord>& words, Algebra algebra,
                                          const DiffOp& target, unsigned max_edits = 4,
                                          std::uint64_t seed = 1);

}  // namespace qes::models
