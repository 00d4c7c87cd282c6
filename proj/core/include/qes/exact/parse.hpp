#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "qes/exact/mpoly.hpp"

namespace qes::exact {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), offset(pos) {}
  std::size_t offset;
};

// Grammar: sums and products of integers, variable names (x y u v tau mu nu
// lambda), parentheses and non-negative integer powers. Division is allowed
// only by nonzero constants.
MPoly parse_poly(std::string_view text);

}  // namespace qes::exact
