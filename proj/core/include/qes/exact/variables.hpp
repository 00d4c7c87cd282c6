#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace qes::exact {

// Fixed variable universe. The order here is the lexicographic order used
// by every canonical form: x > y > u > v > tau > mu > nu > lambda.
enum class Var : std::uint8_t { x = 0, y, u, v, tau, mu, nu, lambda };

inline constexpr std::size_t kVarCount = 8;

inline constexpr std::array<std::string_view, kVarCount> kVarNames = {
    "x", "y", "u", "v", "tau", "mu", "nu", "lambda"};

constexpr std::string_view name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

constexpr std::size_t index(Var v) { return static_cast<std::size_t>(v); }

inline std::optional<Var> var_from_name(std::string_view s) {
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (kVarNames[i] == s) return static_cast<Var>(i);
  return std::nullopt;
}

// Bit set over the universe, bit i <-> Var(i).
using VarMask = std::uint8_t;

constexpr VarMask mask(Var v) { return static_cast<VarMask>(1u << index(v)); }

inline constexpr VarMask kParamMask =
    mask(Var::tau) | mask(Var::mu) | mask(Var::nu) | mask(Var::lambda);

}  // namespace qes::exact
