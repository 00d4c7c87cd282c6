#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json_out.hpp"

namespace qes::cli {

enum ExitCode : int {
  kOk = 0,
  kExactFail = 1,
  kConfigError = 2,
  kNumericFailure = 3,
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Result {
  json report;
  int exit_code = kOk;
};

struct VerifyConfig {
  std::vector<std::string> identities;  // empty: all
  // PassWithDiscrepancies is accepted only for these identities.
  std::vector<std::string> allowed_discrepancies;
  bool include_particular_integrals = true;
};
std::vector<std::string> default_allowed_discrepancies();
Result run_verify(const VerifyConfig& c, const JsonStyle& s);

struct SpectrumConfig {
  std::string model = "a2";  // a2 | g2
  unsigned n = 0;
  std::optional<std::string> tau, mu, lambda;
};
Result run_spectrum(const SpectrumConfig& c, const JsonStyle& s);
Result run_eigenfunctions(const SpectrumConfig& c, const JsonStyle& s);

struct CrosscheckConfig {
  std::string lattice_path;
  std::vector<std::string> checks;  // empty: all
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
};
Result run_crosscheck(const CrosscheckConfig& c, const JsonStyle& s);

struct DiscoverConfig {
  std::size_t bindings = 5;
  std::uint64_t seed = 1;
  bool km = true;
  std::string lambda = "1/3", nu = "0", tau = "2/5", mu = "-3/7";
  unsigned km_order = 5;
  std::optional<unsigned> km_degree;
};
Result run_discover(const DiscoverConfig& c, const JsonStyle& s);

}  // namespace qes::cli
