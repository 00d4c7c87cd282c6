#pragma once

#include <complex>

#include "json.hpp"
#include "qes/discovery/commutant.hpp"
#include "qes/elliptic/checks.hpp"
#include "qes/models/identities.hpp"
#include "qes/spectral/spectral.hpp"

namespace qes::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Wall-clock fields are emitted only when requested, so that default output
// is byte-identical across runs.
struct JsonStyle {
  bool timings = false;
};

json to_json(std::complex<double> z);
json to_json(const weyl::DiffOp& op);
json to_json(const rep::Bindings& b);
json to_json(const models::VerificationReport& r, const JsonStyle& s);
json to_json(const spectral::Root& r);
json to_json(const spectral::EigenfunctionDescriptor& d);
json to_json(const elliptic::NumericCheckReport& r, const JsonStyle& s);
json to_json(const discovery::MembershipCheck& m, const JsonStyle& s);
json to_json(const discovery::KmReport& r, const JsonStyle& s);

}  // namespace qes::cli
