#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qes/models/catalog.hpp"

namespace qes::models {

enum class IdentityId {
  gauge_A2,
  z2_symmetry,
  sqrtD_general,
  sqrtD_rational,
  sqrtD_trig,
  selfsimilarity,
  k_parity,
  k_commutes,
  k_sl3_form,
  ksq_uv_commutes,
  g2_gauge,
  g2_add_form,
  h_sl3_form,
  h_uv_form,
  metric_determinant,
};

enum class Status { ExactPass, ExactFail, PassWithDiscrepancies };

std::string_view status_name(Status s);

struct Discrepancy {
  std::string location;
  std::string stated;
  std::string verified;
};

struct VerificationReport {
  std::string identity;
  Status status = Status::ExactFail;
  // Residual operator of the identity as stated, empty on an exact pass.
  std::vector<weyl::SerializedTerm> residual_terms;
  std::vector<std::string> notes;
  std::vector<Discrepancy> discrepancies;
  double seconds = 0;
};

struct VerifyOptions {
  // gauge_A2 only: E0 is replaced by E0 + e0_shift.
  BigRat e0_shift = 0;
};

std::string_view identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);
const std::vector<IdentityId>& all_identities();

// Failures are data: never throws for a failed identity.
VerificationReport verify_identity(IdentityId id, const VerifyOptions& options = {});

// Exact intermediate results shared with the spectral and acceptance code.

// D^{-1/2} o Delta_g o D^{1/2} applied to 1, i.e. Delta_g(D^{1/2}) / D^{1/2}.
MPoly sqrtD_eigencoefficient();

struct SelfSimilarity {
  bool polynomial = false;
  // T = D^{-m} o h_nu o D^{m}, m = 1/2 - nu.
  DiffOp conjugated;
  MPoly nu_prime;
  // T - h_{nu'}; a parameter-only polynomial when the property holds.
  MPoly shift;
  bool shift_is_constant = false;
};
SelfSimilarity self_similarity();

}  // namespace qes::models
