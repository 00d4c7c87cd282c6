#include "json_out.hpp"

#include <cmath>

namespace qes::cli {

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(std::complex<double> z) { return json::array({finite_or_null(z.real()), finite_or_null(z.imag())}); }

json to_json(const weyl::DiffOp& op) {
  json terms = json::array();
  for (const auto& t : op.serialize()) terms.push_back({{"a", t.a}, {"b", t.b}, {"coefficient", t.coefficient}});
  return {{"chart", std::string(weyl::chart_name(op.chart()))}, {"order", op.order()}, {"terms", terms}};
}

json to_json(const rep::Bindings& b) {
  json out = json::object();
  for (const auto& [v, p] : b) out[std::string(exact::name(v))] = p.to_string();
  return out;
}

json to_json(const models::VerificationReport& r, const JsonStyle& s) {
  json residual = json::array();
  for (const auto& t : r.residual_terms) residual.push_back({{"a", t.a}, {"b", t.b}, {"coefficient", t.coefficient}});
  json disc = json::array();
  for (const auto& d : r.discrepancies) disc.push_back({{"location", d.location}, {"stated", d.stated}, {"verified", d.verified}});
  json out = {{"identity", r.identity},
              {"status", std::string(models::status_name(r.status))},
              {"residual_terms", residual},
              {"discrepancies", disc},
              {"notes", r.notes}};
  if (s.timings) out["seconds"] = r.seconds;
  return out;
}

json to_json(const spectral::Root& r) {
  json out = {{"value", to_json(r.value)}, {"multiplicity", r.multiplicity}, {"residual", finite_or_null(r.residual)}};
  out["exact"] = r.exact ? json(r.exact->to_string()) : json(nullptr);
  return out;
}

json to_json(const spectral::EigenfunctionDescriptor& d) {
  json factors = json::array();
  for (const auto& f : d.factors) factors.push_back({{"base", f.base}, {"exponent", f.exponent.to_string()}});
  json coeffs = json::array();
  for (const auto& c : d.coefficients) coeffs.push_back(to_json(c));
  return {{"n", d.n},
          {"polynomial", d.polynomial ? json(d.polynomial->to_string()) : json(nullptr)},
          {"coefficients", coeffs},
          {"basis", d.basis_labels},
          {"gauge_factors", factors},
          {"kappa", d.kappa ? json(exact::to_string(*d.kappa)) : json(nullptr)},
          {"expression", d.to_string()}};
}

json to_json(const elliptic::NumericCheckReport& r, const JsonStyle& s) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"index", f.index},
                        {"y1", to_json(f.point.y1)},
                        {"y2", to_json(f.point.y2)},
                        {"rel_error", finite_or_null(f.rel_error)},
                        {"reason", f.reason}});
  json stats = json::object();
  for (const auto& [k, v] : r.stats) stats[k] = finite_or_null(v);
  json out = {{"check", r.check},
              {"samples", r.samples},
              {"max_rel_error", finite_or_null(r.max_rel_error)},
              {"tolerance", r.tolerance},
              {"passed", r.passed ? json(*r.passed) : json(nullptr)},
              {"failures", failures},
              {"notes", r.notes},
              {"stats", stats}};
  if (s.timings) out["seconds"] = r.seconds;
  return out;
}

json to_json(const discovery::MembershipCheck& m, const JsonStyle& s) {
  json out = {{"bindings", to_json(m.bindings)},
              {"nullspace_dim", m.nullspace_dim},
              {"quotient_dim", m.quotient_dim},
              {"k_member", m.member},
              {"k_as_printed_member", m.printed_member},
              {"verified", m.verified}};
  if (s.timings) out["seconds"] = m.seconds;
  return out;
}

json to_json(const discovery::KmReport& r, const JsonStyle& s) {
  json out = {{"bindings", to_json(r.bindings)},
              {"max_order", r.spec.max_order},
              {"max_degree", r.spec.max_degree},
              {"unknowns", r.unknowns},
              {"equations", r.equations},
              {"rank", r.rank},
              {"augmented_rank", r.augmented_rank},
              {"solvable", r.solvable},
              {"verified", r.verified},
              {"uncorrected_residual_terms", r.uncorrected_residual_terms},
              {"notes", r.notes}};
  out["solution"] = r.solution ? to_json(*r.solution) : json(nullptr);
  if (s.timings) out["seconds"] = r.seconds;
  return out;
}

}  // namespace qes::cli
