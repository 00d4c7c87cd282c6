#include "commands.hpp"

#include <algorithm>
#include <fstream>

#include "qes/elliptic/weierstrass.hpp"
#include "qes/exact/parse.hpp"
#include "qes/models/catalog.hpp"
#include "qes/rep/spaces.hpp"
#include "qes/util/parallel.hpp"

namespace qes::cli {

using exact::BigRat;
using exact::MPoly;
using exact::Var;

namespace {

BigRat rational_arg(const std::string& name, const std::string& text) {
  try {
    return exact::parse_rational(text);
  } catch (const std::exception& e) {
    throw ConfigError("--" + name + ": not a rational number: '" + text + "'");
  }
}

struct Model {
  spectral::ModelKind kind;
  weyl::DiffOp op;
  rep::MonomialBasis basis;
  rep::Bindings bindings;  // nu = -n/3 plus whatever the user fixed
  MPoly lambda;
};

Model model_of(const SpectrumConfig& c) {
  if (c.model != "a2" && c.model != "g2") throw ConfigError("--model must be a2 or g2");
  const bool a2 = c.model == "a2";
  if (a2 && c.lambda) throw ConfigError("--lambda applies to the g2 model only");
  Model m{a2 ? spectral::ModelKind::A2 : spectral::ModelKind::G2, a2 ? models::h_xy() : models::h_g2_uv(),
          a2 ? rep::MonomialBasis::P(c.n) : rep::MonomialBasis::Q(c.n), rep::qes_binding(c.n), MPoly::variable(Var::lambda)};
  if (c.tau) m.bindings[Var::tau] = MPoly(rational_arg("tau", *c.tau));
  if (c.mu) m.bindings[Var::mu] = MPoly(rational_arg("mu", *c.mu));
  if (c.lambda) m.lambda = MPoly(rational_arg("lambda", *c.lambda));
  if (!a2) m.bindings[Var::lambda] = m.lambda;
  return m;
}

bool fully_bound(const Model& m) { return m.bindings.contains(Var::tau) && m.bindings.contains(Var::mu) && (m.kind == spectral::ModelKind::A2 || m.bindings.contains(Var::lambda)); }

json config_echo(const SpectrumConfig& c, const Model& m) {
  return {{"model", c.model}, {"n", c.n}, {"bindings", to_json(m.bindings)}, {"basis", m.basis.labels()}};
}

// Constant added to an eigenvalue of the gauge-rotated operator to obtain the
// Schroedinger energy; A2 only.
std::optional<MPoly> energy_shift(const Model& m) {
  if (m.kind != spectral::ModelKind::A2) return std::nullopt;
  return models::e0().subst(m.bindings);
}

json header(std::string_view command) { return {{"schema_version", kSchemaVersion}, {"command", command}}; }

}  // namespace

std::vector<std::string> default_allowed_discrepancies() {
  // Each accepted identity holds exactly after the recorded correction.
  return {"selfsimilarity", "k_commutes", "k_sl3_form", "g2_add_form", "particular_integral"};
}

Result run_verify(const VerifyConfig& c, const JsonStyle& s) {
  std::vector<models::IdentityId> ids;
  if (c.identities.empty()) ids = models::all_identities();
  for (const auto& name : c.identities) {
    const auto id = models::identity_from_name(name);
    if (!id) throw ConfigError("unknown identity '" + name + "'");
    ids.push_back(*id);
  }
  std::vector<models::VerificationReport> reports(ids.size());
  util::parallel_for(ids.size(), [&](std::size_t i) { reports[i] = models::verify_identity(ids[i]); });
  if (c.include_particular_integrals && c.identities.empty())
    for (const auto chart : {weyl::Chart::XY, weyl::Chart::UV})
      for (unsigned n = 0; n <= 4; ++n) reports.push_back(rep::particular_integral_check(n, chart));

  Result r{header("verify")};
  json items = json::array();
  std::map<std::string, int> counts;
  bool ok = true;
  for (const auto& rep : reports) {
    items.push_back(to_json(rep, s));
    const std::string status(models::status_name(rep.status));
    ++counts[status];
    if (rep.status == models::Status::ExactFail) ok = false;
    if (rep.status == models::Status::PassWithDiscrepancies) {
      const bool allowed = std::any_of(c.allowed_discrepancies.begin(), c.allowed_discrepancies.end(),
                                       [&](const std::string& a) { return rep.identity.rfind(a, 0) == 0; });
      ok = ok && allowed;
    }
  }
  r.report["config"] = {{"allowed_discrepancies", c.allowed_discrepancies}, {"identities", c.identities}};
  r.report["reports"] = items;
  r.report["summary"] = {{"counts", counts}, {"ok", ok}};
  r.exit_code = ok ? kOk : kExactFail;
  return r;
}

Result run_spectrum(const SpectrumConfig& c, const JsonStyle&) {
  const Model m = model_of(c);
  const auto matrix = rep::matrix_of(m.op, m.basis, m.bindings);
  const auto cp = spectral::char_poly(matrix);
  Result r{header("spectrum")};
  r.report["config"] = config_echo(c, m);
  json coeffs = json::array();
  for (const auto& k : cp.coeffs) coeffs.push_back(k.to_string());
  r.report["char_poly"] = {{"variable", "E"}, {"coefficients", coeffs}, {"expression", cp.to_string()}};
  if (const auto shift = energy_shift(m)) r.report["energy_shift"] = shift->to_string();
  const bool numeric = fully_bound(m) || std::all_of(cp.coeffs.begin(), cp.coeffs.end(), [&](const MPoly& k) {
    return (k.subst(m.bindings).support() & exact::kParamMask) == 0;
  });
  if (!numeric) {
    r.report["roots"] = nullptr;
    r.report["notes"] = json::array({"roots require every parameter to be bound"});
    return r;
  }
  json roots = json::array();
  for (const auto& root : spectral::numeric_roots(cp, m.bindings)) roots.push_back(to_json(root));
  r.report["roots"] = roots;
  return r;
}

Result run_eigenfunctions(const SpectrumConfig& c, const JsonStyle&) {
  const Model m = model_of(c);
  if (!fully_bound(m)) throw ConfigError("eigenfunctions: bind every parameter (--tau, --mu and, for g2, --lambda)");
  const auto matrix = rep::specialize(rep::matrix_of(m.op, m.basis, m.bindings), m.bindings);
  Result r{header("eigenfunctions")};
  r.report["config"] = config_echo(c, m);
  json states = json::array();
  for (const auto& pair : spectral::eigenpairs(matrix)) {
    for (std::size_t i = 0; i < pair.geometric_multiplicity(); ++i) {
      json st = to_json(spectral::assemble_eigenfunction(pair, i, m.kind, c.n, m.lambda));
      st["eigenvalue"] = to_json(pair.eigenvalue);
      st["residual"] = pair.residual;
      states.push_back(std::move(st));
    }
  }
  if (const auto shift = energy_shift(m)) r.report["energy_shift"] = shift->to_string();
  r.report["states"] = states;
  return r;
}

Result run_crosscheck(const CrosscheckConfig& c, const JsonStyle& s) {
  std::ifstream in(c.lattice_path);
  if (!in) throw ConfigError("cannot open lattice config '" + c.lattice_path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("lattice config: ") + e.what());
  }
  static const std::vector<std::string> known = {"omega1", "omega2", "half_period_index", "samples", "seed", "tolerances"};
  if (!cfg.is_object()) throw ConfigError("lattice config must be a JSON object");
  for (const auto& [k, v] : cfg.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("lattice config: unknown key '" + k + "'");
  const auto complex_of = [&](const char* key) {
    const auto& v = cfg.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ConfigError(std::string("lattice config: ") + key + " must be [re, im]");
    return elliptic::cplx(v[0].get<double>(), v[1].get<double>());
  };
  if (!cfg.contains("omega1") || !cfg.contains("omega2")) throw ConfigError("lattice config: omega1 and omega2 are required");
  const int index = cfg.value("half_period_index", -1);
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  elliptic::CheckOptions options;
  try {
    samples = c.samples.value_or(cfg.value("samples", std::size_t{100}));
    seed = c.seed.value_or(cfg.value("seed", std::uint64_t{1}));
    if (cfg.contains("tolerances"))
      for (const auto& [k, v] : cfg.at("tolerances").items()) {
        const auto id = elliptic::check_from_name(k);
        if (!id) throw ConfigError("lattice config: unknown check '" + k + "' in tolerances");
        options.tolerances[*id] = v.get<double>();
      }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("lattice config: ") + e.what());
  }

  std::vector<elliptic::CheckId> ids;
  if (c.checks.empty()) ids = elliptic::all_checks();
  for (const auto& name : c.checks) {
    const auto id = elliptic::check_from_name(name);
    if (!id) throw ConfigError("unknown check '" + name + "'");
    ids.push_back(*id);
  }

  std::optional<elliptic::EllipticContext> ctx;
  try {
    ctx.emplace(complex_of("omega1"), complex_of("omega2"), index);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("lattice config: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(std::string("lattice config: ") + e.what());
  }

  Result r{header("crosscheck")};
  json tolerances = json::object();
  for (const auto id : elliptic::all_checks())
    tolerances[std::string(elliptic::check_name(id))] =
        options.tolerances.contains(id) ? options.tolerances.at(id) : elliptic::default_tolerance(id);
  r.report["config"] = {{"omega1", to_json(ctx->lattice().omega1())},
                        {"omega2", to_json(ctx->lattice().omega2())},
                        {"half_period_index", ctx->half_period_index()},
                        {"samples", samples},
                        {"seed", seed},
                        {"tolerances", tolerances},
                        {"nu", options.nu},
                        {"fd_step", options.fd_step},
                        {"contour_radius", options.contour_radius},
                        {"contour_cap", options.contour_cap},
                        {"contour_nodes", options.contour_nodes},
                        {"exclusion", options.exclusion}};
  r.report["context"] = {{"tau", to_json(ctx->tau())},
                         {"mu", to_json(ctx->mu())},
                         {"g2", to_json(ctx->lattice().g2())},
                         {"g3", to_json(ctx->lattice().g3())},
                         {"invariant_residual", ctx->invariant_residual()}};
  json checks = json::array();
  bool ok = true, converged = true;
  for (const auto id : ids) {
    const auto rep = elliptic::numeric_check(id, *ctx, samples, seed, options);
    checks.push_back(to_json(rep, s));
    if (rep.passed && !*rep.passed) ok = false;
    if (!std::isfinite(rep.max_rel_error)) converged = false;
  }
  r.report["checks"] = checks;
  r.report["summary"] = {{"ok", ok}, {"converged", converged}};
  r.exit_code = !converged ? kNumericFailure : ok ? kOk : kExactFail;
  return r;
}

Result run_discover(const DiscoverConfig& c, const JsonStyle& s) {
  Result r{header("discover")};
  json members = json::array();
  bool ok = true;
  for (const auto& m : discovery::k_membership_checks(c.bindings, c.seed)) {
    members.push_back(to_json(m, s));
    ok = ok && m.member && m.verified;
  }
  r.report["config"] = {{"bindings", c.bindings}, {"seed", c.seed}, {"ansatz", {{"chart", "xy"}, {"max_order", 3}, {"max_degree", discovery::default_degrees(3)}}}};
  r.report["commutant"] = members;
  if (c.km) {
    const auto km = discovery::find_km(rational_arg("lambda", c.lambda), rational_arg("nu", c.nu), rational_arg("tau", c.tau),
                                       rational_arg("mu", c.mu), c.km_order, c.km_degree);
    r.report["km"] = to_json(km, s);
    ok = ok && (!km.solvable || km.verified);
  }
  r.report["summary"] = {{"ok", ok}};
  r.exit_code = ok ? kOk : kExactFail;
  return r;
}

}  // namespace qes::cli
