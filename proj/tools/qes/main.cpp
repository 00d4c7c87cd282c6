// qes: verification suites, spectra, numeric cross-checks and commutant
// discovery for the A2 / G2 elliptic Calogero models.
//
// Exit codes
//   0  every check passed (accepted discrepancies included)
//   1  an exact identity or a numeric check failed
//   2  invalid arguments or configuration
//   3  numeric non-convergence
//
// Output is a single JSON document with a schema_version field; without
// --timings it is byte-identical for identical arguments.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qes/spectral/spectral.hpp"

namespace {

using namespace qes::cli;

void add_spectrum_options(CLI::App* app, SpectrumConfig& c) {
  app->add_option("--model", c.model, "a2 (P_n in x, y) or g2 (Q_n in u, v)")->check(CLI::IsMember({"a2", "g2"}));
  app->add_option("--n", c.n, "representation degree; fixes nu = -n/3")->check(CLI::Range(0, 12));
  app->add_option("--tau", c.tau, "rational value of tau");
  app->add_option("--mu", c.mu, "rational value of mu");
  app->add_option("--lambda", c.lambda, "rational value of lambda (g2)");
}

int emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "qes: cannot write '" << out_path << "'\n";
    return kConfigError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numeric checks for the A2/G2 elliptic Calogero models"};
  app.require_subcommand(1);
  std::string out_path = "-";
  JsonStyle style;
  app.add_option("-o,--out", out_path, "output file, - for stdout");
  app.add_flag("--timings", style.timings, "include wall-clock seconds (output no longer reproducible)");

  VerifyConfig verify;
  verify.allowed_discrepancies = default_allowed_discrepancies();
  bool strict = false;
  auto* v = app.add_subcommand("verify", "run the symbolic identity suite");
  v->add_option("--identity", verify.identities, "restrict to these identities");
  v->add_flag("--strict", strict, "treat every PassWithDiscrepancies as a failure");

  SpectrumConfig spectrum, eigen;
  add_spectrum_options(app.add_subcommand("spectrum", "characteristic polynomial and roots on P_n or Q_n"), spectrum);
  add_spectrum_options(app.add_subcommand("eigenfunctions", "assembled eigenfunction descriptors"), eigen);

  CrosscheckConfig cross;
  auto* x = app.add_subcommand("crosscheck", "numeric elliptic cross-checks on a lattice");
  x->add_option("--lattice", cross.lattice_path, "lattice config JSON")->required();
  x->add_option("--check", cross.checks, "restrict to these checks");
  x->add_option("--samples", cross.samples, "override the sample count");
  x->add_option("--seed", cross.seed, "override the seed");

  DiscoverConfig disc;
  bool no_km = false;
  auto* d = app.add_subcommand("discover", "commutant membership and the K_m search");
  d->add_option("--bindings", disc.bindings, "random rational parameter points")->check(CLI::Range(1, 64));
  d->add_option("--seed", disc.seed);
  d->add_flag("--no-km", no_km, "skip the K_m search");
  d->add_option("--lambda", disc.lambda);
  d->add_option("--nu", disc.nu);
  d->add_option("--tau", disc.tau);
  d->add_option("--mu", disc.mu);
  d->add_option("--km-order", disc.km_order)->check(CLI::Range(0, 8));
  d->add_option("--km-degree", disc.km_degree, "one coefficient degree bound for every order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }
  if (strict) verify.allowed_discrepancies.clear();
  disc.km = !no_km;

  try {
    Result r;
    if (v->parsed()) r = run_verify(verify, style);
    else if (app.got_subcommand("spectrum")) r = run_spectrum(spectrum, style);
    else if (app.got_subcommand("eigenfunctions")) r = run_eigenfunctions(eigen, style);
    else if (x->parsed()) r = run_crosscheck(cross, style);
    else r = run_discover(disc, style);
    const int rc = emit(r.report, out_path);
    return rc ? rc : r.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "qes: " << e.what() << "\n";
    return kConfigError;
  } catch (const qes::spectral::RootFailure& e) {
    std::cerr << "qes: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::overflow_error& e) {
    std::cerr << "qes: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "qes: " << e.what() << "\n";
    return kExactFail;
  }
}
