#include <benchmark/benchmark.h>

#include <random>

#include "qes/discovery/commutant.hpp"
#include "qes/discovery/modular.hpp"
#include "qes/elliptic/checks.hpp"
#include "qes/models/catalog.hpp"
#include "qes/models/identities.hpp"
#include "qes/spectral/spectral.hpp"

using namespace qes;

namespace {

void BM_CommutatorHK(benchmark::State& state) {
  const auto h = models::h_xy(), k = models::k_a2_xy();
  for (auto _ : state) benchmark::DoNotOptimize(weyl::commutator(h, k));
}
BENCHMARK(BM_CommutatorHK)->Unit(benchmark::kMillisecond);

void BM_ComposeKK(benchmark::State& state) {
  const auto k = models::k_a2_xy();
  for (auto _ : state) benchmark::DoNotOptimize(weyl::restrict_to_even(weyl::compose(k, k)));
}
BENCHMARK(BM_ComposeKK)->Unit(benchmark::kMillisecond);

void BM_GaugeIdentity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(models::verify_identity(models::IdentityId::gauge_A2));
}
BENCHMARK(BM_GaugeIdentity)->Unit(benchmark::kMillisecond);

// Symbolic characteristic polynomial of h on P_n.
void BM_CharPoly(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const auto m = rep::matrix_of(models::h_xy(), rep::MonomialBasis::P(n), rep::qes_binding(n));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::char_poly(m));
}
BENCHMARK(BM_CharPoly)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_RrefMod(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const discovery::Zp f(discovery::large_primes().front());
  std::mt19937_64 g(1);
  std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(n));
  for (auto& row : a)
    for (auto& e : row) e = g() % f.prime();
  for (auto _ : state) {
    auto b = a;
    benchmark::DoNotOptimize(discovery::rref_mod(b, n, f));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RrefMod)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNCubed)->Unit(benchmark::kMillisecond);

void BM_CommutantOrder3(benchmark::State& state) {
  discovery::AnsatzSpec spec;
  spec.bindings = discovery::random_bindings(1, {exact::Var::tau, exact::Var::mu, exact::Var::nu});
  const auto h = models::h_xy();
  for (auto _ : state) benchmark::DoNotOptimize(discovery::commutant_solve(h, spec));
}
BENCHMARK(BM_CommutantOrder3)->Unit(benchmark::kMillisecond);

void BM_Wp(benchmark::State& state) {
  const elliptic::Lattice lat({0.5, 0}, {0, 0.8});
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<elliptic::cplx> zs(1024);
  for (auto& z : zs) z = {u(g), u(g)};
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lat.wp(zs[i++ & 1023]));
}
BENCHMARK(BM_Wp);

void BM_EigenfunctionResidual(benchmark::State& state) {
  const elliptic::EllipticContext ctx({0.5, 0}, {0, 0.8});
  for (auto _ : state)
    benchmark::DoNotOptimize(elliptic::numeric_check(elliptic::CheckId::eigenfunction_residual, ctx, 10, 1));
}
BENCHMARK(BM_EigenfunctionResidual)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
