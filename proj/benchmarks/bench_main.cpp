#include <benchmark/benchmark.h>

#include <random>

#include "oscillab/lattice_spectral.hpp"
#include "oscillab/nonlinear_analysis.hpp"
#include "oscillab/oscillation_conditions.hpp"
#include "oscillab/simulate.hpp"
#include "oscillab/tridiag_eigen.hpp"

using namespace oscillab;

namespace {

Vector random_vector(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Vector v(k);
  for (double& x : v) x = d(gen);
  return v;
}

void BM_Step(benchmark::State& state, const char* scheme_name) {
  const auto k = static_cast<std::size_t>(state.range(0));
  sim::Problem p;
  p.disc = schemes::Discretization::from_ratio(k, 0.4, 1.0 / (k + 1), 1.0);
  p.initial = random_vector(k, 1);
  const auto scheme = schemes::parse_scheme(scheme_name);
  const sim::Stepper stepper(p, scheme);
  Vector u = p.initial;
  for (auto _ : state) {
    u = stepper.step(u);
    benchmark::DoNotOptimize(u.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(k));
}
BENCHMARK_CAPTURE(BM_Step, forward_euler, "forward_euler")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(BM_Step, crank_nicolson, "crank_nicolson")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(BM_Step, taylor5, "taylor(5)")->RangeMultiplier(4)->Range(64, 4096);

void BM_SineTransform(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const lattice::SineBasis basis(k);
  const Vector v = random_vector(k, 2);
  for (auto _ : state) benchmark::DoNotOptimize(basis.transform(v));
}
BENCHMARK(BM_SineTransform)->RangeMultiplier(4)->Range(16, 1024);

void BM_BoundsTable(benchmark::State& state) {
  const auto schemes = schemes::table_schemes();
  const Vector sigmas{0.0, 0.1, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(conditions::bounds_table(schemes, sigmas));
}
BENCHMARK(BM_BoundsTable)->Unit(benchmark::kMillisecond);

void BM_TridiagEigen(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  Vector diag = random_vector(k, 3);
  for (double& d : diag) d -= 2.0;
  const Vector off(k - 1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(eigen::tridiag_eigen(diag, off));
}
BENCHMARK(BM_TridiagEigen)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_FisherFrozenEigen(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  sim::Problem p;
  p.kind = sim::ProblemKind::FisherKPP;
  p.disc = schemes::Discretization::from_ratio(k, 1.0, 1.0, 1.0, 1.0);
  p.bc = {1.0, 0.0};
  p.initial = Vector(k);
  for (std::size_t i = 0; i < k; ++i) p.initial[i] = 1.0 - static_cast<double>(i + 1) / (k + 1);
  const auto fe = schemes::builtin_scheme("forward_euler");
  const Vector ubar = sim::steady_state(p, fe);
  for (auto _ : state)
    benchmark::DoNotOptimize(eigen::symmetric_eigen(nonlinear::frozen_jacobian(p, fe, ubar)));
}
BENCHMARK(BM_FisherFrozenEigen)->Arg(60)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
