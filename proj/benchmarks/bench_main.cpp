#include <emtpd/evolve.hpp>
#include <emtpd/metrics.hpp>
#include <emtpd/probmodel.hpp>
#include <emtpd/problems.hpp>
#include <emtpd/selection.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

std::vector<emtpd::Vector> uniform_points(std::size_t count, std::size_t dim, std::uint64_t seed)
{
  emtpd::Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<emtpd::Vector> out(count, emtpd::Vector(dim));
  for (auto& p : out)
    for (auto& v : p)
      v = u(rng);
  return out;
}

void BM_Fit(benchmark::State& state)
{
  const auto kind = static_cast<emtpd::ModelKind>(state.range(0));
  const auto pop = uniform_points(115, 19, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(emtpd::fit(pop, kind));
  state.SetLabel(std::string(emtpd::to_string(kind)));
}
BENCHMARK(BM_Fit)->DenseRange(0, 3);

void BM_ProductArgmax(benchmark::State& state)
{
  const auto kind = static_cast<emtpd::ModelKind>(state.range(0));
  const auto m1 = emtpd::fit(uniform_points(115, 19, 2), kind);
  const auto m2 = emtpd::fit(uniform_points(115, 19, 3), kind);
  for (auto _ : state)
    benchmark::DoNotOptimize(emtpd::product_argmax(m1, m2));
  state.SetLabel(std::string(emtpd::to_string(kind)));
}
BENCHMARK(BM_ProductArgmax)->DenseRange(0, 3);

void BM_NondominatedSort(benchmark::State& state)
{
  const auto pts = uniform_points(static_cast<std::size_t>(state.range(0)), 10, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(emtpd::fast_nondominated_sort(pts));
}
BENCHMARK(BM_NondominatedSort)->Arg(230)->Arg(460);

void BM_NondominationLevels(benchmark::State& state)
{
  const auto pts = uniform_points(static_cast<std::size_t>(state.range(0)), 10, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(emtpd::nondomination_levels(pts));
}
BENCHMARK(BM_NondominationLevels)->Arg(1000)->Arg(10000);

void BM_IgdPlus(benchmark::State& state)
{
  const auto task = emtpd::make_maf_task(emtpd::MafFunction::MaF4, 10);
  const auto ref = emtpd::pf_sample(task, static_cast<std::size_t>(state.range(0)));
  const auto pts = uniform_points(115, 10, 6);
  for (auto _ : state)
    benchmark::DoNotOptimize(emtpd::igd_plus(ref, pts));
}
BENCHMARK(BM_IgdPlus)->Arg(1000)->Arg(10000);

void BM_OneGeneration(benchmark::State& state)
{
  const auto problem = emtpd::build_mtmaop("MaF-HS2", 10);
  emtpd::RunConfig config;
  config.population_size = 230;
  config.max_generations = 1;
  config.max_evaluations = 69000;
  config.reference_points = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(emtpd::run(problem, config));
}
BENCHMARK(BM_OneGeneration)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
