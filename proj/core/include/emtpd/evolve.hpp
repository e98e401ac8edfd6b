#pragma once

#include <emtpd/core.hpp>
#include <emtpd/probmodel.hpp>

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace emtpd {

/// One row per task per generation. Generation 0 describes the initial
/// population; model/transfer columns are NaN there and for the baseline.
struct TraceRow {
  std::size_t generation = 0;
  std::size_t evaluations = 0;
  std::size_t task = 1; ///< 1 or 2
  double indicator = 0.0;
  double fitting_error = 0.0;
  double d1 = 0.0;
  double mean_w = 0.0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct RunResult {
  std::string problem;
  std::string algorithm;
  RunConfig config;
  std::array<Indicator, 2> indicators{Indicator::IGD, Indicator::IGD};
  std::vector<TraceRow> trace;
  /// Final non-dominated sets per task.
  std::array<std::vector<Individual>, 2> archives;
  /// Indicator of each final archive; NaN without a front sampler.
  std::array<double, 2> final_indicator{};
  /// Models fitted in the last completed generation (empty for the baseline or G = 0).
  std::vector<FittedModel> final_models;
  std::size_t evaluations = 0;
  std::size_t generations = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

/// IGD+ for many-objective tasks (n > 3), IGD otherwise, unless fixed by the config.
Indicator resolve_indicator(Indicator requested, std::size_t n_objectives);

/// EMT-PD on a two-task problem.
RunResult run(const MultiTaskProblem& problem, const RunConfig& config);

/// Simulated binary crossover on the unit box; returns two children.
std::array<Vector, 2> sbx_crossover(std::span<const double> a, std::span<const double> b,
                                    double probability, double eta, Rng& rng);

/// Index of the winner of a crowded binary tournament (rank, then crowding).
std::size_t binary_tournament(std::span<const Individual> population, Rng& rng);

/// Generational NSGA-II on one task with half of the EMT-PD population and budget.
/// `task_number` labels the trace rows and selects the archive slot.
RunResult single_task_baseline(const TaskDefinition& task, const RunConfig& config,
                               std::size_t task_number = 1);

/// single_task_baseline on both tasks, merged into one result.
RunResult baseline_pair(const MultiTaskProblem& problem, const RunConfig& config);

} // namespace emtpd
