#pragma once

#include <emtpd/core.hpp>
#include <emtpd/evolve.hpp>
#include <emtpd/problems.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace emtpd::experiment {

/// Exit codes of execute() and the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 1;
inline constexpr int kExitUsage = 2;

struct PlanEntry {
  std::string problem;
  std::size_t n_objectives = 0;
  /// Carries model, strategy and the first seed; repetitions use seed, seed+1, ...
  RunConfig config;
  bool baseline = false;

  /// File-name stem, e.g. "MaF-HS1_n10_Gaussian_PD" or "Toy-HS_n2_NSGA-II".
  [[nodiscard]] std::string tag() const;
};

struct ExperimentPlan {
  std::vector<PlanEntry> entries;
  std::filesystem::path output_dir = "results";
  std::size_t repetitions = 1;
};

/// Command-line values; unset members leave the plan file (or defaults) alone.
struct FlagOverrides {
  std::optional<std::string> problem;
  std::optional<std::size_t> objectives;
  std::optional<std::string> model;
  std::optional<std::string> strategy;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> generations;
  std::optional<std::size_t> pop_size;
  std::optional<double> scale_factor;
  std::optional<std::string> out;
  std::optional<bool> baseline;
  std::optional<std::size_t> ref_points;
  std::optional<std::string> mutation_prob;
};

/// N, G, FEs for a problem: the many-objective table for n in {10, 20, 30},
/// the general defaults (200, 1000, 200000) otherwise.
RunConfig default_config(const ProblemSpec& spec, std::size_t n_objectives);

/// Plan from a JSON document and flags (flags win). Throws ConfigError with
/// the valid vocabulary on unknown names.
///
/// Document layout, all keys optional:
///   { "output_dir": "...", "repetitions": 3, "defaults": {RunConfig keys},
///     "entries": [ { "problem": "MaF-HS1", "objectives": 10,
///                    "model": "Gaussian" | [...], "strategy": "PD" | [...],
///                    "seed": 0, "baseline": false, "config": {RunConfig keys} } ] }
/// Array-valued model/strategy expand to one entry per combination.
ExperimentPlan parse_config(const nlohmann::json& document, const FlagOverrides& flags,
                            const ProblemRegistry& registry);
/// Reads the file at `path` (if given) and defers to the JSON overload.
ExperimentPlan parse_config(const std::optional<std::filesystem::path>& path,
                            const FlagOverrides& flags, const ProblemRegistry& registry);

/// One run of an entry.
RunResult run_entry(const PlanEntry& entry, std::uint64_t seed, const ProblemRegistry& registry);

struct EntryOutcome {
  PlanEntry entry;
  /// Final indicator per repetition and task.
  std::vector<std::array<double, 2>> finals;
  std::array<double, 2> median{};
  std::vector<std::string> errors;
};

struct ExecutionReport {
  std::vector<EntryOutcome> outcomes;
  int exit_code = kExitOk;
};

/// Median of the finite values; NaN when none.
double median(std::vector<double> values);

/// Runs every entry and repetition. Per run, writes into the output directory
///   <tag>_seed<s>.trace.csv, <tag>_seed<s>.summary.json,
///   <tag>_seed<s>.task1.archive, <tag>_seed<s>.task2.archive
/// and finally summary.csv with one median row per entry. A table goes to `table`.
ExecutionReport execute(const ExperimentPlan& plan, const ProblemRegistry& registry,
                        std::ostream& table);

/// One diagnostics row: e_avg of one task under one model kind.
struct DiagnosticsRow {
  ModelKind model = ModelKind::Gaussian;
  std::string problem;
  std::size_t task = 1;
  double e_avg = 0.0;
  bool valid = true;
};

/// For every model kind, runs each (non-baseline) entry with that kind and pools
/// the per-generation e_g of all repetitions into e_avg per task.
std::vector<DiagnosticsRow> diagnostics(const ExperimentPlan& plan,
                                        const ProblemRegistry& registry);

/// e_avg of a single fixed population fitted with `kind` (one "generation").
AverageError population_error(std::span<const Vector> genotypes, ModelKind kind);

/// CSV with header model,problem,task,e_avg,valid.
void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRow>& rows);

} // namespace emtpd::experiment
