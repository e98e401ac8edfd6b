#pragma once

#include <emtpd/enums.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace emtpd {

using Vector = std::vector<double>;

/// The single random stream of a run. Every stochastic operator takes it by reference.
using Rng = std::mt19937_64;

/// Decision vector in the normalized unified search space [0,1]^D.
///
/// Construction clamps every coordinate into [0,1]; the class offers no mutable
/// access, so the box invariant holds for the lifetime of the object.
class UnifiedGenotype {
public:
  UnifiedGenotype() = default;
  explicit UnifiedGenotype(Vector values);

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] const Vector& vector() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t j) const { return values_[j]; }

  friend bool operator==(const UnifiedGenotype&, const UnifiedGenotype&) = default;

private:
  Vector values_;
};

struct Individual {
  UnifiedGenotype genotype;
  /// Empty until evaluated; re-evaluation only happens for new genotypes.
  Vector objectives;
  /// Non-domination level (0 = first front), set by environmental selection.
  std::size_t rank = 0;
  double crowding = 0.0;

  [[nodiscard]] bool evaluated() const noexcept { return !objectives.empty(); }
};

using Evaluator = std::function<Vector(std::span<const double>)>;

/// Returns `count` points on the analytic Pareto front; deterministic given `seed`.
using PfSampler = std::function<std::vector<Vector>(std::size_t count, std::uint64_t seed)>;

struct TaskDefinition {
  std::string name;
  std::size_t native_dim = 0;
  std::size_t n_objectives = 0;
  Vector lower_bounds;
  Vector upper_bounds;
  Evaluator evaluator;
  PfSampler pf_sampler; ///< may be empty
};

struct MultiTaskProblem {
  std::string name;
  TaskDefinition task1;
  TaskDefinition task2;

  [[nodiscard]] std::size_t unified_dim() const noexcept;
  [[nodiscard]] const TaskDefinition& task(std::size_t index) const;
};

/// Per-coordinate mutation probability: 1/N (population), 1/D (dimension) or a fixed value.
struct MutationRate {
  enum class Mode { InversePopulation, InverseDimension, Fixed };
  Mode mode = Mode::InversePopulation;
  double value = 0.0;

  [[nodiscard]] double resolve(std::size_t population_size, std::size_t dimension) const;
  [[nodiscard]] std::string to_string() const;
  /// Accepts "1/N", "1/D" or a number in (0,1].
  static MutationRate parse(std::string_view text);
};

struct RunConfig {
  std::size_t population_size = 200;
  std::size_t max_generations = 1000;
  std::size_t max_evaluations = 200000;
  double scale_factor = 0.01;
  MutationRate mutation{};
  double eta_m = 20.0;
  /// SBX settings; only the single-task baseline recombines.
  double crossover_probability = 0.3;
  double eta_c = 20.0;
  ModelKind model = ModelKind::Gaussian;
  TransferStrategy strategy = TransferStrategy::PD;
  Indicator indicator = Indicator::Auto;
  /// Size of the analytic Pareto-front sample used by IGD / IGD+ in traces.
  std::size_t reference_points = 10000;
  /// Pareto-front discretization used to pick "optimal" individuals for SH/MH.
  std::size_t knowledge_reference_points = 1000;
  std::uint64_t seed = 0;
};

/// Throws ConfigError on any violated RunConfig invariant.
void validate(const RunConfig& config);
/// Throws ConfigError if bounds are inconsistent or the evaluator is missing.
void validate(const TaskDefinition& task);

std::vector<Individual> initialize_population(const MultiTaskProblem& problem, std::size_t n,
                                              Rng& rng);

/// Even indices go to task 1, odd indices to task 2.
std::pair<std::vector<Individual>, std::vector<Individual>>
split_population(std::vector<Individual> population);

/// First native_dim coordinates rescaled from [0,1] into the task box.
Vector decode(const UnifiedGenotype& genotype, const TaskDefinition& task);
Vector decode(std::span<const double> genotype, const TaskDefinition& task);

/// Inverse of decode on the first native_dim coordinates.
Vector encode(std::span<const double> native, const TaskDefinition& task);

/// Evaluates `individual` on `task` unless it already carries objectives.
/// Returns true if an evaluation was spent.
bool evaluate(Individual& individual, const TaskDefinition& task);

} // namespace emtpd
