#include <emtpd/core.hpp>
#include <emtpd/errors.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace emtpd {

namespace {

template <typename Enum, std::size_t N>
Enum parse_from(std::string_view text, const std::array<Enum, N>& values, std::string_view what)
{
  for (const auto value : values)
    if (to_string(value) == text)
      return value;
  std::ostringstream message;
  message << "unknown " << what << " '" << text << "'; expected one of:";
  for (const auto value : values)
    message << ' ' << to_string(value);
  throw ConfigError(message.str());
}

} // namespace

std::string_view to_string(ModelKind kind)
{
  switch (kind) {
  case ModelKind::Gaussian: return "Gaussian";
  case ModelKind::Exponential: return "Exponential";
  case ModelKind::Gamma: return "Gamma";
  case ModelKind::Beta: return "Beta";
  }
  return "?";
}

std::string_view to_string(TransferStrategy strategy)
{
  switch (strategy) {
  case TransferStrategy::PD: return "PD";
  case TransferStrategy::PD1: return "PD-1";
  case TransferStrategy::SR: return "SR";
  case TransferStrategy::MR: return "MR";
  case TransferStrategy::SH: return "SH";
  case TransferStrategy::MH: return "MH";
  }
  return "?";
}

std::string_view to_string(Indicator indicator)
{
  switch (indicator) {
  case Indicator::Auto: return "auto";
  case Indicator::IGD: return "IGD";
  case Indicator::IGDPlus: return "IGD+";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text)
{
  return parse_from(text, kAllModelKinds, "model kind");
}

TransferStrategy parse_strategy(std::string_view text)
{
  return parse_from(text, kAllStrategies, "transfer strategy");
}

Indicator parse_indicator(std::string_view text)
{
  constexpr std::array all{Indicator::Auto, Indicator::IGD, Indicator::IGDPlus};
  return parse_from(text, all, "indicator");
}

UnifiedGenotype::UnifiedGenotype(Vector values) : values_(std::move(values))
{
  for (auto& v : values_)
    v = std::clamp(v, 0.0, 1.0);
}

std::size_t MultiTaskProblem::unified_dim() const noexcept
{
  return std::max(task1.native_dim, task2.native_dim);
}

const TaskDefinition& MultiTaskProblem::task(std::size_t index) const
{
  if (index == 0)
    return task1;
  if (index == 1)
    return task2;
  throw InternalError("task index out of range: " + std::to_string(index));
}

double MutationRate::resolve(std::size_t population_size, std::size_t dimension) const
{
  switch (mode) {
  case Mode::InversePopulation: return 1.0 / static_cast<double>(population_size);
  case Mode::InverseDimension: return 1.0 / static_cast<double>(dimension);
  case Mode::Fixed: return value;
  }
  return value;
}

std::string MutationRate::to_string() const
{
  switch (mode) {
  case Mode::InversePopulation: return "1/N";
  case Mode::InverseDimension: return "1/D";
  case Mode::Fixed: break;
  }
  std::array<char, 32> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return {buffer.data(), end};
}

MutationRate MutationRate::parse(std::string_view text)
{
  if (text == "1/N")
    return {Mode::InversePopulation, 0.0};
  if (text == "1/D")
    return {Mode::InverseDimension, 0.0};
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || !(value > 0.0) || value > 1.0)
    throw ConfigError("mutation probability must be '1/N', '1/D' or a number in (0,1], got '" +
                      std::string(text) + "'");
  return {Mode::Fixed, value};
}

void validate(const RunConfig& config)
{
  if (config.population_size < 2)
    throw ConfigError("population size must be at least 2");
  if (config.population_size % 2 != 0)
    throw ConfigError("population size must be even (two equal subpopulations)");
  if (config.max_evaluations == 0)
    throw ConfigError("evaluation budget must be positive");
  if (!(config.scale_factor > 0.0))
    throw ConfigError("scale factor F must be positive");
  if (config.mutation.mode == MutationRate::Mode::Fixed &&
      !(config.mutation.value > 0.0 && config.mutation.value <= 1.0))
    throw ConfigError("mutation probability must lie in (0,1]");
  if (!(config.eta_m > 0.0) || !(config.eta_c > 0.0))
    throw ConfigError("distribution indices must be positive");
  if (!(config.crossover_probability >= 0.0 && config.crossover_probability <= 1.0))
    throw ConfigError("crossover probability must lie in [0,1]");
}

void validate(const TaskDefinition& task)
{
  if (task.native_dim == 0 || task.n_objectives == 0)
    throw ConfigError("task '" + task.name + "' needs positive dimension and objective count");
  if (task.lower_bounds.size() != task.native_dim || task.upper_bounds.size() != task.native_dim)
    throw ConfigError("task '" + task.name + "' bounds do not match its dimension");
  for (std::size_t j = 0; j < task.native_dim; ++j)
    if (!(task.lower_bounds[j] < task.upper_bounds[j]))
      throw ConfigError("task '" + task.name + "' has an empty box in dimension " +
                        std::to_string(j));
  if (!task.evaluator)
    throw ConfigError("task '" + task.name + "' has no evaluator");
}

std::vector<Individual> initialize_population(const MultiTaskProblem& problem, std::size_t n,
                                              Rng& rng)
{
  if (n < 2)
    throw ConfigError("population size must be at least 2");
  const auto dim = problem.unified_dim();
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Individual> population;
  population.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector values(dim);
    for (auto& v : values)
      v = uniform(rng);
    population.push_back(Individual{UnifiedGenotype(std::move(values)), {}, 0, 0.0});
  }
  return population;
}

std::pair<std::vector<Individual>, std::vector<Individual>>
split_population(std::vector<Individual> population)
{
  if (population.size() % 2 != 0)
    throw ConfigError("cannot split an odd-sized population into two equal halves");
  std::vector<Individual> first;
  std::vector<Individual> second;
  first.reserve(population.size() / 2);
  second.reserve(population.size() / 2);
  for (std::size_t i = 0; i < population.size(); ++i)
    (i % 2 == 0 ? first : second).push_back(std::move(population[i]));
  return {std::move(first), std::move(second)};
}

Vector decode(std::span<const double> genotype, const TaskDefinition& task)
{
  if (genotype.size() < task.native_dim)
    throw InternalError("genotype of length " + std::to_string(genotype.size()) +
                        " is shorter than task '" + task.name + "' dimension " +
                        std::to_string(task.native_dim));
  Vector native(task.native_dim);
  for (std::size_t j = 0; j < task.native_dim; ++j)
    native[j] = task.lower_bounds[j] + genotype[j] * (task.upper_bounds[j] - task.lower_bounds[j]);
  return native;
}

Vector decode(const UnifiedGenotype& genotype, const TaskDefinition& task)
{
  return decode(genotype.values(), task);
}

Vector encode(std::span<const double> native, const TaskDefinition& task)
{
  if (native.size() != task.native_dim)
    throw InternalError("native vector length does not match task dimension");
  Vector unified(task.native_dim);
  for (std::size_t j = 0; j < task.native_dim; ++j)
    unified[j] = (native[j] - task.lower_bounds[j]) / (task.upper_bounds[j] - task.lower_bounds[j]);
  return unified;
}

bool evaluate(Individual& individual, const TaskDefinition& task)
{
  if (individual.evaluated())
    return false;
  const auto native = decode(individual.genotype, task);
  Vector objectives;
  try {
    objectives = task.evaluator(native);
  } catch (const std::exception& e) {
    throw EvaluationError("evaluator of task '" + task.name + "' failed: " + e.what());
  }
  if (objectives.size() != task.n_objectives)
    throw EvaluationError("evaluator of task '" + task.name + "' returned " +
                          std::to_string(objectives.size()) + " objectives, expected " +
                          std::to_string(task.n_objectives));
  if (std::any_of(objectives.begin(), objectives.end(), [](double f) { return std::isnan(f); }))
    throw EvaluationError("evaluator of task '" + task.name + "' returned NaN");
  individual.objectives = std::move(objectives);
  return true;
}

} // namespace emtpd
