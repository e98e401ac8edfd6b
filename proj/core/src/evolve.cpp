#include <emtpd/errors.hpp>
#include <emtpd/evolve.hpp>
#include <emtpd/metrics.hpp>
#include <emtpd/selection.hpp>
#include <emtpd/transfer.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

namespace emtpd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Indicator references use a fixed seed so values compare across runs.
constexpr std::uint64_t kReferenceSeed = 2021;

struct IndicatorProbe {
  Indicator kind = Indicator::IGD;
  std::optional<ReferenceSet> reference;

  IndicatorProbe(const TaskDefinition& task, const RunConfig& config)
      : kind(resolve_indicator(config.indicator, task.n_objectives))
  {
    if (task.pf_sampler && config.reference_points > 0)
      reference = pf_sample(task, config.reference_points, kReferenceSeed);
  }

  [[nodiscard]] double measure(std::span<const Individual> archive) const
  {
    if (!reference || archive.empty())
      return kNaN;
    std::vector<Vector> objectives;
    objectives.reserve(archive.size());
    for (const auto& ind : archive)
      objectives.push_back(ind.objectives);
    return kind == Indicator::IGDPlus ? igd_plus(*reference, objectives)
                                      : igd(*reference, objectives);
  }
};

std::size_t evaluate_all(std::vector<Individual>& population, const TaskDefinition& task)
{
  std::size_t spent = 0;
  for (auto& ind : population)
    spent += evaluate(ind, task) ? 1 : 0;
  return spent;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Evaluation slots for this generation: each task gets up to `per_task`, the
// remaining budget is split evenly (task 1 takes the odd one).
std::array<std::size_t, 2> generation_quota(std::size_t remaining, std::size_t per_task)
{
  if (remaining >= 2 * per_task)
    return {per_task, per_task};
  return {std::min(per_task, (remaining + 1) / 2), std::min(per_task, remaining / 2)};
}

} // namespace

Indicator resolve_indicator(Indicator requested, std::size_t n_objectives)
{
  if (requested != Indicator::Auto)
    return requested;
  return n_objectives > 3 ? Indicator::IGDPlus : Indicator::IGD;
}

RunResult run(const MultiTaskProblem& problem, const RunConfig& config)
{
  validate(config);
  validate(problem.task1);
  validate(problem.task2);
  const auto n = config.population_size;
  const auto n_sub = n / 2;
  if (config.max_evaluations < n)
    throw ConfigError("evaluation budget is smaller than the initial population");

  const bool needs_front = config.strategy == TransferStrategy::SH ||
                           config.strategy == TransferStrategy::MH;
  std::array<std::vector<Vector>, 2> knowledge_reference;
  for (std::size_t k = 0; k < 2; ++k) {
    if (!needs_front)
      continue;
    const auto& task = problem.task(k);
    if (!task.pf_sampler)
      throw ConfigError("strategy " + std::string(to_string(config.strategy)) +
                        " needs a Pareto-front sampler for task '" + task.name + "'");
    knowledge_reference[k] =
        pf_sample(task, config.knowledge_reference_points, kReferenceSeed).points;
  }

  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.problem = problem.name;
  result.algorithm = "EMT-PD";
  result.config = config;
  result.seed = config.seed;

  const std::array<IndicatorProbe, 2> probes{IndicatorProbe(problem.task1, config),
                                             IndicatorProbe(problem.task2, config)};
  result.indicators = {probes[0].kind, probes[1].kind};

  Rng rng(config.seed);
  auto [first, second] = split_population(initialize_population(problem, n, rng));
  std::array<std::vector<Individual>, 2> pops{std::move(first), std::move(second)};
  for (std::size_t k = 0; k < 2; ++k) {
    result.evaluations += evaluate_all(pops[k], problem.task(k));
    pops[k] = environmental_selection(std::move(pops[k]), {}, n_sub);
  }
  for (std::size_t k = 0; k < 2; ++k)
    result.trace.push_back({0, result.evaluations, k + 1,
                            probes[k].measure(nondominated_subset(pops[k])), kNaN, kNaN, kNaN});

  const auto dim = problem.unified_dim();
  OffspringParams params;
  params.scale_factor = config.scale_factor;
  params.mutation_probability = config.mutation.resolve(n, dim);
  params.eta_m = config.eta_m;
  params.second_stage = config.strategy != TransferStrategy::PD1;
  const bool product_knowledge = config.strategy == TransferStrategy::PD ||
                                 config.strategy == TransferStrategy::PD1;

  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    const auto remaining = config.max_evaluations - result.evaluations;
    if (remaining == 0)
      break;
    const auto quota = generation_quota(remaining, n_sub);

    std::vector<FittedModel> models{fit(pops[0], config.model), fit(pops[1], config.model)};
    const std::array<double, 2> errors{fitting_error(pops[0], models[0]),
                                       fitting_error(pops[1], models[1])};

    std::array<Vector, 2> knowledge;
    if (product_knowledge) {
      knowledge[0] = product_argmax(models[0], models[1]);
      knowledge[1] = knowledge[0];
    } else {
      for (std::size_t k = 0; k < 2; ++k)
        knowledge[k] = knowledge_source(
            config.strategy,
            KnowledgeInputs{pops[k], pops[1 - k], &models[k], &models[1 - k],
                            knowledge_reference[1 - k]},
            rng);
    }

    std::array<OffspringBatch, 2> batches;
    for (std::size_t k = 0; k < 2; ++k)
      batches[k] = generate_offspring(pops[k], models[k], knowledge[k], params, rng);

    for (std::size_t k = 0; k < 2; ++k) {
      auto& offspring = batches[k].offspring;
      offspring.resize(std::min(offspring.size(), quota[k]));
      result.evaluations += evaluate_all(offspring, problem.task(k));
      pops[k] = environmental_selection(std::move(pops[k]), std::move(offspring), n_sub);
    }
    for (std::size_t k = 0; k < 2; ++k)
      result.trace.push_back({gen, result.evaluations, k + 1,
                              probes[k].measure(nondominated_subset(pops[k])), errors[k],
                              batches[k].d1, batches[k].mean_w});
    result.final_models = std::move(models);
    result.generations = gen;
  }

  for (std::size_t k = 0; k < 2; ++k) {
    result.archives[k] = nondominated_subset(pops[k]);
    result.final_indicator[k] = probes[k].measure(result.archives[k]);
  }
  result.wall_seconds = seconds_since(start);
  return result;
}

std::array<Vector, 2> sbx_crossover(std::span<const double> a, std::span<const double> b,
                                    double probability, double eta, Rng& rng)
{
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::array<Vector, 2> children{Vector(a.begin(), a.end()), Vector(b.begin(), b.end())};
  if (!(uniform(rng) < probability))
    return children;
  const double power = 1.0 / (eta + 1.0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (uniform(rng) > 0.5 || std::abs(a[j] - b[j]) <= 1e-14)
      continue;
    const double y1 = std::min(a[j], b[j]);
    const double y2 = std::max(a[j], b[j]);
    const double rand = uniform(rng);

    auto spread = [&](double beta) {
      const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
      return rand <= 1.0 / alpha ? std::pow(rand * alpha, power)
                                 : std::pow(1.0 / (2.0 - rand * alpha), power);
    };
    const double betaq1 = spread(1.0 + 2.0 * y1 / (y2 - y1));
    const double betaq2 = spread(1.0 + 2.0 * (1.0 - y2) / (y2 - y1));
    double c1 = std::clamp(0.5 * ((y1 + y2) - betaq1 * (y2 - y1)), 0.0, 1.0);
    double c2 = std::clamp(0.5 * ((y1 + y2) + betaq2 * (y2 - y1)), 0.0, 1.0);
    if (uniform(rng) <= 0.5)
      std::swap(c1, c2);
    children[0][j] = c1;
    children[1][j] = c2;
  }
  return children;
}

std::size_t binary_tournament(std::span<const Individual> population, Rng& rng)
{
  std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
  const auto i = pick(rng);
  const auto j = pick(rng);
  const auto& a = population[i];
  const auto& b = population[j];
  if (a.rank != b.rank)
    return a.rank < b.rank ? i : j;
  if (a.crowding != b.crowding)
    return a.crowding > b.crowding ? i : j;
  return i;
}

RunResult single_task_baseline(const TaskDefinition& task, const RunConfig& config,
                               std::size_t task_number)
{
  validate(config);
  validate(task);
  if (task_number != 1 && task_number != 2)
    throw InternalError("baseline task number must be 1 or 2");
  const auto n_sub = config.population_size / 2;
  const auto budget = config.max_evaluations / 2;
  if (budget < n_sub)
    throw ConfigError("per-task evaluation budget is smaller than the subpopulation");
  const auto slot = task_number - 1;

  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.problem = task.name;
  result.algorithm = "NSGA-II";
  result.config = config;
  result.seed = config.seed;
  const IndicatorProbe probe(task, config);
  result.indicators = {probe.kind, probe.kind};

  Rng rng(config.seed);
  MultiTaskProblem single{task.name, task, task};
  auto pop = initialize_population(single, n_sub, rng);
  result.evaluations += evaluate_all(pop, task);
  pop = environmental_selection(std::move(pop), {}, n_sub);
  result.trace.push_back({0, result.evaluations, task_number,
                          probe.measure(nondominated_subset(pop)), kNaN, kNaN, kNaN});

  const double pm = config.mutation.resolve(config.population_size, task.native_dim);
  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    const auto remaining = budget - result.evaluations;
    if (remaining == 0)
      break;
    std::vector<Individual> offspring;
    offspring.reserve(n_sub + 1);
    while (offspring.size() < n_sub) {
      const auto& a = pop[binary_tournament(pop, rng)];
      const auto& b = pop[binary_tournament(pop, rng)];
      auto children = sbx_crossover(a.genotype.values(), b.genotype.values(),
                                    config.crossover_probability, config.eta_c, rng);
      for (auto& child : children) {
        auto mutated = polynomial_mutation(child, pm, config.eta_m, rng);
        offspring.push_back(Individual{UnifiedGenotype(std::move(mutated)), {}, 0, 0.0});
      }
    }
    offspring.resize(std::min(n_sub, remaining));
    result.evaluations += evaluate_all(offspring, task);
    pop = environmental_selection(std::move(pop), std::move(offspring), n_sub);
    result.trace.push_back({gen, result.evaluations, task_number,
                            probe.measure(nondominated_subset(pop)), kNaN, kNaN, kNaN});
    result.generations = gen;
  }

  result.archives[slot] = nondominated_subset(pop);
  result.final_indicator = {kNaN, kNaN};
  result.final_indicator[slot] = probe.measure(result.archives[slot]);
  result.wall_seconds = seconds_since(start);
  return result;
}

RunResult baseline_pair(const MultiTaskProblem& problem, const RunConfig& config)
{
  auto first = single_task_baseline(problem.task1, config, 1);
  auto second = single_task_baseline(problem.task2, config, 2);
  RunResult merged = std::move(first);
  merged.problem = problem.name;
  merged.indicators[1] = second.indicators[1];
  merged.archives[1] = std::move(second.archives[1]);
  merged.final_indicator[1] = second.final_indicator[1];
  merged.evaluations += second.evaluations;
  merged.generations = std::max(merged.generations, second.generations);
  merged.wall_seconds += second.wall_seconds;
  std::vector<TraceRow> rows;
  rows.reserve(merged.trace.size() + second.trace.size());
  // Interleave so rows are ordered by generation, then task.
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < merged.trace.size() || j < second.trace.size()) {
    if (j >= second.trace.size() ||
        (i < merged.trace.size() && merged.trace[i].generation <= second.trace[j].generation))
      rows.push_back(merged.trace[i++]);
    else
      rows.push_back(second.trace[j++]);
  }
  merged.trace = std::move(rows);
  return merged;
}

} // namespace emtpd
