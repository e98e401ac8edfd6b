#include <emtpd/errors.hpp>
#include <emtpd/experiment.hpp>
#include <emtpd/serialization.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace emtpd::experiment {

using nlohmann::json;

namespace {

struct TabulatedSize {
  std::size_t n_objectives;
  std::size_t population;
  std::size_t generations;
  std::size_t evaluations;
};

// Many-objective settings per objective count. The n = 30 row lists N = 465;
// subpopulations must be equal, so it is rounded up to 466 (budget unchanged).
constexpr std::array kManyObjectiveSizes{
    TabulatedSize{10, 230, 300, 69000},
    TabulatedSize{20, 420, 300, 126000},
    TabulatedSize{30, 466, 300, 139500},
};

std::vector<std::string> string_or_list(const json& entry, const char* key,
                                        const std::string& fallback)
{
  if (!entry.contains(key))
    return {fallback};
  const auto& value = entry.at(key);
  try {
    if (value.is_array()) {
      std::vector<std::string> out;
      for (const auto& v : value)
        out.push_back(v.get<std::string>());
      if (out.empty())
        throw ConfigError(std::string("'") + key + "' list is empty");
      return out;
    }
    return {value.get<std::string>()};
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback)
{
  if (!j.contains(key))
    return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void apply_flags(PlanEntry& entry, const FlagOverrides& flags)
{
  auto& c = entry.config;
  if (flags.model)
    c.model = parse_model_kind(*flags.model);
  if (flags.strategy)
    c.strategy = parse_strategy(*flags.strategy);
  if (flags.seed)
    c.seed = *flags.seed;
  if (flags.budget)
    c.max_evaluations = *flags.budget;
  if (flags.generations)
    c.max_generations = *flags.generations;
  if (flags.pop_size)
    c.population_size = *flags.pop_size;
  if (flags.scale_factor)
    c.scale_factor = *flags.scale_factor;
  if (flags.ref_points)
    c.reference_points = *flags.ref_points;
  if (flags.mutation_prob)
    c.mutation = MutationRate::parse(*flags.mutation_prob);
  if (flags.baseline)
    entry.baseline = *flags.baseline;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw DataError("cannot write " + path.string());
  out << content;
  if (!out)
    throw DataError("write failed for " + path.string());
}

std::string run_stem(const PlanEntry& entry, std::uint64_t seed)
{
  return entry.tag() + "_seed" + std::to_string(seed);
}

} // namespace

std::string PlanEntry::tag() const
{
  std::string out = problem + "_n" + std::to_string(n_objectives);
  if (baseline)
    return out + "_NSGA-II";
  return out + "_" + std::string(to_string(config.model)) + "_" +
         std::string(to_string(config.strategy));
}

RunConfig default_config(const ProblemSpec& spec, std::size_t n_objectives)
{
  RunConfig config;
  if (!spec.many_objective)
    return config;
  for (const auto& row : kManyObjectiveSizes) {
    if (row.n_objectives == n_objectives) {
      config.population_size = row.population;
      config.max_generations = row.generations;
      config.max_evaluations = row.evaluations;
    }
  }
  return config;
}

ExperimentPlan parse_config(const json& document, const FlagOverrides& flags,
                            const ProblemRegistry& registry)
{
  if (!document.is_null() && !document.is_object())
    throw ConfigError("plan must be a JSON object");
  const json doc = document.is_null() ? json::object() : document;
  for (const auto& [key, value] : doc.items()) {
    if (key != "output_dir" && key != "repetitions" && key != "defaults" && key != "entries")
      throw ConfigError("unknown plan key '" + key + "'");
  }

  ExperimentPlan plan;
  plan.output_dir = get_or<std::string>(doc, "output_dir", plan.output_dir.string());
  plan.repetitions = get_or<std::size_t>(doc, "repetitions", 1);
  if (flags.out)
    plan.output_dir = *flags.out;
  if (flags.runs)
    plan.repetitions = *flags.runs;
  if (plan.repetitions == 0)
    throw ConfigError("repetition count must be positive");

  const json defaults = doc.contains("defaults") ? doc.at("defaults") : json::object();
  json entries = doc.contains("entries") ? doc.at("entries") : json::array();
  if (!entries.is_array())
    throw ConfigError("'entries' must be an array");
  if (entries.empty())
    entries.push_back(json::object());

  for (const auto& raw : entries) {
    if (!raw.is_object())
      throw ConfigError("each plan entry must be a JSON object");
    for (const auto& [key, value] : raw.items()) {
      if (key != "problem" && key != "objectives" && key != "model" && key != "strategy" &&
          key != "seed" && key != "baseline" && key != "config")
        throw ConfigError("unknown entry key '" + key + "'");
    }
    const auto problem = flags.problem ? *flags.problem : get_or<std::string>(raw, "problem", "");
    if (problem.empty())
      throw ConfigError("no problem given; expected one of the registered names (see 'problems')");
    const auto& spec = registry.find(problem);
    const auto n = flags.objectives ? *flags.objectives
                                    : get_or<std::size_t>(raw, "objectives", spec.default_objectives);
    static_cast<void>(registry.build(problem, n));

    RunConfig base = default_config(spec, n);
    base = run_config_from_json(defaults, base);
    if (raw.contains("config"))
      base = run_config_from_json(raw.at("config"), base);
    base.seed = get_or<std::uint64_t>(raw, "seed", base.seed);

    const auto models = string_or_list(raw, "model", std::string(to_string(base.model)));
    const auto strategies =
        string_or_list(raw, "strategy", std::string(to_string(base.strategy)));
    for (const auto& model : models) {
      for (const auto& strategy : strategies) {
        PlanEntry entry;
        entry.problem = problem;
        entry.n_objectives = n;
        entry.config = base;
        entry.config.model = parse_model_kind(model);
        entry.config.strategy = parse_strategy(strategy);
        entry.baseline = get_or<bool>(raw, "baseline", false);
        apply_flags(entry, flags);
        validate(entry.config);
        plan.entries.push_back(std::move(entry));
      }
    }
  }
  return plan;
}

ExperimentPlan parse_config(const std::optional<std::filesystem::path>& path,
                            const FlagOverrides& flags, const ProblemRegistry& registry)
{
  if (!path)
    return parse_config(json(nullptr), flags, registry);
  std::ifstream in(*path);
  if (!in)
    throw ConfigError("cannot open plan file " + path->string());
  json document;
  try {
    document = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("plan file " + path->string() + " is not valid JSON: " + e.what());
  }
  return parse_config(document, flags, registry);
}

RunResult run_entry(const PlanEntry& entry, std::uint64_t seed, const ProblemRegistry& registry)
{
  const auto problem = registry.build(entry.problem, entry.n_objectives);
  RunConfig config = entry.config;
  config.seed = seed;
  return entry.baseline ? baseline_pair(problem, config) : run(problem, config);
}

double median(std::vector<double> values)
{
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  if (values.empty())
    return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const auto mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

ExecutionReport execute(const ExperimentPlan& plan, const ProblemRegistry& registry,
                        std::ostream& table)
{
  std::filesystem::create_directories(plan.output_dir);
  ExecutionReport report;

  for (const auto& entry : plan.entries) {
    EntryOutcome outcome;
    outcome.entry = entry;
    for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
      const auto seed = entry.config.seed + rep;
      const auto stem = run_stem(entry, seed);
      try {
        const auto result = run_entry(entry, seed, registry);
        std::ostringstream trace;
        write_trace_csv(trace, result.trace);
        write_file(plan.output_dir / (stem + ".trace.csv"), trace.str());
        write_file(plan.output_dir / (stem + ".summary.json"), summary_json(result).dump(2) + "\n");
        for (std::size_t k = 0; k < 2; ++k) {
          std::ostringstream archive;
          write_archive(archive, result.archives[k]);
          write_file(plan.output_dir / (stem + ".task" + std::to_string(k + 1) + ".archive"),
                     archive.str());
        }
        outcome.finals.push_back(result.final_indicator);
      } catch (const std::exception& e) {
        outcome.errors.push_back(stem + ": " + e.what());
      }
    }
    for (std::size_t k = 0; k < 2; ++k) {
      std::vector<double> values;
      for (const auto& f : outcome.finals)
        values.push_back(f[k]);
      outcome.median[k] = median(std::move(values));
    }
    report.outcomes.push_back(std::move(outcome));
  }

  std::ostringstream csv;
  csv << "entry,problem,objectives,algorithm,runs,failed,median_task1,median_task2\n";
  for (const auto& o : report.outcomes) {
    const auto algorithm =
        o.entry.baseline ? std::string("NSGA-II")
                         : std::string(to_string(o.entry.config.model)) + "/" +
                               std::string(to_string(o.entry.config.strategy));
    csv << o.entry.tag() << ',' << o.entry.problem << ',' << o.entry.n_objectives << ','
        << algorithm << ',' << o.finals.size() << ',' << o.errors.size() << ','
        << format_number(o.median[0]) << ',' << format_number(o.median[1]) << '\n';
  }
  write_file(plan.output_dir / "summary.csv", csv.str());

  table << std::left << std::setw(40) << "entry" << std::setw(6) << "runs" << std::setw(24)
        << "median task1" << "median task2\n";
  bool any_failed = false;
  for (const auto& o : report.outcomes) {
    table << std::setw(40) << o.entry.tag() << std::setw(6) << o.finals.size() << std::setw(24)
          << format_number(o.median[0]) << format_number(o.median[1]) << '\n';
    for (const auto& error : o.errors)
      table << "  failed: " << error << '\n';
    any_failed = any_failed || !o.errors.empty();
  }
  report.exit_code = any_failed ? kExitPartialFailure : kExitOk;
  return report;
}

std::vector<DiagnosticsRow> diagnostics(const ExperimentPlan& plan,
                                        const ProblemRegistry& registry)
{
  std::vector<DiagnosticsRow> rows;
  for (const auto kind : kAllModelKinds) {
    for (const auto& base : plan.entries) {
      if (base.baseline)
        continue;
      PlanEntry entry = base;
      entry.config.model = kind;
      std::array<std::vector<double>, 2> errors;
      for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
        const auto result = run_entry(entry, entry.config.seed + rep, registry);
        for (const auto& row : result.trace)
          if (row.generation > 0)
            errors[row.task - 1].push_back(row.fitting_error);
      }
      for (std::size_t k = 0; k < 2; ++k) {
        const auto avg = average_error(errors[k]);
        rows.push_back({kind, entry.problem, k + 1, avg.value, avg.valid});
      }
    }
  }
  return rows;
}

AverageError population_error(std::span<const Vector> genotypes, ModelKind kind)
{
  const auto model = fit(genotypes, kind);
  const double e = fitting_error(genotypes, model);
  return average_error(std::span<const double>(&e, 1));
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRow>& rows)
{
  out << "model,problem,task,e_avg,valid\n";
  for (const auto& row : rows)
    out << to_string(row.model) << ',' << row.problem << ',' << row.task << ','
        << format_number(row.e_avg) << ',' << (row.valid ? "true" : "false") << '\n';
}

} // namespace emtpd::experiment
