#include <emtpd/errors.hpp>
#include <emtpd/serialization.hpp>

#include <charconv>
#include <cmath>
#include <ostream>

namespace emtpd {

using nlohmann::json;

std::string format_number(double value)
{
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{})
    throw InternalError("number formatting failed");
  return std::string(buffer, end);
}

namespace {

// JSON has no NaN/inf; they are written as null.
json number_or_null(double value)
{
  return std::isfinite(value) ? json(value) : json(nullptr);
}

template <typename T>
T read_as(const json& j, const char* key)
{
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

} // namespace

json to_json(const RunConfig& c)
{
  return json{
      {"population_size", c.population_size},
      {"max_generations", c.max_generations},
      {"max_evaluations", c.max_evaluations},
      {"scale_factor", c.scale_factor},
      {"mutation_probability", c.mutation.to_string()},
      {"eta_m", c.eta_m},
      {"crossover_probability", c.crossover_probability},
      {"eta_c", c.eta_c},
      {"model", to_string(c.model)},
      {"strategy", to_string(c.strategy)},
      {"indicator", to_string(c.indicator)},
      {"reference_points", c.reference_points},
      {"knowledge_reference_points", c.knowledge_reference_points},
      {"seed", c.seed},
  };
}

RunConfig run_config_from_json(const json& j, RunConfig c)
{
  if (!j.is_object())
    throw ConfigError("run config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "population_size")
      c.population_size = read_as<std::size_t>(j, "population_size");
    else if (key == "max_generations")
      c.max_generations = read_as<std::size_t>(j, "max_generations");
    else if (key == "max_evaluations")
      c.max_evaluations = read_as<std::size_t>(j, "max_evaluations");
    else if (key == "scale_factor")
      c.scale_factor = read_as<double>(j, "scale_factor");
    else if (key == "mutation_probability")
      c.mutation = value.is_number() ? MutationRate::parse(format_number(value.get<double>()))
                                     : MutationRate::parse(read_as<std::string>(j, "mutation_probability"));
    else if (key == "eta_m")
      c.eta_m = read_as<double>(j, "eta_m");
    else if (key == "crossover_probability")
      c.crossover_probability = read_as<double>(j, "crossover_probability");
    else if (key == "eta_c")
      c.eta_c = read_as<double>(j, "eta_c");
    else if (key == "model")
      c.model = parse_model_kind(read_as<std::string>(j, "model"));
    else if (key == "strategy")
      c.strategy = parse_strategy(read_as<std::string>(j, "strategy"));
    else if (key == "indicator")
      c.indicator = parse_indicator(read_as<std::string>(j, "indicator"));
    else if (key == "reference_points")
      c.reference_points = read_as<std::size_t>(j, "reference_points");
    else if (key == "knowledge_reference_points")
      c.knowledge_reference_points = read_as<std::size_t>(j, "knowledge_reference_points");
    else if (key == "seed")
      c.seed = read_as<std::uint64_t>(j, "seed");
    else
      throw ConfigError("unknown run config key '" + key + "'");
  }
  return c;
}

json to_json(const FittedModel& model)
{
  json params = json::array();
  for (const auto& p : model.params)
    params.push_back(json::array({p.first, p.second}));
  return json{{"kind", to_string(model.kind)}, {"params", params}, {"mode", model.mode_point}};
}

FittedModel fitted_model_from_json(const json& j)
{
  try {
    const auto kind = parse_model_kind(j.at("kind").get<std::string>());
    std::vector<UnivariateFit> params;
    for (const auto& p : j.at("params"))
      params.push_back(UnivariateFit{kind, p.at(0).get<double>(), p.at(1).get<double>()});
    return make_model(kind, std::move(params));
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  }
}

json summary_json(const RunResult& r)
{
  json models = json::array();
  for (const auto& m : r.final_models)
    models.push_back(to_json(m));
  return json{
      {"problem", r.problem},
      {"algorithm", r.algorithm},
      {"seed", r.seed},
      {"config", to_json(r.config)},
      {"indicators", {to_string(r.indicators[0]), to_string(r.indicators[1])}},
      {"final_indicator",
       {number_or_null(r.final_indicator[0]), number_or_null(r.final_indicator[1])}},
      {"archive_sizes", {r.archives[0].size(), r.archives[1].size()}},
      {"evaluations", r.evaluations},
      {"generations", r.generations},
      {"wall_seconds", r.wall_seconds},
      {"final_models", models},
  };
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace)
{
  out << "generation,evaluations,task,igd_or_igdplus,e_g,d1,mean_w\n";
  for (const auto& row : trace) {
    out << row.generation << ',' << row.evaluations << ',' << row.task << ','
        << format_number(row.indicator) << ',' << format_number(row.fitting_error) << ','
        << format_number(row.d1) << ',' << format_number(row.mean_w) << '\n';
  }
}

void write_archive(std::ostream& out, const std::vector<Individual>& archive)
{
  for (const auto& ind : archive) {
    for (std::size_t k = 0; k < ind.objectives.size(); ++k) {
      if (k > 0)
        out << ' ';
      out << format_number(ind.objectives[k]);
    }
    out << '\n';
  }
}

} // namespace emtpd
