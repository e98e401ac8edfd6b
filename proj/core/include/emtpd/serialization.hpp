#pragma once

#include <emtpd/core.hpp>
#include <emtpd/evolve.hpp>
#include <emtpd/probmodel.hpp>

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

namespace emtpd {

/// Shortest round-trip decimal form of `value` ("nan", "inf", "-inf" for specials).
std::string format_number(double value);

nlohmann::json to_json(const RunConfig& config);
/// Reads the keys present in `j` on top of `base`; unknown keys throw ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

nlohmann::json to_json(const FittedModel& model);
FittedModel fitted_model_from_json(const nlohmann::json& j);

/// Config echo, seed, final indicators and counters of a run (no archives, no trace).
nlohmann::json summary_json(const RunResult& result);

/// Header plus one row per TraceRow.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

/// One objective vector per line, space separated.
void write_archive(std::ostream& out, const std::vector<Individual>& archive);

} // namespace emtpd
