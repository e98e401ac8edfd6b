#include <emtpd/errors.hpp>
#include <emtpd/experiment.hpp>
#include <emtpd/metrics.hpp>
#include <emtpd/problems.hpp>
#include <emtpd/serialization.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace ex = emtpd::experiment;

namespace {

// Registers the plan flags shared by `run` and `diagnostics`.
void add_plan_flags(CLI::App& cmd, std::optional<std::string>& config, ex::FlagOverrides& f)
{
  cmd.add_option("--config", config, "JSON plan file");
  cmd.add_option("--problem", f.problem, "Problem name (see `emtpd problems`)");
  cmd.add_option("--objectives", f.objectives, "Number of objectives n");
  cmd.add_option("--model", f.model, "Gaussian, Exponential, Gamma or Beta");
  cmd.add_option("--strategy", f.strategy, "PD, PD-1, SR, MR, SH or MH");
  cmd.add_option("--seed", f.seed, "First seed; repetitions use seed+1, ...");
  cmd.add_option("--runs", f.runs, "Repetitions per entry");
  cmd.add_option("--budget", f.budget, "Maximal function evaluations");
  cmd.add_option("--generations", f.generations, "Maximal generations");
  cmd.add_option("--pop-size", f.pop_size, "Total population size N (even)");
  cmd.add_option("--scale-factor", f.scale_factor, "Noise scale factor F");
  cmd.add_option("--out", f.out, "Output directory");
  cmd.add_option("--ref-points", f.ref_points, "Pareto-front reference sample size");
  cmd.add_option("--mutation-prob", f.mutation_prob, "Per-coordinate mutation probability: 1/N, 1/D or a number");
  cmd.add_flag("--baseline", f.baseline, "Run the single-task NSGA-II baseline instead");
}

std::optional<std::filesystem::path> as_path(const std::optional<std::string>& s)
{
  if (!s)
    return std::nullopt;
  return std::filesystem::path(*s);
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Evolutionary multitasking via probability-distribution knowledge transfer"};
  app.require_subcommand(1);

  std::optional<std::string> run_config;
  ex::FlagOverrides run_flags;
  auto* run_cmd = app.add_subcommand("run", "Execute an experiment plan");
  add_plan_flags(*run_cmd, run_config, run_flags);

  std::optional<std::string> diag_config;
  ex::FlagOverrides diag_flags;
  auto* diag_cmd = app.add_subcommand("diagnostics", "Fitting-error report for every model kind");
  add_plan_flags(*diag_cmd, diag_config, diag_flags);

  std::string sim_problem;
  std::optional<std::size_t> sim_objectives;
  std::size_t sim_samples = 10000;
  std::uint64_t sim_seed = 0;
  auto* sim_cmd = app.add_subcommand("similarity", "Rank-correlation similarity of a problem's tasks");
  sim_cmd->add_option("--problem", sim_problem, "Problem name")->required();
  sim_cmd->add_option("--objectives", sim_objectives, "Number of objectives n");
  sim_cmd->add_option("--samples", sim_samples, "Number of random genotypes K");
  sim_cmd->add_option("--seed", sim_seed, "Random seed");

  auto* list_cmd = app.add_subcommand("problems", "List registered problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ex::kExitOk : ex::kExitUsage;
  }

  const auto registry = emtpd::ProblemRegistry::with_builtin();
  try {
    if (*run_cmd) {
      const auto plan = ex::parse_config(as_path(run_config), run_flags, registry);
      return ex::execute(plan, registry, std::cout).exit_code;
    }
    if (*diag_cmd) {
      const auto plan = ex::parse_config(as_path(diag_config), diag_flags, registry);
      const auto rows = ex::diagnostics(plan, registry);
      std::filesystem::create_directories(plan.output_dir);
      std::ofstream csv(plan.output_dir / "diagnostics.csv", std::ios::binary);
      ex::write_diagnostics_csv(csv, rows);
      ex::write_diagnostics_csv(std::cout, rows);
      return csv ? ex::kExitOk : ex::kExitPartialFailure;
    }
    if (*sim_cmd) {
      const auto& spec = registry.find(sim_problem);
      const auto problem =
          registry.build(sim_problem, sim_objectives.value_or(spec.default_objectives));
      emtpd::Rng rng(sim_seed);
      const double sim = emtpd::similarity(problem, sim_samples, rng);
      const auto cls = emtpd::classify_similarity(sim);
      std::cout << "problem " << problem.name << "\nsim " << emtpd::format_number(sim)
                << "\nband " << emtpd::to_string(cls.band)
                << (cls.out_of_band ? " (sim <= 0, outside all bands)" : "") << '\n';
      return ex::kExitOk;
    }
    if (*list_cmd) {
      for (const auto& name : registry.names()) {
        const auto& spec = registry.find(name);
        std::cout << name << "  class=" << emtpd::to_string(spec.similarity_class)
                  << "  default_objectives=" << spec.default_objectives << '\n';
      }
      return ex::kExitOk;
    }
  } catch (const emtpd::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return ex::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ex::kExitPartialFailure;
  }
  return ex::kExitUsage;
}
