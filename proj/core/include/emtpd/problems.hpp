#pragma once

#include <emtpd/core.hpp>
#include <emtpd/metrics.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emtpd {

enum class MafFunction { MaF1, MaF3, MaF4, MaF5, MaF6 };

/// Distance-variable count of the MaF suite; native dimension is n + 9.
inline constexpr std::size_t kMafDistanceVariables = 10;
/// Per-coordinate decision-space shift of the starred MaF variants.
inline constexpr double kMafShift = 0.05;

std::string_view to_string(MafFunction which);

/// Objective vector of an MaF function. The last x.size() - n + 1 coordinates are
/// distance variables; x must lie in [0,1]^D with D >= n.
Vector maf_evaluate(MafFunction which, std::span<const double> x, std::size_t n_objectives);

/// Points on the analytic front of the given MaF function.
std::vector<Vector> maf_pareto_front(MafFunction which, std::size_t n_objectives,
                                     std::size_t count, std::uint64_t seed);

/// Unit-box task with native dimension n + kMafDistanceVariables - 1.
TaskDefinition make_maf_task(MafFunction which, std::size_t n_objectives);

/// Evaluates `base` at clamp(p - r) instead of p; the front sampler is inherited.
TaskDefinition shift_wrapper(TaskDefinition base, double r);

/// The six two-task many-objective compositions: MaF-HS1, MaF-HS2, MaF-MS1,
/// MaF-MS2, MaF-LS1, MaF-LS2.
MultiTaskProblem build_mtmaop(std::string_view name, std::size_t n_objectives);

/// Two bi-objective 10-variable tasks, f1 = (1+g) x1, f2 = (1+g)(1 - sqrt(x1)),
/// g = sum_{j>=2} (x_j - c)^2, with c = 0.5 -/+ offset/2 for task 1/2.
MultiTaskProblem toy_problem(double offset);

struct ProblemSpec {
  std::string name;
  std::function<MultiTaskProblem(std::size_t n_objectives)> builder;
  SimilarityBand similarity_class = SimilarityBand::HS;
  /// True for the many-objective MaF compositions (tabulated N/G/FEs per n).
  bool many_objective = false;
  std::size_t default_objectives = 2;
};

/// Name -> builder lookup; the CLI's --problem vocabulary. External suites plug
/// in through add().
class ProblemRegistry {
public:
  /// The six MaF compositions plus Toy-HS/Toy-MS/Toy-LS (offsets 0, 0.4, 0.8).
  static ProblemRegistry with_builtin();

  /// Throws ConfigError on a duplicate name.
  void add(ProblemSpec spec);
  [[nodiscard]] bool contains(std::string_view name) const;
  /// Throws ConfigError listing the known names.
  [[nodiscard]] const ProblemSpec& find(std::string_view name) const;
  [[nodiscard]] std::vector<std::string> names() const;
  [[nodiscard]] MultiTaskProblem build(std::string_view name, std::size_t n_objectives) const;

private:
  std::map<std::string, ProblemSpec, std::less<>> specs_;
};

} // namespace emtpd
