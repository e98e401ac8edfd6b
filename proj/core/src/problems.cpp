#include <emtpd/errors.hpp>
#include <emtpd/problems.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace emtpd {

namespace {

struct Composition {
  std::string_view name;
  MafFunction first;
  bool first_shifted;
  MafFunction second;
  bool second_shifted;
  SimilarityBand band;
};

constexpr std::array kCompositions{
    Composition{"MaF-HS1", MafFunction::MaF3, false, MafFunction::MaF4, false, SimilarityBand::HS},
    Composition{"MaF-HS2", MafFunction::MaF4, false, MafFunction::MaF6, false, SimilarityBand::HS},
    Composition{"MaF-MS1", MafFunction::MaF1, false, MafFunction::MaF5, true, SimilarityBand::MS},
    Composition{"MaF-MS2", MafFunction::MaF5, false, MafFunction::MaF6, true, SimilarityBand::MS},
    Composition{"MaF-LS1", MafFunction::MaF4, false, MafFunction::MaF5, false, SimilarityBand::LS},
    Composition{"MaF-LS2", MafFunction::MaF3, false, MafFunction::MaF6, false, SimilarityBand::LS},
};

constexpr std::size_t kToyDimension = 10;

TaskDefinition toy_task(std::string name, double centre)
{
  TaskDefinition task;
  task.name = std::move(name);
  task.native_dim = kToyDimension;
  task.n_objectives = 2;
  task.lower_bounds.assign(kToyDimension, 0.0);
  task.upper_bounds.assign(kToyDimension, 1.0);
  task.evaluator = [centre](std::span<const double> x) {
    double g = 0.0;
    for (std::size_t j = 1; j < x.size(); ++j)
      g += (x[j] - centre) * (x[j] - centre);
    return Vector{(1.0 + g) * x[0], (1.0 + g) * (1.0 - std::sqrt(x[0]))};
  };
  task.pf_sampler = [](std::size_t count, std::uint64_t) {
    std::vector<Vector> front;
    front.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double t =
          count == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(count - 1);
      front.push_back({t, 1.0 - std::sqrt(t)});
    }
    return front;
  };
  return task;
}

} // namespace

TaskDefinition shift_wrapper(TaskDefinition base, double r)
{
  validate(base);
  const double narrowest = [&] {
    double w = base.upper_bounds[0] - base.lower_bounds[0];
    for (std::size_t j = 1; j < base.native_dim; ++j)
      w = std::min(w, base.upper_bounds[j] - base.lower_bounds[j]);
    return w;
  }();
  if (!(r >= 0.0) || !(r < narrowest))
    throw ConfigError("shift must lie in [0, smallest box width)");
  if (r == 0.0)
    return base;

  TaskDefinition shifted = base;
  shifted.name = base.name + "*";
  shifted.evaluator = [inner = base.evaluator, lo = base.lower_bounds, hi = base.upper_bounds,
                       r](std::span<const double> p) {
    Vector z(p.begin(), p.end());
    for (std::size_t j = 0; j < z.size(); ++j)
      z[j] = std::clamp(z[j] - r, lo[j], hi[j]);
    return inner(z);
  };
  return shifted;
}

MultiTaskProblem build_mtmaop(std::string_view name, std::size_t n_objectives)
{
  for (const auto& c : kCompositions) {
    if (c.name != name)
      continue;
    auto task = [n_objectives](MafFunction which, bool shifted) {
      auto t = make_maf_task(which, n_objectives);
      return shifted ? shift_wrapper(std::move(t), kMafShift) : t;
    };
    return MultiTaskProblem{std::string(name), task(c.first, c.first_shifted),
                            task(c.second, c.second_shifted)};
  }
  std::ostringstream message;
  message << "unknown many-objective composition '" << name << "'; expected one of:";
  for (const auto& c : kCompositions)
    message << ' ' << c.name;
  throw ConfigError(message.str());
}

MultiTaskProblem toy_problem(double offset)
{
  if (!(offset >= 0.0 && offset <= 1.0))
    throw ConfigError("toy problem offset must lie in [0,1]");
  return MultiTaskProblem{"Toy", toy_task("Toy-T1", 0.5 - offset / 2.0),
                          toy_task("Toy-T2", 0.5 + offset / 2.0)};
}

ProblemRegistry ProblemRegistry::with_builtin()
{
  ProblemRegistry registry;
  for (const auto& c : kCompositions) {
    const std::string name(c.name);
    registry.add(ProblemSpec{name,
                             [name](std::size_t n) { return build_mtmaop(name, n); },
                             c.band, true, 10});
  }
  const std::array<std::pair<const char*, double>, 3> toys{
      {{"Toy-HS", 0.0}, {"Toy-MS", 0.4}, {"Toy-LS", 0.8}}};
  const std::array bands{SimilarityBand::HS, SimilarityBand::MS, SimilarityBand::LS};
  for (std::size_t i = 0; i < toys.size(); ++i) {
    const auto [name, offset] = toys[i];
    registry.add(ProblemSpec{name,
                             [offset, name = std::string(name)](std::size_t n) {
                               if (n != 2)
                                 throw ConfigError("toy problems are bi-objective");
                               auto problem = toy_problem(offset);
                               problem.name = name;
                               return problem;
                             },
                             bands[i], false, 2});
  }
  return registry;
}

void ProblemRegistry::add(ProblemSpec spec)
{
  if (!spec.builder)
    throw ConfigError("problem '" + spec.name + "' has no builder");
  const auto name = spec.name;
  if (!specs_.emplace(name, std::move(spec)).second)
    throw ConfigError("problem '" + name + "' is already registered");
}

bool ProblemRegistry::contains(std::string_view name) const
{
  return specs_.find(name) != specs_.end();
}

const ProblemSpec& ProblemRegistry::find(std::string_view name) const
{
  const auto it = specs_.find(name);
  if (it != specs_.end())
    return it->second;
  std::ostringstream message;
  message << "unknown problem '" << name << "'; expected one of:";
  for (const auto& [known, spec] : specs_)
    message << ' ' << known;
  throw ConfigError(message.str());
}

std::vector<std::string> ProblemRegistry::names() const
{
  std::vector<std::string> out;
  out.reserve(specs_.size());
  for (const auto& [name, spec] : specs_)
    out.push_back(name);
  return out;
}

MultiTaskProblem ProblemRegistry::build(std::string_view name, std::size_t n_objectives) const
{
  return find(name).builder(n_objectives);
}

} // namespace emtpd
