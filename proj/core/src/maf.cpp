#include <emtpd/errors.hpp>
#include <emtpd/problems.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

// MaF1/3/4/5/6 follow the definitions of the MaF many-objective test suite
// (Cheng et al., 2017) as distributed with PlatEMO.

namespace emtpd {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// DTLZ2-style spherical shape from M-1 angles:
// y_1 = prod cos, y_m = prod_{i<M-m+1} cos * sin(theta_{M-m+1}), y_M = sin(theta_1).
Vector spherical_shape(std::span<const double> angles, std::size_t n)
{
  Vector y(n, 1.0);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t cos_terms = n - 1 - m;
    for (std::size_t i = 0; i < cos_terms; ++i)
      y[m] *= std::cos(angles[i]);
    if (m > 0)
      y[m] *= std::sin(angles[cos_terms]);
  }
  return y;
}

// DTLZ1-style linear shape, sums to one.
Vector linear_shape(std::span<const double> x, std::size_t n)
{
  Vector h(n, 1.0);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t prod_terms = n - 1 - m;
    for (std::size_t i = 0; i < prod_terms; ++i)
      h[m] *= x[i];
    if (m > 0)
      h[m] *= 1.0 - x[prod_terms];
  }
  return h;
}

double sphere_g(std::span<const double> distance_vars)
{
  double g = 0.0;
  for (const auto x : distance_vars)
    g += (x - 0.5) * (x - 0.5);
  return g;
}

double rastrigin_g(std::span<const double> distance_vars)
{
  double sum = static_cast<double>(distance_vars.size());
  for (const auto x : distance_vars)
    sum += (x - 0.5) * (x - 0.5) - std::cos(20.0 * std::numbers::pi * (x - 0.5));
  return 100.0 * sum;
}

Vector random_orthant_direction(std::size_t n, Rng& rng)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector y(n);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& v : y) {
      v = std::abs(normal(rng));
      norm += v * v;
    }
  } while (!(norm > 0.0));
  norm = std::sqrt(norm);
  for (auto& v : y)
    v /= norm;
  return y;
}

} // namespace

std::string_view to_string(MafFunction which)
{
  switch (which) {
  case MafFunction::MaF1: return "MaF1";
  case MafFunction::MaF3: return "MaF3";
  case MafFunction::MaF4: return "MaF4";
  case MafFunction::MaF5: return "MaF5";
  case MafFunction::MaF6: return "MaF6";
  }
  return "?";
}

Vector maf_evaluate(MafFunction which, std::span<const double> x, std::size_t n)
{
  if (n < 2)
    throw ConfigError("MaF functions need at least two objectives");
  if (x.size() < n)
    throw ConfigError(std::string(to_string(which)) + " with " + std::to_string(n) +
                      " objectives needs at least " + std::to_string(n) + " variables");
  const auto position = x.first(n - 1);
  const auto distance = x.subspan(n - 1);
  Vector f(n);

  switch (which) {
  case MafFunction::MaF1: {
    const double g = sphere_g(distance);
    const auto h = linear_shape(position, n);
    for (std::size_t m = 0; m < n; ++m)
      f[m] = (1.0 + g) * (1.0 - h[m]);
    break;
  }
  case MafFunction::MaF3: {
    const double g = rastrigin_g(distance);
    Vector angles(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      angles[i] = position[i] * kHalfPi;
    const auto y = spherical_shape(angles, n);
    for (std::size_t m = 0; m + 1 < n; ++m)
      f[m] = std::pow((1.0 + g) * y[m], 4.0);
    f[n - 1] = std::pow((1.0 + g) * y[n - 1], 2.0);
    break;
  }
  case MafFunction::MaF4: {
    const double g = rastrigin_g(distance);
    Vector angles(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      angles[i] = position[i] * kHalfPi;
    const auto y = spherical_shape(angles, n);
    for (std::size_t m = 0; m < n; ++m)
      f[m] = std::ldexp((1.0 + g) * (1.0 - y[m]), static_cast<int>(m + 1));
    break;
  }
  case MafFunction::MaF5: {
    const double g = sphere_g(distance);
    Vector angles(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      angles[i] = std::pow(position[i], 100.0) * kHalfPi;
    const auto y = spherical_shape(angles, n);
    for (std::size_t m = 0; m < n; ++m)
      f[m] = std::ldexp((1.0 + g) * y[m], static_cast<int>(n - m));
    break;
  }
  case MafFunction::MaF6: {
    // Degenerate front of intrinsic dimension I = 2.
    const double g = sphere_g(distance);
    Vector angles(n - 1);
    angles[0] = position[0] * kHalfPi;
    for (std::size_t i = 1; i + 1 < n; ++i)
      angles[i] = kHalfPi * (1.0 + 2.0 * g * position[i]) / (2.0 + 2.0 * g);
    const auto y = spherical_shape(angles, n);
    for (std::size_t m = 0; m < n; ++m)
      f[m] = (1.0 + 100.0 * g) * y[m];
    break;
  }
  }
  return f;
}

std::vector<Vector> maf_pareto_front(MafFunction which, std::size_t n, std::size_t count,
                                     std::uint64_t seed)
{
  std::vector<Vector> front;
  front.reserve(count);
  Rng rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    Vector f(n);
    switch (which) {
    case MafFunction::MaF1: {
      // Uniform on the unit simplex, f = 1 - h.
      std::exponential_distribution<double> exponential(1.0);
      Vector h(n);
      double total = 0.0;
      for (auto& v : h) {
        v = exponential(rng);
        total += v;
      }
      for (std::size_t m = 0; m < n; ++m)
        f[m] = 1.0 - h[m] / total;
      break;
    }
    case MafFunction::MaF3: {
      const auto y = random_orthant_direction(n, rng);
      for (std::size_t m = 0; m + 1 < n; ++m)
        f[m] = std::pow(y[m], 4.0);
      f[n - 1] = y[n - 1] * y[n - 1];
      break;
    }
    case MafFunction::MaF4: {
      const auto y = random_orthant_direction(n, rng);
      for (std::size_t m = 0; m < n; ++m)
        f[m] = std::ldexp(1.0 - y[m], static_cast<int>(m + 1));
      break;
    }
    case MafFunction::MaF5: {
      const auto y = random_orthant_direction(n, rng);
      for (std::size_t m = 0; m < n; ++m)
        f[m] = std::ldexp(y[m], static_cast<int>(n - m));
      break;
    }
    case MafFunction::MaF6: {
      // One free angle on a lattice, the others at pi/4.
      Vector angles(n - 1, std::numbers::pi / 4.0);
      const double t = count == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(count - 1);
      angles[0] = t * kHalfPi;
      f = spherical_shape(angles, n);
      break;
    }
    }
    front.push_back(std::move(f));
  }
  return front;
}

TaskDefinition make_maf_task(MafFunction which, std::size_t n)
{
  if (n < 2)
    throw ConfigError("MaF tasks need at least two objectives");
  const auto dim = n + kMafDistanceVariables - 1;
  TaskDefinition task;
  task.name = std::string(to_string(which));
  task.native_dim = dim;
  task.n_objectives = n;
  task.lower_bounds.assign(dim, 0.0);
  task.upper_bounds.assign(dim, 1.0);
  task.evaluator = [which, n](std::span<const double> x) { return maf_evaluate(which, x, n); };
  task.pf_sampler = [which, n](std::size_t count, std::uint64_t seed) {
    return maf_pareto_front(which, n, count, seed);
  };
  return task;
}

} // namespace emtpd
