#pragma once

#include <emtpd/core.hpp>

#include <span>
#include <vector>

namespace emtpd {

/// Pareto dominance for minimization: no worse everywhere, strictly better somewhere.
bool dominates(std::span<const double> a, std::span<const double> b);

using Fronts = std::vector<std::vector<std::size_t>>;

/// Deb's fast non-dominated sort. Fronts hold indices into `objectives`, each
/// front in ascending index order.
Fronts fast_nondominated_sort(std::span<const Vector> objectives);
Fronts fast_nondominated_sort(std::span<const Individual> population);

/// Non-domination level of every point (0 = first front) by efficient
/// sequential-search sorting; O(K) memory, suited to large samples.
std::vector<std::size_t> nondomination_levels(std::span<const Vector> objectives);

/// Crowding distance of each member of one front (indices into `objectives`).
/// Boundary points get +inf; an objective with zero range contributes nothing.
std::vector<double> crowding_distance(std::span<const Vector> objectives,
                                      std::span<const std::size_t> front);
std::vector<double> crowding_distance(std::span<const Individual> front);

struct Survivors {
  std::vector<std::size_t> indices;
  std::vector<std::size_t> ranks;
  std::vector<double> crowding;
};

/// (mu + lambda) truncation to `count` members: whole fronts first, the straddling
/// front by descending crowding distance, ties by index.
Survivors select_survivors(std::span<const Vector> objectives, std::size_t count);

/// Truncates parents followed by offspring to `subpop_size` and marks rank/crowding.
std::vector<Individual> environmental_selection(std::vector<Individual> parents,
                                                std::vector<Individual> offspring,
                                                std::size_t subpop_size);

/// Members of the first front, in their original order.
std::vector<Individual> nondominated_subset(std::span<const Individual> population);

} // namespace emtpd
