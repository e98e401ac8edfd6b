#include <emtpd/errors.hpp>
#include <emtpd/selection.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace emtpd {

namespace {

std::vector<Vector> objectives_of(std::span<const Individual> population)
{
  std::vector<Vector> out;
  out.reserve(population.size());
  for (const auto& ind : population)
    out.push_back(ind.objectives);
  return out;
}

} // namespace

bool dominates(std::span<const double> a, std::span<const double> b)
{
  bool strictly_better = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k])
      return false;
    if (a[k] < b[k])
      strictly_better = true;
  }
  return strictly_better;
}

Fronts fast_nondominated_sort(std::span<const Vector> objectives)
{
  const auto n = objectives.size();
  Fronts fronts;
  if (n == 0)
    return fronts;
  const auto n_obj = objectives.front().size();
  for (const auto& f : objectives)
    if (f.size() != n_obj)
      throw InternalError("non-dominated sort over objective vectors of different lengths");

  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(objectives[p], objectives[q])) {
        dominated_by[p].push_back(q);
        ++domination_count[q];
      } else if (dominates(objectives[q], objectives[p])) {
        dominated_by[q].push_back(p);
        ++domination_count[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p)
    if (domination_count[p] == 0)
      current.push_back(p);

  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (const auto p : current)
      for (const auto q : dominated_by[p])
        if (--domination_count[q] == 0)
          next.push_back(q);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

Fronts fast_nondominated_sort(std::span<const Individual> population)
{
  const auto objectives = objectives_of(population);
  return fast_nondominated_sort(objectives);
}

std::vector<std::size_t> nondomination_levels(std::span<const Vector> objectives)
{
  const auto n = objectives.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Any dominator precedes its victim in lexicographic order.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(objectives[a].begin(), objectives[a].end(),
                                        objectives[b].begin(), objectives[b].end());
  });
  std::vector<std::size_t> level(n, 0);
  Fronts fronts;
  for (const auto p : order) {
    std::size_t k = 0;
    for (; k < fronts.size(); ++k) {
      const auto& front = fronts[k];
      const bool dominated = std::any_of(front.rbegin(), front.rend(), [&](std::size_t q) {
        return dominates(objectives[q], objectives[p]);
      });
      if (!dominated)
        break;
    }
    if (k == fronts.size())
      fronts.emplace_back();
    fronts[k].push_back(p);
    level[p] = k;
  }
  return level;
}

std::vector<double> crowding_distance(std::span<const Vector> objectives,
                                      std::span<const std::size_t> front)
{
  const auto size = front.size();
  std::vector<double> distance(size, 0.0);
  if (size == 0)
    return distance;
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (size <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }
  const auto n_obj = objectives[front.front()].size();
  std::vector<std::size_t> order(size);
  for (std::size_t k = 0; k < n_obj; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return objectives[front[a]][k] < objectives[front[b]][k];
    });
    const double lo = objectives[front[order.front()]][k];
    const double hi = objectives[front[order.back()]][k];
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    const double range = hi - lo;
    if (!(range > 0.0))
      continue;
    for (std::size_t r = 1; r + 1 < size; ++r) {
      if (std::isinf(distance[order[r]]))
        continue;
      distance[order[r]] +=
          (objectives[front[order[r + 1]]][k] - objectives[front[order[r - 1]]][k]) / range;
    }
  }
  return distance;
}

std::vector<double> crowding_distance(std::span<const Individual> front)
{
  const auto objectives = objectives_of(front);
  std::vector<std::size_t> all(front.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return crowding_distance(objectives, all);
}

Survivors select_survivors(std::span<const Vector> objectives, std::size_t count)
{
  Survivors out;
  count = std::min(count, objectives.size());
  const auto fronts = fast_nondominated_sort(objectives);
  for (std::size_t level = 0; level < fronts.size() && out.indices.size() < count; ++level) {
    const auto& front = fronts[level];
    const auto crowd = crowding_distance(objectives, front);
    const auto room = count - out.indices.size();
    if (front.size() <= room) {
      for (std::size_t r = 0; r < front.size(); ++r) {
        out.indices.push_back(front[r]);
        out.ranks.push_back(level);
        out.crowding.push_back(crowd[r]);
      }
      continue;
    }
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
    for (std::size_t r = 0; r < room; ++r) {
      out.indices.push_back(front[order[r]]);
      out.ranks.push_back(level);
      out.crowding.push_back(crowd[order[r]]);
    }
  }
  return out;
}

std::vector<Individual> environmental_selection(std::vector<Individual> parents,
                                                std::vector<Individual> offspring,
                                                std::size_t subpop_size)
{
  std::vector<Individual> pool = std::move(parents);
  pool.reserve(pool.size() + offspring.size());
  std::move(offspring.begin(), offspring.end(), std::back_inserter(pool));
  for (const auto& ind : pool)
    if (!ind.evaluated())
      throw InternalError("environmental selection over unevaluated individuals");

  const auto objectives = objectives_of(pool);
  const auto survivors = select_survivors(objectives, subpop_size);
  std::vector<Individual> next;
  next.reserve(survivors.indices.size());
  for (std::size_t r = 0; r < survivors.indices.size(); ++r) {
    auto ind = std::move(pool[survivors.indices[r]]);
    ind.rank = survivors.ranks[r];
    ind.crowding = survivors.crowding[r];
    next.push_back(std::move(ind));
  }
  return next;
}

std::vector<Individual> nondominated_subset(std::span<const Individual> population)
{
  std::vector<Individual> out;
  if (population.empty())
    return out;
  const auto fronts = fast_nondominated_sort(population);
  for (const auto i : fronts.front())
    out.push_back(population[i]);
  return out;
}

} // namespace emtpd
