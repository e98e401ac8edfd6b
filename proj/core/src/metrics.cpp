#include <emtpd/errors.hpp>
#include <emtpd/metrics.hpp>
#include <emtpd/selection.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>

namespace emtpd {

namespace {

void check_indicator_inputs(const ReferenceSet& reference, std::span<const Vector> solutions)
{
  if (solutions.empty())
    throw IndicatorError("indicator over an empty solution set");
  if (reference.points.empty())
    throw IndicatorError("indicator with an empty reference set");
  const auto n = reference.points.front().size();
  for (const auto& z : reference.points)
    if (z.size() != n)
      throw IndicatorError("reference points of different lengths");
  for (const auto& a : solutions)
    if (a.size() != n)
      throw IndicatorError("solution objective count differs from the reference set");
}

template <typename Distance>
double mean_min_distance(const ReferenceSet& reference, std::span<const Vector> solutions,
                         Distance&& squared_distance)
{
  check_indicator_inputs(reference, solutions);
  std::vector<double> nearest(reference.points.size());
  for (std::size_t r = 0; r < reference.points.size(); ++r) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : solutions)
      best = std::min(best, squared_distance(reference.points[r], a));
    nearest[r] = std::sqrt(best);
  }
  return pairwise_sum(nearest) / static_cast<double>(nearest.size());
}

} // namespace

double pairwise_sum(std::span<const double> values)
{
  if (values.size() <= 8) {
    double s = 0.0;
    for (const auto v : values)
      s += v;
    return s;
  }
  const auto half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double igd(const ReferenceSet& reference, std::span<const Vector> solutions)
{
  return mean_min_distance(reference, solutions, [](const Vector& z, const Vector& a) {
    double s = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k)
      s += (z[k] - a[k]) * (z[k] - a[k]);
    return s;
  });
}

double igd_plus(const ReferenceSet& reference, std::span<const Vector> solutions)
{
  return mean_min_distance(reference, solutions, [](const Vector& z, const Vector& a) {
    double s = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const double d = std::max(a[k] - z[k], 0.0);
      s += d * d;
    }
    return s;
  });
}

ReferenceSet load_reference_set(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open reference set file '" + path.string() + "'");
  ReferenceSet set;
  set.source = ReferenceSet::Source::File;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    Vector point;
    const char* cursor = line.data();
    const char* end = line.data() + line.size();
    while (cursor < end) {
      while (cursor < end && (*cursor == ' ' || *cursor == '\t' || *cursor == '\r'))
        ++cursor;
      if (cursor == end)
        break;
      double value = 0.0;
      auto [next, ec] = std::from_chars(cursor, end, value);
      if (ec != std::errc{})
        throw DataError("malformed number on line " + std::to_string(line_no) + " of '" +
                        path.string() + "'");
      point.push_back(value);
      cursor = next;
    }
    if (!set.points.empty() && point.size() != set.points.front().size())
      throw DataError("line " + std::to_string(line_no) + " of '" + path.string() +
                      "' has a different number of objectives");
    set.points.push_back(std::move(point));
  }
  return set;
}

ReferenceSet pf_sample(const TaskDefinition& task, std::size_t count, std::uint64_t seed)
{
  if (!task.pf_sampler)
    throw UnsupportedTaskError("task '" + task.name + "' has no Pareto-front sampler");
  ReferenceSet set;
  if (count > 0)
    set.points = task.pf_sampler(count, seed);
  return set;
}

std::vector<double> rank_by_level_then_sum(std::span<const Vector> objectives)
{
  const auto n = objectives.size();
  std::vector<double> ranks(n);
  if (n == 0)
    return ranks;
  const auto levels = nondomination_levels(objectives);

  const auto n_obj = objectives.front().size();
  Vector lo(n_obj, std::numeric_limits<double>::infinity());
  Vector hi(n_obj, -std::numeric_limits<double>::infinity());
  for (const auto& f : objectives)
    for (std::size_t k = 0; k < n_obj; ++k) {
      lo[k] = std::min(lo[k], f[k]);
      hi[k] = std::max(hi[k], f[k]);
    }
  std::vector<double> normalized_sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n_obj; ++k)
      if (hi[k] > lo[k])
        normalized_sum[i] += (objectives[i][k] - lo[k]) / (hi[k] - lo[k]);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (levels[a] != levels[b])
      return levels[a] < levels[b];
    if (normalized_sum[a] != normalized_sum[b])
      return normalized_sum[a] < normalized_sum[b];
    return a < b;
  });
  for (std::size_t position = 0; position < n; ++position)
    ranks[order[position]] = static_cast<double>(position);
  return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b)
{
  if (a.size() != b.size() || a.empty())
    throw InternalError("pearson correlation of samples with different lengths");
  const auto n = static_cast<double>(a.size());
  const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0)
    return 0.0;
  return cov / (std::sqrt(var_a) * std::sqrt(var_b));
}

double similarity(const MultiTaskProblem& problem, std::size_t samples, Rng& rng,
                  const RankingRule& rule)
{
  if (samples < 10)
    throw ConfigError("similarity needs at least 10 samples");
  const auto dim = problem.unified_dim();
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Vector> objectives1;
  std::vector<Vector> objectives2;
  objectives1.reserve(samples);
  objectives2.reserve(samples);
  Vector genotype(dim);
  for (std::size_t k = 0; k < samples; ++k) {
    for (auto& v : genotype)
      v = uniform(rng);
    objectives1.push_back(problem.task1.evaluator(decode(genotype, problem.task1)));
    objectives2.push_back(problem.task2.evaluator(decode(genotype, problem.task2)));
  }
  const auto ranks1 = rule(objectives1);
  const auto ranks2 = rule(objectives2);
  return pearson(ranks1, ranks2);
}

SimilarityClass classify_similarity(double sim)
{
  if (!(sim > 0.0))
    return {SimilarityBand::LS, true};
  if (sim <= 1.0 / 3.0)
    return {SimilarityBand::LS, false};
  if (sim <= 2.0 / 3.0)
    return {SimilarityBand::MS, false};
  return {SimilarityBand::HS, false};
}

std::string_view to_string(SimilarityBand band)
{
  switch (band) {
  case SimilarityBand::LS: return "LS";
  case SimilarityBand::MS: return "MS";
  case SimilarityBand::HS: return "HS";
  }
  return "?";
}

} // namespace emtpd
