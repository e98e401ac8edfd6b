#include <emtpd/errors.hpp>
#include <emtpd/transfer.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace emtpd {

namespace {

double euclidean(std::span<const double> a, std::span<const double> b)
{
  if (a.size() != b.size())
    throw InternalError("distance between vectors of different lengths");
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    sum += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(sum);
}

Vector centroid(std::span<const Individual> subpop, std::span<const std::size_t> indices)
{
  Vector c(subpop[indices.front()].genotype.size(), 0.0);
  for (const auto i : indices)
    for (std::size_t j = 0; j < c.size(); ++j)
      c[j] += subpop[i].genotype[j];
  for (auto& v : c)
    v /= static_cast<double>(indices.size());
  return c;
}

// Up to `count` distinct indices in [0, n), partial Fisher-Yates.
std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t count, Rng& rng)
{
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  count = std::min(count, n);
  for (std::size_t k = 0; k < count; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, n - 1);
    std::swap(pool[k], pool[pick(rng)]);
  }
  pool.resize(count);
  return pool;
}

} // namespace

Distances distances(std::span<const double> m, std::span<const double> mp,
                    std::span<const double> p)
{
  return {euclidean(m, mp), euclidean(m, p)};
}

double adaptive_weight(double d1, double d2)
{
  if (d1 < 0.0 || d2 < 0.0 || std::isnan(d1) || std::isnan(d2))
    throw InternalError("transfer distances must be non-negative");
  const double total = d1 + d2;
  if (total == 0.0)
    return 0.5;
  return d2 / total;
}

Vector stage_one(std::span<const double> p, std::span<const double> mp, double w)
{
  if (p.size() != mp.size())
    throw InternalError("stage one: individual and knowledge point lengths differ");
  Vector out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j)
    out[j] = p[j] + w * (mp[j] - p[j]);
  return out;
}

double stage_two_noise_scale(double d1, double d2, double scale_factor, std::size_t dimension)
{
  return scale_factor * (d1 + d2) / static_cast<double>(dimension);
}

Vector stage_two(std::span<const double> intermediate, double d1, double d2, double scale_factor,
                 std::size_t dimension, Rng& rng)
{
  if (dimension == 0)
    throw InternalError("stage two needs a positive dimension");
  const double sigma = stage_two_noise_scale(d1, d2, scale_factor, dimension);
  std::normal_distribution<double> noise(0.0, 1.0);
  Vector out(intermediate.begin(), intermediate.end());
  for (auto& x : out)
    x = std::clamp(x + sigma * noise(rng), 0.0, 1.0);
  return out;
}

Vector polynomial_mutation(std::span<const double> c, double probability, double eta, Rng& rng)
{
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double power = 1.0 / (eta + 1.0);
  Vector out(c.begin(), c.end());
  for (auto& y : out) {
    if (!(uniform(rng) < probability))
      continue;
    const double delta1 = y;       // distance to the lower bound 0
    const double delta2 = 1.0 - y; // distance to the upper bound 1
    const double u = uniform(rng);
    double deltaq = 0.0;
    if (u <= 0.5) {
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
      deltaq = std::pow(val, power) - 1.0;
    } else {
      const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
      deltaq = 1.0 - std::pow(val, power);
    }
    y = std::clamp(y + deltaq, 0.0, 1.0);
  }
  return out;
}

std::vector<std::size_t> closest_to_front(std::span<const Individual> subpop,
                                          std::span<const Vector> reference, std::size_t count)
{
  std::vector<double> gap(subpop.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < subpop.size(); ++i)
    for (const auto& z : reference)
      gap[i] = std::min(gap[i], euclidean(subpop[i].objectives, z));
  std::vector<std::size_t> order(subpop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return gap[a] < gap[b]; });
  order.resize(std::min(count, order.size()));
  return order;
}

Vector knowledge_source(TransferStrategy strategy, const KnowledgeInputs& inputs, Rng& rng)
{
  const auto& other = inputs.other_subpop;
  switch (strategy) {
  case TransferStrategy::PD:
  case TransferStrategy::PD1:
    if (inputs.own_model == nullptr || inputs.other_model == nullptr)
      throw InternalError("PD knowledge needs both fitted models");
    return product_argmax(*inputs.own_model, *inputs.other_model);
  case TransferStrategy::SR:
  case TransferStrategy::MR: {
    if (other.empty())
      throw InternalError("knowledge source: empty other subpopulation");
    const auto picks = sample_distinct(other.size(), strategy == TransferStrategy::SR ? 1 : 3, rng);
    return centroid(other, picks);
  }
  case TransferStrategy::SH:
  case TransferStrategy::MH: {
    if (inputs.other_pf_reference.empty())
      throw ConfigError(std::string("strategy ") + std::string(to_string(strategy)) +
                        " needs a Pareto-front sampler for the other task");
    if (other.empty())
      throw InternalError("knowledge source: empty other subpopulation");
    const auto best = closest_to_front(other, inputs.other_pf_reference,
                                       strategy == TransferStrategy::SH ? 1 : 3);
    return centroid(other, best);
  }
  }
  throw InternalError("unhandled transfer strategy");
}

OffspringBatch generate_offspring(std::span<const Individual> subpop, const FittedModel& own_model,
                                  std::span<const double> knowledge_point,
                                  const OffspringParams& params, Rng& rng)
{
  const auto dim = knowledge_point.size();
  const auto& m = own_model.mode_point;
  const double d1 = euclidean(m, knowledge_point);

  OffspringBatch batch;
  batch.d1 = d1;
  batch.offspring.reserve(subpop.size());
  double w_sum = 0.0;
  for (const auto& parent : subpop) {
    const auto p = parent.genotype.values();
    const double d2 = euclidean(m, p);
    const double w = adaptive_weight(d1, d2);
    w_sum += w;
    auto child = stage_one(p, knowledge_point, w);
    if (params.second_stage)
      child = stage_two(child, d1, d2, params.scale_factor, dim, rng);
    child = polynomial_mutation(child, params.mutation_probability, params.eta_m, rng);
    batch.offspring.push_back(Individual{UnifiedGenotype(std::move(child)), {}, 0, 0.0});
  }
  batch.mean_w = subpop.empty() ? 0.0 : w_sum / static_cast<double>(subpop.size());
  return batch;
}

} // namespace emtpd
