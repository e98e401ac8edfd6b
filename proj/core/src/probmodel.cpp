#include <emtpd/errors.hpp>
#include <emtpd/probmodel.hpp>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace emtpd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxNewtonIterations = 50;
constexpr double kNewtonTolerance = 1e-9;
constexpr std::size_t kArgmaxGridPoints = 10000;
constexpr int kGoldenIterations = 30;

// c * ln(x) with the convention 0 * ln(0) = 0.
double scaled_log(double c, double x)
{
  if (c == 0.0)
    return 0.0;
  return c * std::log(x);
}

double clamp_to_support(double x)
{
  return std::clamp(x, kSupportEpsilon, 1.0 - kSupportEpsilon);
}

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;
};

SampleMoments moments(std::span<const double> samples)
{
  const auto n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (const auto x : samples)
    sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (const auto x : samples)
    ss += (x - mean) * (x - mean);
  return {mean, ss / n};
}

UnivariateFit fit_gamma(std::span<const double> samples)
{
  const auto [mean, raw_variance] = moments(samples);
  const double variance = std::max(raw_variance, kVarianceFloor);
  double mean_log = 0.0;
  for (const auto x : samples)
    mean_log += std::log(x);
  mean_log /= static_cast<double>(samples.size());

  // Shape is bounded by the one implied by the variance floor.
  const double max_shape = mean * mean / kVarianceFloor;
  const double s = std::max(std::log(mean) - mean_log, 0.0);

  double shape = std::min(mean * mean / variance, max_shape);
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    const double f = std::log(shape) - boost::math::digamma(shape) - s;
    const double df = 1.0 / shape - boost::math::trigamma(shape);
    if (!(df < 0.0))
      break;
    double next = shape - f / df;
    if (!(next > 0.0))
      next = shape / 2.0;
    next = std::min(next, max_shape);
    const double step = std::abs(next - shape);
    shape = next;
    if (step <= kNewtonTolerance * std::max(1.0, shape))
      break;
  }
  return UnivariateFit::gamma(shape, mean / shape);
}

UnivariateFit fit_beta(std::span<const double> samples)
{
  const auto [mean, raw_variance] = moments(samples);
  const double variance = std::max(raw_variance, kVarianceFloor);
  double mean_log = 0.0;
  double mean_log1m = 0.0;
  for (const auto x : samples) {
    mean_log += std::log(x);
    mean_log1m += std::log1p(-x);
  }
  mean_log /= static_cast<double>(samples.size());
  mean_log1m /= static_cast<double>(samples.size());

  const double max_total = mean * (1.0 - mean) / kVarianceFloor;
  double common = mean * (1.0 - mean) / variance - 1.0;
  if (!(common > 0.0))
    common = 2.0; // variance too large for a Beta; start from the uniform-ish shape
  common = std::min(common, max_total);
  double alpha = mean * common;
  double beta = (1.0 - mean) * common;

  using boost::math::digamma;
  using boost::math::trigamma;
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    const double psi_total = digamma(alpha + beta);
    const double g1 = psi_total - digamma(alpha) + mean_log;
    const double g2 = psi_total - digamma(beta) + mean_log1m;
    const double t = trigamma(alpha + beta);
    const double h11 = t - trigamma(alpha);
    const double h22 = t - trigamma(beta);
    const double h12 = t;
    const double det = h11 * h22 - h12 * h12;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det))
      break;
    const double da = (h22 * g1 - h12 * g2) / det;
    const double db = (h11 * g2 - h12 * g1) / det;

    double scale = 1.0;
    double next_alpha = alpha - da;
    double next_beta = beta - db;
    while ((next_alpha <= 0.0 || next_beta <= 0.0) && scale > 1e-12) {
      scale /= 2.0;
      next_alpha = alpha - scale * da;
      next_beta = beta - scale * db;
    }
    if (next_alpha <= 0.0 || next_beta <= 0.0)
      break;
    if (next_alpha + next_beta > max_total) {
      const double shrink = max_total / (next_alpha + next_beta);
      next_alpha *= shrink;
      next_beta *= shrink;
    }
    const double step = std::max(std::abs(next_alpha - alpha) / std::max(1.0, next_alpha),
                                 std::abs(next_beta - beta) / std::max(1.0, next_beta));
    alpha = next_alpha;
    beta = next_beta;
    if (step <= kNewtonTolerance)
      break;
  }
  return UnivariateFit::beta(alpha, beta);
}

double product_log(const UnivariateFit& a, const UnivariateFit& b, double x)
{
  const double value = a.log_density(x) + b.log_density(x);
  return std::isnan(value) ? -kInf : value;
}

} // namespace

UnivariateFit UnivariateFit::gaussian(double mean, double variance)
{
  return {ModelKind::Gaussian, mean, variance};
}

UnivariateFit UnivariateFit::exponential(double rate)
{
  return {ModelKind::Exponential, rate, 0.0};
}

UnivariateFit UnivariateFit::gamma(double shape, double scale)
{
  return {ModelKind::Gamma, shape, scale};
}

UnivariateFit UnivariateFit::beta(double alpha, double beta)
{
  return {ModelKind::Beta, alpha, beta};
}

double UnivariateFit::log_density(double x) const
{
  switch (kind) {
  case ModelKind::Gaussian: {
    const double d = x - first;
    return -0.5 * std::log(2.0 * std::numbers::pi * second) - d * d / (2.0 * second);
  }
  case ModelKind::Exponential:
    if (x < 0.0)
      return -kInf;
    return std::log(first) - first * x;
  case ModelKind::Gamma:
    if (x < 0.0)
      return -kInf;
    return scaled_log(first - 1.0, x) - x / second - std::lgamma(first) - first * std::log(second);
  case ModelKind::Beta: {
    if (x < 0.0 || x > 1.0)
      return -kInf;
    const double log_norm = std::lgamma(first) + std::lgamma(second) - std::lgamma(first + second);
    return scaled_log(first - 1.0, x) + scaled_log(second - 1.0, 1.0 - x) - log_norm;
  }
  }
  return -kInf;
}

double UnivariateFit::density(double x) const
{
  return std::exp(log_density(x));
}

double UnivariateFit::mode() const
{
  switch (kind) {
  case ModelKind::Gaussian: return std::clamp(first, 0.0, 1.0);
  case ModelKind::Exponential: return 0.0;
  case ModelKind::Gamma: return first > 1.0 ? std::clamp((first - 1.0) * second, 0.0, 1.0) : 0.0;
  case ModelKind::Beta:
    if (first > 1.0 && second > 1.0)
      return (first - 1.0) / (first + second - 2.0);
    return log_density(1.0) > log_density(0.0) ? 1.0 : 0.0;
  }
  return 0.0;
}

FittedModel make_model(ModelKind kind, std::vector<UnivariateFit> params)
{
  FittedModel model{kind, std::move(params), {}};
  for (const auto& p : model.params)
    if (p.kind != kind)
      throw ConfigError("per-dimension parameters disagree with the model kind");
  model.mode_point = mode(model);
  return model;
}

UnivariateFit fit_univariate(std::span<const double> samples, ModelKind kind)
{
  if (samples.size() < 2)
    throw ModelError("at least two samples are needed to fit a model");
  for (const auto x : samples)
    if (!std::isfinite(x))
      throw DataError("non-finite coordinate in model samples");

  if (kind == ModelKind::Gaussian) {
    const auto [mean, variance] = moments(samples);
    return UnivariateFit::gaussian(mean, std::max(variance, kVarianceFloor));
  }

  Vector clamped(samples.begin(), samples.end());
  for (auto& x : clamped)
    x = clamp_to_support(x);

  switch (kind) {
  case ModelKind::Exponential: return UnivariateFit::exponential(1.0 / moments(clamped).mean);
  case ModelKind::Gamma: return fit_gamma(clamped);
  case ModelKind::Beta: return fit_beta(clamped);
  case ModelKind::Gaussian: break;
  }
  throw InternalError("unhandled model kind");
}

FittedModel fit(std::span<const Vector> genotypes, ModelKind kind)
{
  if (genotypes.size() < 2)
    throw ModelError("at least two individuals are needed to fit a model");
  const auto dim = genotypes.front().size();
  for (const auto& g : genotypes)
    if (g.size() != dim)
      throw DataError("genotypes of different lengths in one subpopulation");

  std::vector<UnivariateFit> params;
  params.reserve(dim);
  Vector column(genotypes.size());
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < genotypes.size(); ++i)
      column[i] = genotypes[i][j];
    params.push_back(fit_univariate(column, kind));
  }
  return make_model(kind, std::move(params));
}

FittedModel fit(std::span<const Individual> subpop, ModelKind kind)
{
  std::vector<Vector> genotypes;
  genotypes.reserve(subpop.size());
  for (const auto& ind : subpop)
    genotypes.push_back(ind.genotype.vector());
  return fit(genotypes, kind);
}

Vector mode(const FittedModel& model)
{
  Vector m(model.params.size());
  for (std::size_t j = 0; j < m.size(); ++j)
    m[j] = model.params[j].mode();
  return m;
}

double density(const FittedModel& model, std::size_t j, double x)
{
  if (j >= model.params.size())
    throw InternalError("dimension index " + std::to_string(j) + " out of range");
  return model.params[j].density(x);
}

double gaussian_product_argmax(const UnivariateFit& a, const UnivariateFit& b)
{
  const double x = (a.first * b.second + b.first * a.second) / (a.second + b.second);
  return std::clamp(x, 0.0, 1.0);
}

double numeric_product_argmax(const UnivariateFit& a, const UnivariateFit& b)
{
  const double step = 1.0 / static_cast<double>(kArgmaxGridPoints - 1);
  std::size_t best = 0;
  double best_value = product_log(a, b, 0.0);
  for (std::size_t i = 1; i < kArgmaxGridPoints; ++i) {
    const double value = product_log(a, b, static_cast<double>(i) * step);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  const double best_x = static_cast<double>(best) * step;
  if (std::isinf(best_value))
    return best_x;

  double lo = best == 0 ? 0.0 : static_cast<double>(best - 1) * step;
  double hi = best + 1 >= kArgmaxGridPoints ? 1.0 : static_cast<double>(best + 1) * step;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = product_log(a, b, x1);
  double f2 = product_log(a, b, x2);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = product_log(a, b, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = product_log(a, b, x2);
    }
  }
  const double refined = 0.5 * (lo + hi);
  return product_log(a, b, refined) > best_value ? refined : best_x;
}

Vector product_argmax(const FittedModel& model1, const FittedModel& model2)
{
  if (model1.kind != model2.kind)
    throw ConfigError("cannot combine a " + std::string(to_string(model1.kind)) + " model with a " +
                      std::string(to_string(model2.kind)) + " model");
  if (model1.params.size() != model2.params.size())
    throw ConfigError("models have different dimensions");
  Vector mp(model1.params.size());
  for (std::size_t j = 0; j < mp.size(); ++j)
    mp[j] = model1.kind == ModelKind::Gaussian
                ? gaussian_product_argmax(model1.params[j], model2.params[j])
                : numeric_product_argmax(model1.params[j], model2.params[j]);
  return mp;
}

double fitting_error(std::span<const Vector> genotypes, const FittedModel& model)
{
  if (genotypes.empty())
    throw ModelError("fitting error of an empty subpopulation");
  const auto dim = model.params.size();
  double total = 0.0;
  for (const auto& g : genotypes) {
    if (g.size() < dim)
      throw InternalError("genotype shorter than the model dimension");
    for (std::size_t j = 0; j < dim; ++j) {
      const double x = model.kind == ModelKind::Gaussian ? g[j] : clamp_to_support(g[j]);
      total += std::abs(1.0 - model.params[j].density(x));
    }
  }
  return total / (static_cast<double>(genotypes.size()) * static_cast<double>(dim));
}

double fitting_error(std::span<const Individual> subpop, const FittedModel& model)
{
  std::vector<Vector> genotypes;
  genotypes.reserve(subpop.size());
  for (const auto& ind : subpop)
    genotypes.push_back(ind.genotype.vector());
  return fitting_error(genotypes, model);
}

AverageError average_error(std::span<const double> per_generation_errors)
{
  if (per_generation_errors.empty())
    return {-kInf, false};
  double sum = 0.0;
  for (const auto e : per_generation_errors) {
    if (!(e > 0.0))
      return {-kInf, false};
    sum += e;
  }
  return {std::log(sum / static_cast<double>(per_generation_errors.size())), true};
}

} // namespace emtpd
