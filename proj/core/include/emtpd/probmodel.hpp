#pragma once

#include <emtpd/core.hpp>
#include <emtpd/enums.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace emtpd {

/// Floor applied to fitted Gaussian variances.
inline constexpr double kVarianceFloor = 1e-12;
/// Samples are clamped into [eps, 1-eps] before Exponential/Gamma/Beta fitting.
inline constexpr double kSupportEpsilon = 1e-6;

/// Fitted parameters of one dimension.
///
/// The meaning of (first, second) depends on the kind:
///   Gaussian    - mean, variance
///   Exponential - rate, unused (0)
///   Gamma       - shape k, scale theta
///   Beta        - alpha, beta
struct UnivariateFit {
  ModelKind kind = ModelKind::Gaussian;
  double first = 0.0;
  double second = 0.0;

  [[nodiscard]] double density(double x) const;
  /// Natural log of the density; -inf where the density is zero, +inf at poles.
  [[nodiscard]] double log_density(double x) const;
  /// Maximizer of the density restricted to [0,1].
  [[nodiscard]] double mode() const;

  static UnivariateFit gaussian(double mean, double variance);
  static UnivariateFit exponential(double rate);
  static UnivariateFit gamma(double shape, double scale);
  static UnivariateFit beta(double alpha, double beta);
};

struct FittedModel {
  ModelKind kind = ModelKind::Gaussian;
  std::vector<UnivariateFit> params;
  Vector mode_point;

  [[nodiscard]] std::size_t dimension() const noexcept { return params.size(); }
};

/// Assembles a model from explicit per-dimension parameters and computes its mode point.
FittedModel make_model(ModelKind kind, std::vector<UnivariateFit> params);

/// Maximum-likelihood fit of one dimension's samples.
UnivariateFit fit_univariate(std::span<const double> samples, ModelKind kind);

/// Per-dimension MLE over the genotypes of `subpop`.
FittedModel fit(std::span<const Individual> subpop, ModelKind kind);
FittedModel fit(std::span<const Vector> genotypes, ModelKind kind);

/// Per-dimension argmax of each fitted density on [0,1].
Vector mode(const FittedModel& model);

/// Density of dimension `j` at `x`; throws InternalError for a bad index.
double density(const FittedModel& model, std::size_t j, double x);

/// Per-dimension argmax over [0,1] of the product of the two models' densities.
/// Gaussian pairs use the closed-form precision-weighted mean.
Vector product_argmax(const FittedModel& model1, const FittedModel& model2);

/// Closed form for two Gaussians, clamped into [0,1].
double gaussian_product_argmax(const UnivariateFit& a, const UnivariateFit& b);

/// Grid (10^4 points) plus golden-section refinement on log M1 + log M2.
/// Works for any pair of kinds; ties resolve toward the smaller x.
double numeric_product_argmax(const UnivariateFit& a, const UnivariateFit& b);

/// Mean over individuals and dimensions of |1 - M_j(x_ij)|, densities taken
/// at the same (clamped) coordinates the model was fitted on.
double fitting_error(std::span<const Individual> subpop, const FittedModel& model);
double fitting_error(std::span<const Vector> genotypes, const FittedModel& model);

struct AverageError {
  double value = 0.0;
  /// False when the input was empty or contained a non-positive error.
  bool valid = true;
};

/// ln of the arithmetic mean of the per-generation fitting errors.
AverageError average_error(std::span<const double> per_generation_errors);

} // namespace emtpd
