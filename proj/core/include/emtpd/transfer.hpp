#pragma once

#include <emtpd/core.hpp>
#include <emtpd/probmodel.hpp>

#include <span>
#include <vector>

namespace emtpd {

/// Geometry of one parent's transfer step.
struct TransferContext {
  Vector m;  ///< own-task mode point
  Vector mp; ///< cross-task knowledge point
  double d1 = 0.0;
  double d2 = 0.0;
  double w = 0.0;
};

struct Distances {
  double d1 = 0.0; ///< |m - mp|
  double d2 = 0.0; ///< |m - p|
};

Distances distances(std::span<const double> m, std::span<const double> mp,
                    std::span<const double> p);

/// d2 / (d1 + d2), and 0.5 when both distances vanish (p' = p then anyway).
double adaptive_weight(double d1, double d2);

/// p + w (mp - p), coordinate-wise.
Vector stage_one(std::span<const double> p, std::span<const double> mp, double w);

/// Standard deviation of each noise coordinate: F (d1 + d2) / D.
double stage_two_noise_scale(double d1, double d2, double scale_factor, std::size_t dimension);

/// p' + v with v_j = F q_j (d1 + d2) / D, q_j ~ N(0,1); clamped to [0,1].
Vector stage_two(std::span<const double> intermediate, double d1, double d2, double scale_factor,
                 std::size_t dimension, Rng& rng);

/// Bounded polynomial mutation on the unit box.
Vector polynomial_mutation(std::span<const double> c, double probability, double eta, Rng& rng);

/// Inputs needed to compute the knowledge point for one task.
struct KnowledgeInputs {
  std::span<const Individual> own_subpop;
  std::span<const Individual> other_subpop;
  const FittedModel* own_model = nullptr;
  const FittedModel* other_model = nullptr;
  /// Pareto-front sample of the other task; required by SH and MH.
  std::span<const Vector> other_pf_reference;
};

/// The mp surrogate for the chosen strategy (product argmax for PD / PD-1).
Vector knowledge_source(TransferStrategy strategy, const KnowledgeInputs& inputs, Rng& rng);

/// Indices of the `count` individuals of `subpop` closest to the reference front,
/// nearest first (ties by index).
std::vector<std::size_t> closest_to_front(std::span<const Individual> subpop,
                                          std::span<const Vector> reference, std::size_t count);

struct OffspringParams {
  double scale_factor = 0.01;
  double mutation_probability = 0.0;
  double eta_m = 20.0;
  /// False for PD-1: the noise stage is skipped.
  bool second_stage = true;
};

struct OffspringBatch {
  std::vector<Individual> offspring;
  double d1 = 0.0;
  double mean_w = 0.0;
};

/// One unevaluated offspring per parent.
OffspringBatch generate_offspring(std::span<const Individual> subpop, const FittedModel& own_model,
                                  std::span<const double> knowledge_point,
                                  const OffspringParams& params, Rng& rng);

} // namespace emtpd
