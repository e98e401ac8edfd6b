#pragma once

#include <emtpd/core.hpp>

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace emtpd {

struct ReferenceSet {
  enum class Source { AnalyticPf, File };
  std::vector<Vector> points;
  Source source = Source::AnalyticPf;
};

/// Mean over reference points of the distance to the nearest member of `solutions`.
double igd(const ReferenceSet& reference, std::span<const Vector> solutions);

/// IGD with the dominance-aware distance sqrt(sum_k max(z_k - a_k, 0)^2).
double igd_plus(const ReferenceSet& reference, std::span<const Vector> solutions);

/// Reads whitespace-separated objective vectors, one per line. Blank lines and
/// lines starting with '#' are skipped.
ReferenceSet load_reference_set(const std::filesystem::path& path);

/// Analytic Pareto-front sample of `task`; throws UnsupportedTaskError without a sampler.
ReferenceSet pf_sample(const TaskDefinition& task, std::size_t count, std::uint64_t seed = 2021);

/// Sum in pairwise (tree) order; independent of how callers chunk work.
double pairwise_sum(std::span<const double> values);

/// Maps K objective vectors of one task to a scalar rank per solution.
using RankingRule = std::function<std::vector<double>(std::span<const Vector> objectives)>;

/// Non-domination level by front peeling, then the sum of min-max normalized
/// objectives, then sample index. Returns ranks 0..K-1.
std::vector<double> rank_by_level_then_sum(std::span<const Vector> objectives);

/// Pearson correlation of two equally long samples (0 when either is constant).
double pearson(std::span<const double> a, std::span<const double> b);

/// Rank correlation of the two tasks over `samples` uniform genotypes.
double similarity(const MultiTaskProblem& problem, std::size_t samples, Rng& rng,
                  const RankingRule& rule = rank_by_level_then_sum);

enum class SimilarityBand { LS, MS, HS };

struct SimilarityClass {
  SimilarityBand band = SimilarityBand::LS;
  /// Set when sim <= 0, which none of the bands covers; the band is then LS.
  bool out_of_band = false;
};

SimilarityClass classify_similarity(double sim);
std::string_view to_string(SimilarityBand band);

} // namespace emtpd
