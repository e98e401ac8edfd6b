#include <emtpd/errors.hpp>
#include <emtpd/metrics.hpp>
#include <emtpd/problems.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

using namespace emtpd;

namespace {

ReferenceSet ref(std::vector<Vector> pts)
{
  return ReferenceSet{std::move(pts), ReferenceSet::Source::AnalyticPf};
}

TaskDefinition line_task(double sign)
{
  TaskDefinition t;
  t.name = "line";
  t.native_dim = 2;
  t.n_objectives = 1;
  t.lower_bounds.assign(2, 0.0);
  t.upper_bounds.assign(2, 1.0);
  t.evaluator = [sign](std::span<const double> x) { return Vector{sign * (x[0] + 0.1 * x[1])}; };
  return t;
}

} // namespace

TEST(Igd, CoveredReferenceIsZero)
{
  const std::vector<Vector> a{{0.0, 1.0}, {1.0, 0.0}, {0.3, 0.3}};
  EXPECT_EQ(igd(ref({{0.0, 1.0}, {1.0, 0.0}}), a), 0.0);
}

TEST(Igd, HandComputed)
{
  const std::vector<Vector> a{{0.5, 0.5}};
  EXPECT_NEAR(igd(ref({{0.0, 1.0}, {1.0, 0.0}}), a), std::sqrt(0.5), 1e-15);
}

TEST(Igd, PermutationInvariant)
{
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vector> r(40, Vector(3));
  std::vector<Vector> a(25, Vector(3));
  for (auto& p : r)
    for (auto& v : p)
      v = u(rng);
  for (auto& p : a)
    for (auto& v : p)
      v = u(rng);
  const double base = igd(ref(r), a);
  const double base_plus = igd_plus(ref(r), a);
  std::shuffle(r.begin(), r.end(), rng);
  std::shuffle(a.begin(), a.end(), rng);
  EXPECT_DOUBLE_EQ(igd(ref(r), a), base);
  EXPECT_DOUBLE_EQ(igd_plus(ref(r), a), base_plus);
}

TEST(Igd, ErrorPaths)
{
  const std::vector<Vector> none;
  const std::vector<Vector> one{{0.5, 0.5}};
  const std::vector<Vector> bad{{0.5}};
  EXPECT_THROW(igd(ref({{0.0, 1.0}}), none), IndicatorError);
  EXPECT_THROW(igd(ref({}), one), IndicatorError);
  EXPECT_THROW(igd(ref({{0.0, 1.0}}), bad), IndicatorError);
  EXPECT_THROW(igd_plus(ref({{0.0, 1.0}}), bad), IndicatorError);
}

TEST(IgdPlus, DominatingPointGivesZero)
{
  const std::vector<Vector> a{{-1.0, -1.0}};
  EXPECT_EQ(igd_plus(ref({{0.0, 1.0}, {1.0, 0.0}, {0.5, 0.5}}), a), 0.0);
}

TEST(IgdPlus, HandComputed)
{
  const std::vector<Vector> a{{0.5, 0.5}};
  EXPECT_NEAR(igd_plus(ref({{0.0, 1.0}, {1.0, 0.0}}), a), 0.5, 1e-15);
}

TEST(IgdPlus, NeverExceedsIgdAndMatchesOracle)
{
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 20);
  std::uniform_int_distribution<int> dims(2, 6);
  for (int t = 0; t < 1000; ++t) {
    const auto m = static_cast<std::size_t>(dims(rng));
    std::vector<Vector> r(static_cast<std::size_t>(size(rng)), Vector(m));
    std::vector<Vector> a(static_cast<std::size_t>(size(rng)), Vector(m));
    for (auto& p : r)
      for (auto& v : p)
        v = u(rng);
    for (auto& p : a)
      for (auto& v : p)
        v = u(rng);
    const double plain = igd(ref(r), a);
    const double plus = igd_plus(ref(r), a);
    ASSERT_LE(plus, plain);
    ASSERT_NEAR(plain, oracle::igd(r, a), 1e-12);
    ASSERT_NEAR(plus, oracle::igd_plus(r, a), 1e-12);
  }
}

TEST(PairwiseSum, MatchesExactSumOnIntegers)
{
  Vector v(1001);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = static_cast<double>(i);
  EXPECT_EQ(pairwise_sum(v), 500500.0);
  EXPECT_EQ(pairwise_sum(std::span<const double>{}), 0.0);
}

TEST(LoadReferenceSet, ParsesCommentsAndBlanks)
{
  const auto path = std::filesystem::temp_directory_path() / "emtpd_ref_test.txt";
  {
    std::ofstream out(path);
    out << "# front\n0 1\n\n0.5 0.5\n1e0 0\n";
  }
  const auto r = load_reference_set(path);
  EXPECT_EQ(r.source, ReferenceSet::Source::File);
  EXPECT_EQ(r.points, (std::vector<Vector>{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}}));
  {
    std::ofstream out(path);
    out << "0 1\n0.5\n";
  }
  EXPECT_THROW(load_reference_set(path), DataError);
  {
    std::ofstream out(path);
    out << "0 x\n";
  }
  EXPECT_THROW(load_reference_set(path), DataError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_reference_set(path), DataError);
}

TEST(Ranking, LevelThenNormalizedSumThenIndex)
{
  const std::vector<Vector> pts{{0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}, {0.5, 0.5}, {0.2, 0.9}};
  // Levels: {0,1,3,4} first, {2} second. Normalized sums: 1, 1, -, 1, 1.1.
  const auto r = rank_by_level_then_sum(pts);
  EXPECT_EQ(r, (std::vector<double>{0.0, 1.0, 4.0, 2.0, 3.0}));
}

TEST(Pearson, Basics)
{
  const Vector a{1.0, 2.0, 3.0, 4.0};
  const Vector b{2.0, 4.0, 6.0, 8.0};
  const Vector c{4.0, 3.0, 2.0, 1.0};
  const Vector flat{1.0, 1.0, 1.0, 1.0};
  EXPECT_NEAR(pearson(a, b), 1.0, 1e-15);
  EXPECT_NEAR(pearson(a, c), -1.0, 1e-15);
  EXPECT_EQ(pearson(a, flat), 0.0);
}

TEST(Similarity, IdenticalAndReversedRankings)
{
  Rng rng(3);
  const MultiTaskProblem same{"same", line_task(1.0), line_task(1.0)};
  EXPECT_NEAR(similarity(same, 500, rng), 1.0, 1e-12);
  const MultiTaskProblem reversed{"rev", line_task(1.0), line_task(-1.0)};
  EXPECT_NEAR(similarity(reversed, 500, rng), -1.0, 1e-12);
  EXPECT_THROW(similarity(same, 5, rng), ConfigError);
}

TEST(Similarity, CustomRuleIsUsed)
{
  Rng rng(4);
  const MultiTaskProblem same{"same", line_task(1.0), line_task(1.0)};
  std::size_t calls = 0;
  const RankingRule rule = [&](std::span<const Vector> objs) {
    ++calls;
    return std::vector<double>(objs.size(), 1.0);
  };
  EXPECT_EQ(similarity(same, 50, rng, rule), 0.0);
  EXPECT_EQ(calls, 2u);
}

TEST(Similarity, SymmetricOnSameSample)
{
  const auto problem = build_mtmaop("MaF-HS1", 10);
  const MultiTaskProblem swapped{"swapped", problem.task2, problem.task1};
  Rng a(5);
  Rng b(5);
  const double forward = similarity(problem, 1000, a);
  EXPECT_EQ(forward, similarity(swapped, 1000, b));
  EXPECT_GT(forward, 0.0);
  EXPECT_LE(forward, 1.0);
}

TEST(ClassifySimilarity, BandEdges)
{
  EXPECT_EQ(classify_similarity(0.9).band, SimilarityBand::HS);
  EXPECT_EQ(classify_similarity(0.5).band, SimilarityBand::MS);
  EXPECT_EQ(classify_similarity(1.0 / 3.0).band, SimilarityBand::LS);
  EXPECT_EQ(classify_similarity(std::nextafter(1.0 / 3.0, 1.0)).band, SimilarityBand::MS);
  EXPECT_EQ(classify_similarity(2.0 / 3.0).band, SimilarityBand::MS);
  EXPECT_EQ(classify_similarity(std::nextafter(2.0 / 3.0, 1.0)).band, SimilarityBand::HS);
  EXPECT_EQ(classify_similarity(1.0).band, SimilarityBand::HS);
  EXPECT_FALSE(classify_similarity(0.1).out_of_band);
  const auto neg = classify_similarity(-0.4);
  EXPECT_EQ(neg.band, SimilarityBand::LS);
  EXPECT_TRUE(neg.out_of_band);
  EXPECT_TRUE(classify_similarity(0.0).out_of_band);
  EXPECT_EQ(to_string(SimilarityBand::MS), "MS");
}
