// Acceptance gate: one [PASS]/[FAIL] line per criterion. Exit status is nonzero
// when any hard criterion fails, unless it was named with --expect-fail.
// Criterion 7 is reported but soft.

#include <emtpd/evolve.hpp>
#include <emtpd/experiment.hpp>
#include <emtpd/metrics.hpp>
#include <emtpd/probmodel.hpp>
#include <emtpd/problems.hpp>
#include <emtpd/selection.hpp>
#include <emtpd/serialization.hpp>
#include <emtpd/transfer.hpp>

#include <CLI11.hpp>

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace emtpd;
namespace fs = std::filesystem;

namespace {

// Tolerances, fixed here so every threshold is visible in one place.
constexpr double kAc1ClosedFormTol = 1e-6;
constexpr double kAc1GridTol = 1e-4;
constexpr std::size_t kAc1Pairs = 1000;
constexpr std::size_t kAc2Cases = 100000;
constexpr double kAc2Slack = 1e-12;
constexpr double kAc3ExpectedStd = 0.002;
constexpr double kAc3StdRelTol = 0.02;
constexpr double kAc3RatioRelTol = 0.03;
constexpr std::size_t kAc3Samples = 100000;
constexpr std::size_t kAc4Instances = 200;
constexpr double kAc5Exact = 1e-15;
constexpr std::size_t kAc5Instances = 1000;
constexpr double kAc6Threshold = 5.0;
constexpr std::size_t kAc6Seeds = 5;
constexpr std::size_t kAc7Seeds = 7;
constexpr double kAc8Low = 0.85;
constexpr double kAc8High = 1.0;
constexpr std::size_t kAc8Samples = 10000;
constexpr double kAc9Sigma = 0.3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int hard_failures = 0;
int expected_failures = 0;
std::vector<int> expect_fail;
std::string report_text;

void report(int id, const char* title, bool soft, const std::function<Outcome()>& check)
{
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char head[160];
  std::snprintf(head, sizeof head, "[%s] AC%d %s%s: ", o.pass ? "PASS" : "FAIL", id, title, soft ? " (soft)" : "");
  char tail[32];
  std::snprintf(tail, sizeof tail, " (%.1fs)\n", secs);
  const std::string line = head + o.detail + tail;
  std::fputs(line.c_str(), stdout);
  std::fflush(stdout);
  report_text += line;
  const bool expected = std::find(expect_fail.begin(), expect_fail.end(), id) != expect_fail.end();
  if (!o.pass && !soft) {
    if (expected)
      ++expected_failures;
    else
      ++hard_failures;
  }
  if (o.pass && expected)
    std::printf("  note: AC%d passed although listed in --expect-fail\n", id);
}

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Outcome ac1()
{
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> mean(0.0, 1.0);
  std::uniform_real_distribution<double> log_var(std::log(1e-4), std::log(0.25));
  double worst_closed = 0.0;
  double worst_grid = 0.0;
  for (std::size_t i = 0; i < kAc1Pairs; ++i) {
    const double m1 = mean(rng);
    const double m2 = mean(rng);
    const double v1 = std::exp(log_var(rng));
    const double v2 = std::exp(log_var(rng));
    const double expected = (m1 / v1 + m2 / v2) / (1.0 / v1 + 1.0 / v2);
    const auto a = UnivariateFit::gaussian(m1, v1);
    const auto b = UnivariateFit::gaussian(m2, v2);
    const auto model_a = make_model(ModelKind::Gaussian, {a});
    const auto model_b = make_model(ModelKind::Gaussian, {b});
    const double closed = product_argmax(model_a, model_b)[0];
    const double grid = numeric_product_argmax(a, b);
    worst_closed = std::max(worst_closed, std::abs(closed - expected));
    worst_grid = std::max(worst_grid, std::abs(grid - closed));
  }
  return {worst_closed <= kAc1ClosedFormTol && worst_grid <= kAc1GridTol,
          "max|product_argmax - precision mean| = " + num(worst_closed) + " (tol " +
              num(kAc1ClosedFormTol) + "), max|grid - closed| = " + num(worst_grid) + " (tol " +
              num(kAc1GridTol) + ")"};
}

Outcome ac2()
{
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> dims(1, 30);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < kAc2Cases; ++i) {
    const auto d = static_cast<std::size_t>(dims(rng));
    Vector m(d), mp(d), p(d);
    for (std::size_t j = 0; j < d; ++j) {
      m[j] = u(rng);
      mp[j] = u(rng);
      p[j] = u(rng);
    }
    const auto dist = distances(m, mp, p);
    const double w = adaptive_weight(dist.d1, dist.d2);
    violations += (w >= 0.0 && w <= 1.0) ? 0 : 1;
    const double d2 = dist.d2 + 1e-3;
    violations += adaptive_weight(0.0, d2) == 1.0 ? 0 : 1;
    violations += adaptive_weight(dist.d1 + 1e-3, 0.0) == 0.0 ? 0 : 1;
    const double step = 0.1 * u(rng) + 1e-6;
    violations += adaptive_weight(dist.d1 + step, dist.d2) <= w + kAc2Slack ? 0 : 1;
    violations += adaptive_weight(dist.d1, dist.d2 + step) >= w - kAc2Slack ? 0 : 1;
    const auto q = stage_one(p, mp, w);
    for (std::size_t j = 0; j < d; ++j) {
      const double lo = std::min(p[j], mp[j]) - kAc2Slack;
      const double hi = std::max(p[j], mp[j]) + kAc2Slack;
      violations += (q[j] >= lo && q[j] <= hi) ? 0 : 1;
    }
  }
  return {violations == 0, std::to_string(kAc2Cases) + " cases, " + std::to_string(violations) + " violations"};
}

double noise_std(double scale_factor, std::uint64_t seed)
{
  Rng rng(seed);
  const std::size_t dim = 10;
  const Vector centre(dim, 0.5);
  std::vector<double> v;
  v.reserve(kAc3Samples);
  while (v.size() < kAc3Samples) {
    const auto c = stage_two(centre, 1.2, 0.8, scale_factor, dim, rng);
    for (std::size_t j = 0; j < dim && v.size() < kAc3Samples; ++j)
      v.push_back(c[j] - centre[j]);
  }
  double mean = 0.0;
  for (double x : v)
    mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v)
    ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

Outcome ac3()
{
  const double s1 = noise_std(0.01, 303);
  const double s2 = noise_std(0.02, 304);
  const double rel = std::abs(s1 - kAc3ExpectedStd) / kAc3ExpectedStd;
  const double ratio = s2 / s1;
  const double ratio_rel = std::abs(ratio - 2.0) / 2.0;
  return {rel <= kAc3StdRelTol && ratio_rel <= kAc3RatioRelTol,
          "std = " + num(s1) + " (target 0.002, rel err " + num(rel) + ", tol " + num(kAc3StdRelTol) +
              "), std(2F)/std(F) = " + num(ratio) + " (rel err " + num(ratio_rel) + ", tol " +
              num(kAc3RatioRelTol) + ")"};
}

Outcome ac4()
{
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> size(2, 64);
  std::uniform_int_distribution<int> objectives(2, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t sort_mismatch = 0;
  std::size_t select_mismatch = 0;
  for (std::size_t inst = 0; inst < kAc4Instances; ++inst) {
    const auto n = static_cast<std::size_t>(size(rng));
    const auto m = static_cast<std::size_t>(objectives(rng));
    // Every other instance sits on a coarse grid so ties and duplicates occur.
    const bool coarse = inst % 2 == 1;
    std::vector<Vector> pts(n, Vector(m));
    for (auto& p : pts)
      for (auto& v : p)
        v = coarse ? std::floor(u(rng) * 4.0) / 4.0 : u(rng);
    if (fast_nondominated_sort(pts) != oracle::peel_fronts(pts))
      ++sort_mismatch;

    const auto keep = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    std::vector<Individual> parents;
    std::vector<Individual> offspring;
    for (std::size_t i = 0; i < n; ++i) {
      Individual ind{UnifiedGenotype(Vector{static_cast<double>(i) / static_cast<double>(n)}), pts[i], 0, 0.0};
      (i < n / 2 ? parents : offspring).push_back(std::move(ind));
    }
    const auto next = environmental_selection(parents, offspring, keep);
    std::vector<double> got;
    for (const auto& ind : next)
      got.push_back(ind.genotype[0]);
    std::vector<double> want;
    for (auto i : oracle::nsga2_survivors(pts, keep))
      want.push_back(static_cast<double>(i) / static_cast<double>(n));
    std::sort(got.begin(), got.end());
    if (got != want)
      ++select_mismatch;
  }
  return {sort_mismatch == 0 && select_mismatch == 0,
          std::to_string(kAc4Instances) + " instances, sort mismatches " + std::to_string(sort_mismatch) +
              ", selection mismatches " + std::to_string(select_mismatch)};
}

Outcome ac5()
{
  const ReferenceSet ref{{{0.0, 1.0}, {1.0, 0.0}}, ReferenceSet::Source::AnalyticPf};
  const std::vector<Vector> mid{{0.5, 0.5}};
  const std::vector<Vector> superset{{0.0, 1.0}, {1.0, 0.0}, {0.4, 0.4}};
  const std::vector<Vector> dominating{{-0.1, -0.1}};
  bool exact = std::abs(igd(ref, mid) - std::sqrt(0.5)) <= kAc5Exact &&
               std::abs(igd_plus(ref, mid) - 0.5) <= kAc5Exact && igd(ref, superset) == 0.0 &&
               igd_plus(ref, dominating) == 0.0;

  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 30);
  std::uniform_int_distribution<int> dims(2, 8);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < kAc5Instances; ++i) {
    const auto m = static_cast<std::size_t>(dims(rng));
    ReferenceSet r;
    r.points.assign(static_cast<std::size_t>(count(rng)), Vector(m));
    std::vector<Vector> a(static_cast<std::size_t>(count(rng)), Vector(m));
    for (auto& p : r.points)
      for (auto& v : p)
        v = u(rng);
    for (auto& p : a)
      for (auto& v : p)
        v = u(rng);
    violations += igd_plus(r, a) <= igd(r, a) ? 0 : 1;
  }
  return {exact && violations == 0,
          std::string("hand examples ") + (exact ? "exact" : "MISMATCH") + ", igd_plus <= igd on " +
              std::to_string(kAc5Instances) + " instances with " + std::to_string(violations) + " violations"};
}

Outcome ac6()
{
  const auto problem = build_mtmaop("MaF-HS2", 10);
  RunConfig config;
  config.population_size = 230;
  config.max_generations = 300;
  config.max_evaluations = 69000;
  std::vector<double> t1;
  std::vector<double> t2;
  for (std::uint64_t seed = 0; seed < kAc6Seeds; ++seed) {
    config.seed = seed;
    const auto r = run(problem, config);
    t1.push_back(r.final_indicator[0]);
    t2.push_back(r.final_indicator[1]);
  }
  const double m1 = experiment::median(t1);
  const double m2 = experiment::median(t2);
  return {m1 <= kAc6Threshold && m2 <= kAc6Threshold,
          "median IGD+ over " + std::to_string(kAc6Seeds) + " seeds: T1 " + num(m1) + ", T2 " + num(m2) +
              " (threshold " + num(kAc6Threshold) + ")"};
}

Outcome ac7()
{
  const auto problem = toy_problem(0.0);
  RunConfig config;
  config.population_size = 200;
  config.max_generations = 200;
  config.max_evaluations = 200 * 201;
  std::vector<double> emt;
  std::vector<double> base;
  for (std::uint64_t seed = 0; seed < kAc7Seeds; ++seed) {
    config.seed = seed;
    const auto a = run(problem, config);
    const auto b = baseline_pair(problem, config);
    emt.push_back(0.5 * (a.final_indicator[0] + a.final_indicator[1]));
    base.push_back(0.5 * (b.final_indicator[0] + b.final_indicator[1]));
  }
  const double me = experiment::median(emt);
  const double mb = experiment::median(base);
  return {me <= mb, "median final IGD (mean of tasks) over " + std::to_string(kAc7Seeds) + " seeds: EMT-PD " +
                        num(me) + ", NSGA-II " + num(mb)};
}

Outcome ac8()
{
  Rng rng(808);
  const double sim = similarity(build_mtmaop("MaF-HS1", 10), kAc8Samples, rng);
  const bool edges = classify_similarity(1.0 / 3.0).band == SimilarityBand::LS &&
                     classify_similarity(std::nextafter(1.0 / 3.0, 1.0)).band == SimilarityBand::MS &&
                     classify_similarity(2.0 / 3.0).band == SimilarityBand::MS &&
                     classify_similarity(std::nextafter(2.0 / 3.0, 1.0)).band == SimilarityBand::HS &&
                     classify_similarity(1.0).band == SimilarityBand::HS &&
                     classify_similarity(0.0).out_of_band &&
                     !classify_similarity(std::nextafter(0.0, 1.0)).out_of_band;
  return {sim >= kAc8Low && sim <= kAc8High && edges,
          "sim(MaF-HS1, n=10, K=" + std::to_string(kAc8Samples) + ") = " + num(sim) + " (range [" + num(kAc8Low) +
              ", " + num(kAc8High) + "]), band edges " + (edges ? "exact" : "WRONG")};
}

Outcome ac9()
{
  std::size_t wins = 0;
  std::string values;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(900 + seed);
    std::normal_distribution<double> normal(0.5, kAc9Sigma);
    std::vector<Vector> pop(100, Vector(10));
    for (auto& p : pop)
      for (auto& v : p)
        v = std::clamp(normal(rng), 0.0, 1.0);
    const auto g = experiment::population_error(pop, ModelKind::Gaussian);
    const auto e = experiment::population_error(pop, ModelKind::Exponential);
    wins += (g.valid && e.valid && g.value < e.value) ? 1 : 0;
    if (seed == 0)
      values = "seed 0: Gaussian " + num(g.value) + " vs Exponential " + num(e.value);
  }
  return {wins == 5, "Gaussian e_avg smaller on " + std::to_string(wins) + "/5 populations drawn from N(0.5, " +
                         num(kAc9Sigma) + "^2); " + values};
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac10()
{
  const auto registry = ProblemRegistry::with_builtin();
  const auto doc = nlohmann::json::parse(R"({
    "repetitions": 2,
    "defaults": {"population_size": 40, "max_generations": 15, "reference_points": 500},
    "entries": [
      {"problem": "Toy-MS", "strategy": ["PD", "PD-1", "SR", "MR", "SH", "MH"], "model": ["Gaussian", "Gamma"]},
      {"problem": "MaF-MS1", "objectives": 5, "model": ["Gaussian", "Beta", "Exponential"]},
      {"problem": "Toy-LS", "baseline": true}
    ]
  })");
  const auto root = fs::temp_directory_path() / "emtpd_acceptance_repro";
  fs::remove_all(root);
  std::ostringstream sink;
  for (const char* run_dir : {"a", "b"}) {
    experiment::FlagOverrides flags;
    flags.out = (root / run_dir).string();
    const auto report = experiment::execute(experiment::parse_config(doc, flags, registry), registry, sink);
    if (report.exit_code != experiment::kExitOk)
      return {false, "plan execution failed"};
  }
  std::size_t files = 0;
  std::size_t differing = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const auto name = entry.path().filename().string();
    if (!name.ends_with(".trace.csv"))
      continue;
    ++files;
    differing += slurp(entry.path()) == slurp(root / "b" / name) ? 0 : 1;
  }
  fs::remove_all(root);
  return {files > 0 && differing == 0,
          std::to_string(files) + " trace files compared, " + std::to_string(differing) + " differ"};
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"acceptance criteria"};
  app.add_option("--expect-fail", expect_fail, "criteria known to be unattainable")->delimiter(',');
  std::string report_path;
  app.add_option("--report", report_path, "also write the report to this file");
  CLI11_PARSE(app, argc, argv);

  report(1, "Gaussian product argmax oracle", false, ac1);
  report(2, "transfer geometry properties", false, ac2);
  report(3, "second-stage noise statistics", false, ac3);
  report(4, "selection oracles", false, ac4);
  report(5, "IGD / IGD+ correctness", false, ac5);
  report(6, "MaF-HS2 desk-scale end-to-end", false, ac6);
  report(7, "multitasking benefit on toy_problem(0)", true, ac7);
  report(8, "similarity sanity", false, ac8);
  report(9, "fitting-error diagnostics direction", false, ac9);
  report(10, "reproducible traces", false, ac10);
  const std::string summary = std::to_string(hard_failures) + " hard criteria failed, " +
                              std::to_string(expected_failures) + " expected failures\n";
  std::fputs(summary.c_str(), stdout);
  if (!report_path.empty())
    std::ofstream(report_path) << report_text << summary;
  return hard_failures == 0 ? 0 : 1;
}
