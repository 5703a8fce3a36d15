#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "seqmc/applications.hpp"
#include "seqmc/distributions.hpp"

using namespace seqmc;

TEST_CASE("level check of the asymptotic test") {
  const auto t = reference_table();
  EngineOptions o;
  o.seed = 11;
  const auto at_nominal = check_level(t, 0.05, 0.05, o);
  REQUIRE(at_nominal.result.stopped());
  CHECK(at_nominal.result.side == Side::upper);
  CHECK(at_nominal.result.p_hat > 0.05);
  CHECK(at_nominal.result.p_hat < 0.10);
  CHECK(at_nominal.samples == at_nominal.result.steps);

  const auto generous = check_level(t, 0.05, 0.5, o);
  REQUIRE(generous.result.stopped());
  CHECK(generous.result.side == Side::lower);
}

TEST_CASE("applications are reproducible and thread-count independent") {
  const auto t = reference_table();
  EngineOptions o;
  o.seed = 5;
  o.max_steps = 3000;
  const auto a = bootstrap_pvalue(t, 0.05, o);
  o.threads = 3;
  const auto b = bootstrap_pvalue(t, 0.05, o);
  CHECK(a.result.steps == b.result.steps);
  CHECK(a.result.successes == b.result.successes);
  CHECK(a.samples == b.samples);
}

TEST_CASE("truncated outer run reports an interim interval") {
  EngineOptions o;
  o.seed = 1;
  o.max_steps = 50;
  const auto rep = bootstrap_pvalue(reference_table(), 0.05, o);
  REQUIRE_FALSE(rep.result.stopped());
  REQUIRE(rep.interim.has_value());
  CHECK(rep.interim->lower <= rep.interim->upper);
  CHECK(rep.samples == 50);
}

TEST_CASE("a very extreme table stops low immediately") {
  // Strong dependence: T(data) is far in the tail of the null.
  const ContingencyTable strong(2, 2, {60, 0, 0, 60});
  EngineOptions o;
  o.seed = 3;
  const auto rep = bootstrap_pvalue(strong, 0.05, o);
  REQUIRE(rep.result.stopped());
  CHECK(rep.result.side == Side::lower);
  CHECK(rep.result.successes == 0);
  CHECK(rep.result.steps == rep.samples);
}

TEST_CASE("bootstrap level check counts every inner table") {
  EngineOptions o;
  o.seed = 9;
  o.max_steps = 40;
  const std::int64_t m = 30;
  const auto rep = check_level_bootstrap(reference_table(), m, 0.05, o);
  const std::int64_t outer = rep.result.steps;
  CHECK(outer > 0);
  CHECK(rep.samples > outer);
  CHECK(rep.samples <= outer * (m + 1));
  CHECK_THROWS_AS(check_level_bootstrap(reference_table(), 0, 0.05, o), std::invalid_argument);
  CHECK_THROWS_AS(check_level_bootstrap(reference_table(), m, 1.5, o), std::invalid_argument);
}

TEST_CASE("double bootstrap is non-significant within budget") {
  EngineOptions o;
  o.seed = 21;
  const auto rep = double_bootstrap(reference_table(), 250, 0.05, o, 10000);
  REQUIRE(rep.first_stage_p.has_value());
  CHECK(*rep.first_stage_p > 0.0);
  CHECK(*rep.first_stage_p < 0.1);
  REQUIRE(rep.result.stopped());
  CHECK(rep.result.p_hat > 0.05);
  CHECK(rep.samples < 150000);
  CHECK_THROWS_AS(double_bootstrap(reference_table(), 250, 0.05, o, 0), std::invalid_argument);
}

TEST_CASE("double bootstrap refuses a degenerate first stage") {
  EngineOptions o;
  o.seed = 2;
  // With a tiny budget on an extreme table no draw reaches T(data).
  const ContingencyTable strong(2, 2, {60, 0, 0, 60});
  CHECK_THROWS_AS(double_bootstrap(strong, 10, 0.05, o, 5), std::runtime_error);
}

TEST_CASE("triple-nested level check runs and counts samples") {
  EngineOptions o;
  o.seed = 4;
  o.max_steps = 3;
  const auto rep = check_level_double_bootstrap(reference_table(), 20, 20, 0.05, o, 50);
  CHECK(rep.result.steps == 3);
  CHECK(rep.samples >= 3 * 51);
  CHECK(rep.samples <= 3 * (1 + 50 + 20 * 21));
}

namespace {

// One-sided z-test at level 0.05 for a mean shift `delta` with unit variance.
// The sample mean of n draws is N(delta, 1/n), simulated directly.
PowerStream z_test_stream(double delta, std::uint64_t seed) {
  return [delta, seed](std::int64_t n) -> std::unique_ptr<BitSampler> {
    auto rng = std::make_shared<Rng>(Rng(seed).split(static_cast<std::uint64_t>(n)));
    const double crit = 1.6448536269514722;
    return std::make_unique<CallbackSampler>([rng, delta, n, crit] {
      std::normal_distribution<double> z;
      return delta * std::sqrt(double(n)) + z(*rng) > crit;
    });
  };
}

std::int64_t analytic_min_size(double delta, double target) {
  for (std::int64_t n = 1;; ++n)
    if (normal_cdf(delta * std::sqrt(double(n)) - 1.6448536269514722) > target) return n;
}

}  // namespace

TEST_CASE("sample-size search matches the analytic z-test power") {
  EngineOptions o;
  o.max_steps = 1000000;
  o.seed = 1;
  // Powers at n = 6 and 7 are 0.789 and 0.841; the target sits between them.
  const double delta = 1.0, target = 0.815;
  const auto expected = analytic_min_size(delta, target);
  REQUIRE(expected == 7);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto res = find_sample_size(z_test_stream(delta, seed), target, 1, 40, o);
    REQUIRE(res.resolved);
    CHECK(std::abs(res.size - expected) <= 1);
    CHECK(res.evaluations <= 10);
  }
}

TEST_CASE("sample-size search edge cases") {
  EngineOptions o;
  o.max_steps = 2000;
  CHECK(find_sample_size(z_test_stream(1.0, 1), 0.0, 3, 40, o).size == 3);

  // Power exactly at the target everywhere: no comparison can be decided.
  const PowerStream flat = [](std::int64_t n) -> std::unique_ptr<BitSampler> {
    auto rng = std::make_shared<Rng>(Rng(77).split(static_cast<std::uint64_t>(n)));
    return std::make_unique<CallbackSampler>([rng] { return rng->bernoulli(0.5); });
  };
  const auto unresolved = find_sample_size(flat, 0.5, 1, 10, o);
  CHECK_FALSE(unresolved.resolved);
  CHECK(unresolved.bracket_lo <= unresolved.bracket_hi);

  // Power far below target even at the top of the range.
  CHECK_THROWS_AS(find_sample_size(z_test_stream(0.01, 1), 0.9, 1, 5, o), std::invalid_argument);

  EngineOptions untruncated;
  CHECK_THROWS_AS(find_sample_size(z_test_stream(1.0, 1), 0.8, 1, 40, untruncated),
                  std::invalid_argument);
}
