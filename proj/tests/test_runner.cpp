#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include <cmath>
#include <sstream>
#include <vector>

#include "seqmc/runner.hpp"

using namespace seqmc;

namespace {

BoundaryTable default_table(double alpha = 0.05) {
  return BoundaryTable(alpha, SpendingSequence::standard(1e-3, 1000));
}

// Replays a fixed vector of bits.
class VectorSampler final : public BitSampler {
 public:
  explicit VectorSampler(std::vector<bool> bits) : bits_(std::move(bits)) {}
  std::optional<bool> next() override {
    if (i_ == bits_.size()) return std::nullopt;
    return bits_[i_++];
  }

 private:
  std::vector<bool> bits_;
  std::size_t i_ = 0;
};

}  // namespace

TEST_CASE("Bernoulli(0.2) stops upper; wrong side within eps + 3 SE") {
  auto table = default_table();
  const int reps = 1000;
  int lower = 0;
  for (int r = 0; r < reps; ++r) {
    BernoulliSampler s(0.2, 1000 + r);
    const auto res = run(table, s);
    REQUIRE(res.stopped());
    if (res.side == Side::lower) ++lower;
    else
      CHECK(res.p_hat > 0.05);
  }
  const double se = std::sqrt(1e-3 * (1 - 1e-3) / reps);
  CHECK(lower / double(reps) <= 1e-3 + 3 * se);
}

TEST_CASE("Bernoulli(0.01) stops lower") {
  auto table = default_table();
  const int reps = 1000;
  int upper = 0;
  for (int r = 0; r < reps; ++r) {
    BernoulliSampler s(0.01, 5000 + r);
    const auto res = run(table, s);
    REQUIRE(res.stopped());
    if (res.side == Side::upper) ++upper;
    else
      CHECK(res.p_hat <= 0.05);
  }
  CHECK(upper / double(reps) <= 1e-3 + 3 * std::sqrt(1e-3 / reps));
}

TEST_CASE("stop side pins the estimate to the boundary") {
  auto table = default_table();
  for (int r = 0; r < 200; ++r) {
    BernoulliSampler s(r % 2 ? 0.09 : 0.02, r);
    const auto res = run(table, s);
    REQUIRE(res.stopped());
    const auto b = res.side == Side::upper ? table.upper(res.steps) : table.lower(res.steps);
    CHECK(res.successes == b);
    CHECK(res.p_hat == doctest::Approx(double(b) / res.steps));
  }
}

TEST_CASE("truncation contract") {
  auto table = default_table();
  // A stream hovering at rate alpha: one success every 20 draws.
  CallbackSampler s([i = 0]() mutable { return ++i % 20 == 0; });
  RunOptions o;
  o.max_steps = 1000;
  const auto res = run(table, s, o);
  CHECK_FALSE(res.stopped());
  CHECK(res.steps == 1000);
  CHECK(res.successes == 50);
  CHECK(res.p_hat == 0.05);

  VectorSampler empty({});
  const auto e = run(table, empty);
  CHECK(e.steps == 0);
  CHECK(e.p_hat == 0.05);
}

TEST_CASE("all-zero stream stops lower with estimate 0") {
  auto table = default_table();
  std::stringstream in;
  for (int i = 0; i < 1000; ++i) in << "0\n";
  TextBitSampler s(in);
  const auto res = run(table, s);
  REQUIRE(res.stopped());
  CHECK(res.side == Side::lower);
  CHECK(res.p_hat == 0.0);
  CHECK(table.lower(res.steps) == 0);
  CHECK(table.lower(res.steps - 1) == -1);
}

TEST_CASE("h_alpha") {
  BoundaryCache cache(SpendingSequence::standard(1e-3, 1000));
  CallbackSampler ones([] { return true; });
  CHECK(h_alpha(cache, 0.5, ones) == 1.0);

  std::vector<bool> bits(250, false);
  for (int i = 0; i < 250; i += 20) bits[i] = true;  // 13 of 250, inside the corridor
  VectorSampler finite(bits);
  CHECK(h_alpha(cache, 0.05, finite, 250) == doctest::Approx(13.0 / 250));
  CHECK(cache.size() == 2);
  cache.table(0.5);
  CHECK(cache.size() == 2);
}

TEST_CASE("sampler failure exposes the partial state") {
  auto table = default_table();
  CallbackSampler s([i = 0]() mutable -> bool {
    if (++i > 30) throw SamplerError("gone");
    return i % 20 == 0;
  });
  try {
    run(table, s);
    FAIL("expected RunAborted");
  } catch (const RunAborted& e) {
    CHECK(e.steps() == 30);
    CHECK(e.successes() == 1);
  }
}

TEST_CASE("progress reports do not change the result") {
  auto table = default_table();
  BernoulliSampler a(0.045, 3), b(0.045, 3);
  std::vector<Progress> seen;
  RunOptions o;
  o.report_every_steps = 500;
  o.progress_sink = [&](const Progress& p) { seen.push_back(p); };
  const auto ra = run(table, a, o);
  const auto rb = run(table, b);
  CHECK(ra.steps == rb.steps);
  CHECK(ra.successes == rb.successes);
  REQUIRE(ra.steps > 500);
  CHECK(seen.size() == static_cast<std::size_t>((ra.steps - 1) / 500));
  for (const auto& p : seen) {
    CHECK(p.n % 500 == 0);
    CHECK(p.interim.lower <= ra.p_hat);
    CHECK(ra.p_hat <= p.interim.upper);
  }
}

TEST_CASE("interim interval") {
  auto table = default_table();
  SUBCASE("contains the eventual estimate and is nested along a run") {
    // p = alpha is avoided: E(tau) is infinite there.
    int r = 0;
    for (double p : {0.01, 0.02, 0.03, 0.035, 0.07, 0.08, 0.1, 0.2}) {
      BernoulliSampler s(p, 77 + r++);
      SequentialTest test(table);
      std::vector<std::int64_t> marks;
      std::optional<RunResult> done;
      while (!(done = test.step(*s.next()))) {
        if (test.steps() % 97 == 0) marks.push_back(test.steps());
      }
      Interval prev{0.0, 1.0};
      const std::size_t stride = std::max<std::size_t>(1, marks.size() / 6);
      for (std::size_t i = 0; i < marks.size(); i += stride) {
        const auto n = marks[i];
        const auto iv = interim_interval(table, n);
        CHECK(iv.lower <= done->p_hat);
        CHECK(done->p_hat <= iv.upper);
        CHECK(prev.contains(iv));
        prev = iv;
      }
    }
  }
  SUBCASE("single-point window still covers the boundaries at n") {
    table.extend_to(600);
    const auto iv = interim_interval(table, 500, 0);
    CHECK(iv.lower <= table.lower(500) / 500.0);
    CHECK(iv.upper >= table.upper(500) / 500.0);
  }
  SUBCASE("shrinks toward alpha") {
    const auto a = interim_interval(table, 1000);
    const auto b = interim_interval(table, 10000);
    const auto c = interim_interval(table, 100000);
    CHECK(a.width() > b.width());
    CHECK(b.width() > c.width());
    CHECK(c.lower < 0.05);
    CHECK(c.upper > 0.05);
  }
  SUBCASE("coarse bound contains the sharp one") {
    for (std::int64_t n : {100, 1000, 5000}) {
      const auto sharp = interim_interval(table, n);
      const auto coarse = coarse_interim_interval(table, n);
      CHECK(coarse.contains(sharp));
    }
  }
}

TEST_CASE("custom spending: run stops at the end of the table") {
  std::vector<double> v;
  for (int n = 1; n <= 400; ++n) v.push_back(0.01 * n / (100.0 + n));
  BoundaryTable table(0.05, SpendingSequence::custom(0.01, v));
  CallbackSampler s([i = 0]() mutable { return ++i % 20 == 0; });
  CHECK_THROWS_AS(run(table, s), std::out_of_range);
  const auto iv = interim_interval(table, 100);
  CHECK(iv.lower < 0.05);
}
