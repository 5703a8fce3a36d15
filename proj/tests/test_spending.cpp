#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "seqmc/spending.hpp"

using namespace seqmc;

TEST_CASE("default spending values") {
  const auto s = SpendingSequence::standard(1e-3, 1000);
  CHECK(s(0) == 0.0);
  CHECK(s(1000) == doctest::Approx(5e-4).epsilon(1e-15));
  CHECK(SpendingSequence::standard(0.05, 500)(500) == doctest::Approx(0.025).epsilon(1e-15));
  CHECK_FALSE(s.length().has_value());
  CHECK(s.descriptor() == "default:1000");

  double prev = 0.0;
  for (std::int64_t n = 1; n <= 100000; n += 997) {
    const double v = s(n);
    CHECK(v > prev);
    CHECK(v < 1e-3);
    prev = v;
  }
  CHECK(s(1'000'000'000) == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("closed-form increment agrees with the difference of values") {
  const auto s = SpendingSequence::standard(1e-3, 1000);
  for (std::int64_t n : {1, 2, 10, 999, 1000, 12345}) {
    const double diff = s(n) - s(n - 1);
    CHECK(s.increment(n) == doctest::Approx(diff).epsilon(1e-8));
  }
  // Far out the difference cancels but the closed form does not.
  CHECK(s.increment(100'000'000) > 0.0);
}

TEST_CASE("epsilon and k preconditions") {
  CHECK_THROWS_AS(SpendingSequence::standard(0.3, 1000), std::invalid_argument);
  CHECK_THROWS_AS(SpendingSequence::standard(0.0, 1000), std::invalid_argument);
  CHECK_THROWS_AS(SpendingSequence::standard(1e-3, 0), std::invalid_argument);
  CHECK_NOTHROW(SpendingSequence::standard(0.25, 1));
}

TEST_CASE("custom tables") {
  const auto s = SpendingSequence::custom(0.01, {0.001, 0.002, 0.002, 0.005});
  CHECK(s.length() == 4);
  CHECK(s(2) == 0.002);
  CHECK(s.increment(3) == 0.0);
  CHECK_THROWS_AS(s(5), std::out_of_range);
  CHECK(s.descriptor().rfind("custom:", 0) == 0);
  CHECK(s.descriptor() != SpendingSequence::custom(0.01, {0.001, 0.002, 0.003, 0.005}).descriptor());

  CHECK_THROWS_AS(SpendingSequence::custom(0.01, {0.002, 0.001}), std::invalid_argument);
  CHECK_THROWS_AS(SpendingSequence::custom(0.01, {0.001, 0.01}), std::invalid_argument);
  CHECK_THROWS_AS(SpendingSequence::custom(0.01, {}), std::invalid_argument);
}

TEST_CASE("validate_spending: default passes over 1e4 steps") {
  const auto rep = validate_spending(SpendingSequence::standard(1e-3, 1000), 10000);
  CHECK(rep.ok());
  REQUIRE(rep.increments.size() == 10000);
  const double n = 5000, k = 1000, eps = 1e-3;
  CHECK(rep.increments[4999] == doctest::Approx(eps * k / ((k + n) * (k + n - 1))).epsilon(1e-14));
}

TEST_CASE("validate_spending: zero increment is flagged at that step") {
  const auto rep = validate_spending(SpendingSequence::custom(0.01, {0.001, 0.002, 0.003, 0.004, 0.004, 0.005}), 6);
  REQUIRE(rep.flags.size() == 1);
  CHECK(rep.flags[0].n == 5);
  CHECK(rep.flags[0].reason == SpendingFlag::Reason::non_positive_increment);
}

TEST_CASE("validate_spending: exponentially spent budget is flagged") {
  std::vector<double> v;
  for (int n = 1; n <= 40; ++n) v.push_back(0.01 * (1.0 - std::ldexp(1.0, -n)));
  const auto rep = validate_spending(SpendingSequence::custom(0.01, v), 40);
  CHECK_FALSE(rep.ok());
  bool late_flag = false;
  for (const auto& f : rep.flags) {
    CHECK(f.reason == SpendingFlag::Reason::fast_decay);
    CHECK(f.value == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    late_flag = late_flag || f.n == 40;
  }
  CHECK(late_flag);
}
