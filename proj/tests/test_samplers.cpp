#include <doctest.h>

#include <stdexcept>

#include <atomic>
#include <cmath>
#include <sstream>
#include <vector>

#include "seqmc/samplers.hpp"

using namespace seqmc;

TEST_CASE("Rng splitting is deterministic and order independent") {
  const Rng base(42);
  Rng a = base.split(7), b = base.split(7), c = base.split(8);
  CHECK(a() == b());
  CHECK(Rng(42).split(7)() != c());
  Rng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("Bernoulli sampler: seed reproducibility and frequency") {
  BernoulliSampler s1(0.3, 9), s2(0.3, 9);
  int ones = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const bool x = *s1.next();
    CHECK(x == *s2.next());
    ones += x;
  }
  // 5 standard deviations.
  CHECK(std::abs(ones / double(n) - 0.3) < 5 * std::sqrt(0.21 / n));
  BernoulliSampler zero(0.0, 1), one(1.0, 1);
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(*zero.next());
    CHECK(*one.next());
  }
  CHECK_THROWS_AS(BernoulliSampler(1.5, 1), std::invalid_argument);
}

TEST_CASE("text bit stream") {
  std::istringstream in("0\n 1 \n\n1\r\n0");
  TextBitSampler s(in);
  std::vector<bool> got;
  while (auto b = s.next()) got.push_back(*b);
  CHECK(got == std::vector<bool>{false, true, true, false});

  std::istringstream bad("1\n2\n");
  TextBitSampler t(bad);
  CHECK(*t.next());
  CHECK_THROWS_WITH_AS(t.next(), doctest::Contains("line 2"), SamplerError);
}

TEST_CASE("command sampler") {
  CommandSampler ok("printf '1\\n0\\n1\\n'");
  CHECK(*ok.next());
  CHECK_FALSE(*ok.next());
  CHECK(*ok.next());
  CHECK_FALSE(ok.next().has_value());
  CHECK_FALSE(ok.next().has_value());

  CommandSampler failing("printf '1\\n'; exit 3");
  CHECK(*failing.next());
  CHECK_THROWS_AS(failing.next(), SamplerError);
}

TEST_CASE("indexed sampler yields index order for any thread count") {
  auto gen = [](std::uint64_t i) { return Rng(5).split(i).bernoulli(0.4); };
  std::vector<bool> ref;
  IndexedSampler one(gen, 1, 7);
  for (int i = 0; i < 500; ++i) ref.push_back(*one.next());
  for (unsigned threads : {2u, 4u}) {
    IndexedSampler many(gen, threads, 7);
    for (int i = 0; i < 500; ++i) CHECK(*many.next() == ref[i]);
    CHECK(many.produced() == 500);
  }
}

TEST_CASE("indexed sampler surfaces generator failures") {
  IndexedSampler s([](std::uint64_t i) -> bool {
    if (i == 3) throw std::runtime_error("boom");
    return true;
  }, 1, 1);
  CHECK(*s.next());
  CHECK(*s.next());
  CHECK(*s.next());
  CHECK_THROWS_WITH_AS(s.next(), doctest::Contains("boom"), SamplerError);
}

TEST_CASE("counting sampler") {
  std::int64_t count = 0;
  std::istringstream in("1\n1\n0\n");
  TextBitSampler text(in);
  CountingSampler c(text, count);
  while (c.next()) {
  }
  CHECK(count == 3);
}
