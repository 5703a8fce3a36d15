#include <doctest.h>

#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "seqmc/distributions.hpp"

using namespace seqmc;

TEST_CASE("chi-square upper tail against Boost.Math") {
  for (double df : {1.0, 2.0, 5.0, 24.0, 100.0, 1000.0}) {
    for (double t : {0.01, 0.5, 1.0, 3.0, 10.0, 24.0, 38.5, 60.0, 150.0, 1200.0}) {
      CAPTURE(df);
      CAPTURE(t);
      const double ref = boost::math::gamma_q(df / 2, t / 2);
      CHECK(std::abs(chisq_pvalue(t, df) - ref) < 1e-10);
      CHECK(std::abs(regularized_gamma_p(df / 2, t / 2) - (1 - ref)) < 1e-10);
    }
  }
}

TEST_CASE("chi-square edge values and monotonicity") {
  CHECK(chisq_pvalue(0.0, 24) == 1.0);
  double prev = 1.0;
  for (double t = 0.5; t < 100; t += 0.5) {
    const double v = chisq_pvalue(t, 24);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(chisq_pvalue(1e4, 4) == doctest::Approx(0.0));
}

TEST_CASE("chi-square quantile inverts the CDF") {
  for (double df : {1.0, 24.0, 200.0}) {
    for (double prob : {0.05, 0.5, 0.95, 0.999}) {
      const double q = chisq_quantile(prob, df);
      const double ref = boost::math::quantile(boost::math::chi_squared(df), prob);
      CHECK(q == doctest::Approx(ref).epsilon(1e-9));
    }
  }
  CHECK(chisq_quantile(0.95, 24) == doctest::Approx(36.415).epsilon(1e-4));
  CHECK_THROWS(chisq_quantile(1.0, 3));
}

TEST_CASE("normal cdf") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.6448536269514722) == doctest::Approx(0.95).epsilon(1e-12));
}
