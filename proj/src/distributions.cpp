#include "seqmc/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace seqmc {

namespace {

constexpr int kMaxIter = 10000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// P(a, x) by its power series; converges fast for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction; used for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_args(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("incomplete gamma: a must be positive");
  if (!(x >= 0.0)) throw std::domain_error("incomplete gamma: x must be non-negative");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

double chisq_pvalue(double t, double df) {
  if (!(df > 0.0)) throw std::domain_error("chi-square: df must be positive");
  if (t <= 0.0) return 1.0;
  return regularized_gamma_q(df / 2.0, t / 2.0);
}

double chisq_quantile(double prob, double df) {
  if (!(prob > 0.0 && prob < 1.0)) throw std::domain_error("chi-square quantile: prob outside (0, 1)");
  double lo = 0.0, hi = std::max(1.0, df);
  while (regularized_gamma_p(df / 2.0, hi / 2.0) < prob) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (regularized_gamma_p(df / 2.0, mid / 2.0) < prob ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace seqmc
