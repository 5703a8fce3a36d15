#include <cmath>
#include <limits>

#include "seqmc/inference.hpp"

namespace seqmc {

InterimBounds::InterimBounds(const BoundaryTable& table) {
  const std::int64_t n_max = table.n_max();
  suffix_min_.resize(static_cast<std::size_t>(n_max) + 2);
  suffix_max_.resize(static_cast<std::size_t>(n_max) + 2);

  const auto len = table.spending().length();
  if (len && *len == n_max) {
    // A finished custom table: nothing lies beyond n_max.
    tail_min_ = std::numeric_limits<double>::infinity();
    tail_max_ = -std::numeric_limits<double>::infinity();
  } else if (len) {
    tail_min_ = 0.0;
    tail_max_ = 1.0;
  } else {
    // Default spending: (Delta_m + 1)/m decreases in m, so its value at
    // n_max + 1 bounds every later step.
    const double r = (table.delta(n_max + 1) + 1.0) / static_cast<double>(n_max + 1);
    tail_min_ = table.alpha() - r;
    tail_max_ = table.alpha() + r;
  }
  suffix_min_[n_max + 1] = tail_min_;
  suffix_max_[n_max + 1] = tail_max_;
  for (std::int64_t v = n_max; v >= 1; --v) {
    const double dv = static_cast<double>(v);
    suffix_min_[v] = std::min(suffix_min_[v + 1], static_cast<double>(table.lower(v)) / dv);
    suffix_max_[v] = std::max(suffix_max_[v + 1], static_cast<double>(table.upper(v)) / dv);
  }
}

Interval InterimBounds::at(std::int64_t n) const {
  n = std::clamp<std::int64_t>(n, 1, static_cast<std::int64_t>(suffix_min_.size()) - 1);
  return {std::max(0.0, suffix_min_[n]), std::min(1.0, suffix_max_[n])};
}

namespace {

// p_hat compared against a rational (exact) or real threshold.
struct Threshold {
  double value;
  std::int64_t num = 0;
  std::int64_t den = 0;  // 0: compare as real

  int compare(std::int64_t s, std::int64_t tau) const {  // sign of s/tau - threshold
    if (den > 0) {
      const __int128 a = static_cast<__int128>(s) * den;
      const __int128 b = static_cast<__int128>(num) * tau;
      return (a > b) - (a < b);
    }
    const double e = static_cast<double>(s) / static_cast<double>(tau);
    return (e > value) - (e < value);
  }
};

enum class Event { at_least, at_most };

struct Bracket {
  double lo;
  double hi;
};

// Bracket on P_p(p_hat >= x) or P_p(p_hat <= x). Unstopped mass at step n
// ends inside bounds.at(n + 1); when that interval lies on one side of x the
// mass is assigned exactly. The walk also stops early once the bracket is
// decided relative to `target`.
Bracket event_bracket(const BoundaryTable& table, const InterimBounds& bounds, double p, Event event,
                      const Threshold& x, double target, std::int64_t horizon) {
  LatticeWalk walk(table, p);
  double in = 0.0;
  for (;;) {
    const double alive = walk.alive_total();
    if (alive <= 0.0) return {in, in};
    if (walk.steps() >= 1) {
      const Interval iv = bounds.at(walk.steps() + 1);
      const bool all_in = event == Event::at_least ? iv.lower >= x.value : iv.upper <= x.value;
      const bool all_out = event == Event::at_least ? iv.upper < x.value : iv.lower > x.value;
      if (all_in) return {in + alive, in + alive};
      if (all_out) return {in, in};
    }
    if (in > target || in + alive < target || walk.steps() >= horizon) return {in, in + alive};
    walk.advance([&](std::int64_t tau, std::int64_t s, Side, double m) {
      const int c = x.compare(s, tau);
      if (event == Event::at_least ? c >= 0 : c <= 0) in += m;
    });
  }
}

struct Enclosure {
  double lo;
  double hi;
};

// Encloses the root of a monotone function on [0, 1] given certified
// "root lies right of m" / "root lies left of m" predicates.
template <class Left, class Right>
Enclosure enclose_root(Left certified_left, Right certified_right, double tol) {
  double a_lo = 0.0, a_hi = 1.0;
  while (a_hi - a_lo > tol / 2) {
    const double m = 0.5 * (a_lo + a_hi);
    (certified_left(m) ? a_lo : a_hi) = m;
  }
  double b_lo = 0.0, b_hi = 1.0;
  while (b_hi - b_lo > tol / 2) {
    const double m = 0.5 * (b_lo + b_hi);
    (certified_right(m) ? b_hi : b_lo) = m;
  }
  return {a_lo, b_hi};
}

// Lower endpoint: root of the increasing map p -> P_p(p_hat >= x).
Enclosure lower_endpoint(const BoundaryTable& table, const InterimBounds& bounds, const Threshold& x,
                         double target, std::int64_t horizon, double tol) {
  auto eval = [&](double p) { return event_bracket(table, bounds, p, Event::at_least, x, target, horizon); };
  return enclose_root([&](double p) { return eval(p).hi < target; },
                      [&](double p) { return eval(p).lo > target; }, tol);
}

// Upper endpoint: root of the decreasing map p -> P_p(p_hat <= x).
Enclosure upper_endpoint(const BoundaryTable& table, const InterimBounds& bounds, const Threshold& x,
                         double target, std::int64_t horizon, double tol) {
  auto eval = [&](double p) { return event_bracket(table, bounds, p, Event::at_most, x, target, horizon); };
  return enclose_root([&](double p) { return eval(p).lo > target; },
                      [&](double p) { return eval(p).hi < target; }, tol);
}

std::int64_t prepare(BoundaryTable& table, const CiOptions& options, std::int64_t at_least) {
  std::int64_t horizon = std::max(options.horizon, at_least);
  if (auto len = table.spending().length()) horizon = std::min(horizon, *len);
  table.extend_to(horizon);
  return horizon;
}

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("confidence interval: beta outside (0, 1)");
}

}  // namespace

ConfidenceInterval confidence_interval_bracket(BoundaryTable& table, const RunResult& observed,
                                               double beta, const CiOptions& options) {
  check_beta(beta);
  if (!observed.stopped())
    throw std::invalid_argument("confidence interval: run has not stopped; use the running variant");
  const std::int64_t horizon = prepare(table, options, observed.steps);
  const InterimBounds bounds(table);
  const double target = beta / 2.0;
  const Threshold x{static_cast<double>(observed.successes) / static_cast<double>(observed.steps),
                    observed.successes, observed.steps};

  ConfidenceInterval ci;
  ci.p_obs = x.value;
  ci.tau = observed.steps;
  ci.s_tau = observed.successes;
  ci.beta = beta;
  ci.horizon = horizon;
  if (observed.successes == 0) {
    ci.p_low = 0.0;
  } else {
    const auto e = lower_endpoint(table, bounds, x, target, horizon, options.tolerance);
    ci.p_low = e.lo;
    ci.low_enclosure = e.hi - e.lo;
  }
  if (observed.successes == observed.steps) {
    ci.p_high = 1.0;
  } else {
    const auto e = upper_endpoint(table, bounds, x, target, horizon, options.tolerance);
    ci.p_high = e.hi;
    ci.high_enclosure = e.hi - e.lo;
  }
  ci.certified = ci.low_enclosure <= options.tolerance && ci.high_enclosure <= options.tolerance;
  return ci;
}

ConfidenceInterval confidence_interval(BoundaryTable& table, const RunResult& observed, double beta,
                                       const CiOptions& options) {
  auto ci = confidence_interval_bracket(table, observed, beta, options);
  if (!ci.certified)
    throw CertificationError("confidence interval: residual mass at horizon " +
                             std::to_string(ci.horizon) +
                             " is too large to certify the endpoints; increase the horizon");
  return ci;
}

ConfidenceInterval confidence_interval_running(BoundaryTable& table, std::int64_t n, double beta,
                                               const CiOptions& options) {
  check_beta(beta);
  const Interval interim = interim_interval(table, n);
  const std::int64_t horizon = prepare(table, options, n);
  const InterimBounds bounds(table);
  const double target = beta / 2.0;

  ConfidenceInterval ci;
  ci.p_obs = std::numeric_limits<double>::quiet_NaN();
  ci.tau = n;
  ci.beta = beta;
  ci.horizon = horizon;
  if (interim.lower <= 0.0) {
    ci.p_low = 0.0;
  } else {
    const auto e = lower_endpoint(table, bounds, Threshold{interim.lower}, target, horizon,
                                  options.tolerance);
    ci.p_low = e.lo;
    ci.low_enclosure = e.hi - e.lo;
  }
  if (interim.upper >= 1.0) {
    ci.p_high = 1.0;
  } else {
    const auto e = upper_endpoint(table, bounds, Threshold{interim.upper}, target, horizon,
                                  options.tolerance);
    ci.p_high = e.hi;
    ci.high_enclosure = e.hi - e.lo;
  }
  ci.certified = ci.low_enclosure <= options.tolerance && ci.high_enclosure <= options.tolerance;
  return ci;
}

}  // namespace seqmc
