#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "seqmc/boundary.hpp"
#include "seqmc/runner.hpp"

namespace seqmc {

// Forward recursion of the law of S_n on {tau > n} under Bernoulli(p), with
// the boundaries of a fixed table. Resumable: callers advance it step by step.
class LatticeWalk {
 public:
  LatticeWalk(const BoundaryTable& table, double p);

  std::int64_t steps() const { return n_; }
  // P_p(tau > steps()).
  double alive_total() const { return alive_total_; }
  std::span<const double> alive() const { return alive_; }
  std::int64_t alive_offset() const { return offset_; }

  // Advances to step n+1; on_stop(tau, s_tau, side, prob) is called for every
  // lattice point absorbed at this step. Requires n+1 <= table.n_max().
  template <class OnStop>
  void advance(OnStop&& on_stop);

 private:
  const BoundaryTable* table_;
  double p_;
  std::int64_t n_ = 0;
  std::int64_t offset_ = 0;
  std::vector<double> alive_{1.0};
  std::vector<double> next_;
  double alive_total_ = 1.0;
};

struct Outcome {
  std::int64_t tau;
  std::int64_t s_tau;
  Side side;
  double prob;
};

struct OutcomeDistribution {
  double p = 0.0;
  std::int64_t horizon = 0;
  std::vector<Outcome> outcomes;
  double residual = 0.0;  // P_p(tau > horizon)

  double upper_mass() const;
  double lower_mass() const;
};

// Exact law of (tau, S_tau) under p, truncated at `horizon` <= table.n_max().
OutcomeDistribution outcome_distribution(const BoundaryTable& table, double p, std::int64_t horizon);

// Bracket on RR_p: `lower` is the stopped wrong-side mass, `upper` adds the
// residual that could still end on the wrong side.
struct RiskBound {
  double p = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double residual = 0.0;
  std::int64_t horizon = 0;
};

RiskBound resampling_risk(const BoundaryTable& table, double p, std::int64_t horizon);

struct StopTime {
  double value = 0.0;     // E_p(min(tau, horizon))
  double residual = 0.0;  // P_p(tau > horizon)
  std::int64_t horizon = 0;
};

StopTime expected_stop_time(const BoundaryTable& table, double p, std::int64_t horizon);

// One row of a risk / expected-stopping-time curve.
struct CurvePoint {
  double p = 0.0;
  RiskBound risk;
  StopTime stop;
  double wald_bound = 0.0;  // NaN at p == alpha
};

struct CurveOptions {
  std::int64_t initial_horizon = 100000;
  // Auto-doubling continues while the residual exceeds this and the table
  // allows it. Disabled at p == alpha, where the residual never vanishes.
  double residual_target = 1e-8;
  unsigned threads = 1;
};

// Evaluates every grid point; the table bounds the largest horizon reached.
// Results are ordered as the grid regardless of thread count.
std::vector<CurvePoint> evaluate_curve(const BoundaryTable& table, std::span<const double> grid,
                                       const CurveOptions& options = {});

CurvePoint evaluate_point(const BoundaryTable& table, double p, const CurveOptions& options = {});

// Wald's approximation of the SPRT expected sample size at p0 for error
// probabilities epsilon, a lower bound on E_p0(tau) for any procedure with
// uniformly bounded resampling risk. Throws at p0 == alpha.
double wald_lower_bound(double p0, double epsilon, double alpha);

// Resampling risk of the fixed-n estimator S_n/n.
double naive_risk(double p, std::int64_t n, double alpha);

// Sound [p_min(n), p_max(n)] for every n <= table.n_max(), from suffix
// extremes of L_v/v and U_v/v plus the Hoeffding envelope past n_max.
class InterimBounds {
 public:
  explicit InterimBounds(const BoundaryTable& table);
  Interval at(std::int64_t n) const;

 private:
  std::vector<double> suffix_min_;
  std::vector<double> suffix_max_;
  double tail_min_;
  double tail_max_;
};

struct ConfidenceInterval {
  double p_obs = 0.0;
  std::int64_t tau = 0;
  std::int64_t s_tau = 0;
  double beta = 0.0;
  double p_low = 0.0;
  double p_high = 1.0;
  std::int64_t horizon = 0;
  bool certified = false;
  // Width of the certified enclosure of each endpoint root.
  double low_enclosure = 0.0;
  double high_enclosure = 0.0;
};

struct CiOptions {
  std::int64_t horizon = 100000;
  double tolerance = 1e-6;
};

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact-method interval for a stopped run: p_low solves P_p(p_hat >= p_obs) = beta/2,
// p_high solves P_p(p_hat <= p_obs) = beta/2. Each root is enclosed by two
// bisections working from opposite sides of the residual bracket; the reported
// endpoints are the outer ends of the enclosures. Extends the table to the horizon.
ConfidenceInterval confidence_interval_bracket(BoundaryTable& table, const RunResult& observed,
                                               double beta, const CiOptions& options = {});

// As above, but throws CertificationError when an enclosure is wider than the tolerance.
ConfidenceInterval confidence_interval(BoundaryTable& table, const RunResult& observed, double beta,
                                       const CiOptions& options = {});

// Interval for a run still going at step n: the interim bounds replace p_obs.
ConfidenceInterval confidence_interval_running(BoundaryTable& table, std::int64_t n, double beta,
                                               const CiOptions& options = {});

// ---------------------------------------------------------------------------

template <class OnStop>
void LatticeWalk::advance(OnStop&& on_stop) {
  const std::int64_t n = n_ + 1;
  const std::int64_t u = table_->upper(n);
  const std::int64_t l = table_->lower(n);
  const double q = 1.0 - p_;
  const std::size_t w = alive_.size();
  next_.assign(w + 1, 0.0);
  for (std::size_t i = 0; i < w; ++i) {
    next_[i] += alive_[i] * q;
    next_[i + 1] += alive_[i] * p_;
  }
  // Support of next_ is [offset_, offset_ + w]; absorb j >= u and j <= l.
  std::int64_t first = offset_;
  std::int64_t last = offset_ + static_cast<std::int64_t>(w);
  for (std::int64_t j = last; j >= first && j >= u; --j) {
    const double m = next_[static_cast<std::size_t>(j - offset_)];
    if (m > 0.0) on_stop(n, j, Side::upper, m);
  }
  for (std::int64_t j = first; j <= last && j <= l; ++j) {
    const double m = next_[static_cast<std::size_t>(j - offset_)];
    if (m > 0.0) on_stop(n, j, Side::lower, m);
  }
  const std::int64_t keep_lo = std::max(first, l + 1);
  const std::int64_t keep_hi = std::min(last, u - 1);
  alive_.clear();
  double total = 0.0;
  for (std::int64_t j = keep_lo; j <= keep_hi; ++j) {
    const double m = next_[static_cast<std::size_t>(j - offset_)];
    alive_.push_back(m);
    total += m;
  }
  offset_ = keep_lo;
  alive_total_ = total;
  n_ = n;
}

}  // namespace seqmc
