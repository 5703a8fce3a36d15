#include "seqmc/inference.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace seqmc {

LatticeWalk::LatticeWalk(const BoundaryTable& table, double p) : table_(&table), p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("lattice walk: p outside [0, 1]");
}

double OutcomeDistribution::upper_mass() const {
  double m = 0.0;
  for (const auto& o : outcomes)
    if (o.side == Side::upper) m += o.prob;
  return m;
}

double OutcomeDistribution::lower_mass() const {
  double m = 0.0;
  for (const auto& o : outcomes)
    if (o.side == Side::lower) m += o.prob;
  return m;
}

namespace {

void check_horizon(const BoundaryTable& table, std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (horizon > table.n_max())
    throw std::out_of_range("horizon " + std::to_string(horizon) + " beyond boundary table extent " +
                            std::to_string(table.n_max()));
}

// Walk state shared by the risk and stopping-time evaluations.
struct Accumulator {
  explicit Accumulator(const BoundaryTable& table, double p) : walk(table, p) {}

  void advance_to(std::int64_t horizon) {
    while (walk.steps() < horizon && walk.alive_total() > 0.0) {
      e_tau += walk.alive_total();
      walk.advance([this](std::int64_t, std::int64_t, Side side, double m) {
        (side == Side::upper ? upper : lower) += m;
      });
    }
  }

  LatticeWalk walk;
  double upper = 0.0;
  double lower = 0.0;
  double e_tau = 0.0;  // sum_{m < steps} P(tau > m)
};

RiskBound make_risk(const BoundaryTable& table, double p, const Accumulator& acc) {
  RiskBound r;
  r.p = p;
  r.lower = p <= table.alpha() ? acc.upper : acc.lower;
  r.residual = acc.walk.alive_total();
  r.upper = r.lower + r.residual;
  r.horizon = acc.walk.steps();
  return r;
}

}  // namespace

OutcomeDistribution outcome_distribution(const BoundaryTable& table, double p, std::int64_t horizon) {
  check_horizon(table, horizon);
  OutcomeDistribution d;
  d.p = p;
  d.horizon = horizon;
  LatticeWalk walk(table, p);
  while (walk.steps() < horizon && walk.alive_total() > 0.0) {
    walk.advance([&](std::int64_t tau, std::int64_t s, Side side, double m) {
      d.outcomes.push_back({tau, s, side, m});
    });
  }
  d.residual = walk.alive_total();
  return d;
}

RiskBound resampling_risk(const BoundaryTable& table, double p, std::int64_t horizon) {
  check_horizon(table, horizon);
  Accumulator acc(table, p);
  acc.advance_to(horizon);
  auto r = make_risk(table, p, acc);
  r.horizon = horizon;
  return r;
}

StopTime expected_stop_time(const BoundaryTable& table, double p, std::int64_t horizon) {
  check_horizon(table, horizon);
  Accumulator acc(table, p);
  acc.advance_to(horizon);
  return {acc.e_tau, acc.walk.alive_total(), horizon};
}

double wald_lower_bound(double p0, double epsilon, double alpha) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("wald bound: p0 must lie in (0, 1)");
  if (p0 == alpha) throw std::invalid_argument("wald bound: p0 equals alpha, bound diverges");
  const double num = (1.0 - epsilon) * std::log((1.0 - epsilon) / epsilon) +
                     epsilon * std::log(epsilon / (1.0 - epsilon));
  const double den = p0 * std::log(p0 / alpha) + (1.0 - p0) * std::log((1.0 - p0) / (1.0 - alpha));
  return num / den;
}

CurvePoint evaluate_point(const BoundaryTable& table, double p, const CurveOptions& options) {
  Accumulator acc(table, p);
  std::int64_t horizon = std::min(options.initial_horizon, table.n_max());
  for (;;) {
    acc.advance_to(horizon);
    const double residual = acc.walk.alive_total();
    if (p == table.alpha() || residual <= options.residual_target || horizon >= table.n_max()) break;
    horizon = std::min(2 * horizon, table.n_max());
  }
  CurvePoint pt;
  pt.p = p;
  pt.risk = make_risk(table, p, acc);
  pt.risk.horizon = horizon;
  pt.stop = {acc.e_tau, acc.walk.alive_total(), horizon};
  pt.wald_bound = (p > 0.0 && p < 1.0 && p != table.alpha())
                      ? wald_lower_bound(p, table.spending().epsilon(), table.alpha())
                      : std::numeric_limits<double>::quiet_NaN();
  return pt;
}

std::vector<CurvePoint> evaluate_curve(const BoundaryTable& table, std::span<const double> grid,
                                       const CurveOptions& options) {
  std::vector<CurvePoint> out(grid.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, grid.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = evaluate_point(table, grid[i], options);
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < grid.size();)
          out[i] = evaluate_point(table, grid[i], options);
      });
    }
  }
  return out;
}

double naive_risk(double p, std::int64_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("naive risk: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("naive risk: p outside [0, 1]");
  // p_hat <= alpha  <=>  S_n <= floor(n * alpha)
  const double na = static_cast<double>(n) * alpha;
  auto c = static_cast<std::int64_t>(std::floor(na));
  if (static_cast<double>(c + 1) <= na * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) ++c;
  c = std::clamp<std::int64_t>(c, -1, n);

  const bool want_low = p > alpha;  // P(S <= c), else P(S > c)
  if (p == 0.0) return want_low ? 1.0 : 0.0;
  if (p == 1.0) return want_low ? (c >= n ? 1.0 : 0.0) : (c >= n ? 0.0 : 1.0);
  const double dn = static_cast<double>(n);
  const double lp = std::log(p), lq = std::log1p(-p), lgn = std::lgamma(dn + 1.0);
  auto pmf = [&](std::int64_t k) {
    const double dk = static_cast<double>(k);
    return std::exp(lgn - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0) + dk * lp +
                    (dn - dk) * lq);
  };
  double sum = 0.0;
  if (want_low) {
    for (std::int64_t k = 0; k <= c; ++k) sum += pmf(k);
  } else {
    for (std::int64_t k = n; k > c; --k) sum += pmf(k);
  }
  return std::min(sum, 1.0);
}

}  // namespace seqmc
