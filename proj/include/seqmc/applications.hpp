#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "seqmc/contingency.hpp"
#include "seqmc/runner.hpp"

namespace seqmc {

struct EngineOptions {
  double epsilon = 1e-3;
  std::int64_t k = 1000;
  std::optional<std::int64_t> max_steps;  // outermost run only
  std::uint64_t seed = 0;
  unsigned threads = 1;  // sample production for single-level runs
};

// Outcome of an application run. `samples` counts every simulated table,
// across all nesting levels; `interim` is set when the outer run truncated.
struct AppReport {
  RunResult result;
  std::int64_t samples = 0;
  std::optional<Interval> interim;
  std::optional<double> first_stage_p;  // double bootstrap only
};

// Sequential parametric bootstrap: the stream 1{T(A_i) >= T(data)} with A_i
// drawn from the independence fit of `data`, run at threshold alpha.
AppReport bootstrap_pvalue(const ContingencyTable& data, double alpha, const EngineOptions& options);

// Rejection rate of the asymptotic chi-square test at level nominal_alpha
// under the fitted null, compared against threshold_alpha.
AppReport check_level(const ContingencyTable& data, double nominal_alpha, double threshold_alpha,
                      const EngineOptions& options);

// Rejection rate of the bootstrap test itself: each outer draw A_i is tested
// by an inner bootstrap run at inner_alpha truncated after `inner_steps` draws.
AppReport check_level_bootstrap(const ContingencyTable& data, std::int64_t inner_steps,
                                double outer_alpha, const EngineOptions& options,
                                double inner_alpha = 0.05);

// Double bootstrap: a first-stage p from a fixed budget, then an outer run at
// outer_alpha over 1{h_p(inner stream of A_i) <= p}, inner runs truncated at inner_steps.
AppReport double_bootstrap(const ContingencyTable& data, std::int64_t inner_steps,
                           double outer_alpha, const EngineOptions& options,
                           std::int64_t first_stage = 10000);

// Level check of the double bootstrap: three nested runs. Each outer draw A_i
// gets its own first-stage p_i, a middle run truncated at middle_steps and
// inner runs truncated at inner_steps.
AppReport check_level_double_bootstrap(const ContingencyTable& data, std::int64_t inner_steps,
                                       std::int64_t middle_steps, double outer_alpha,
                                       const EngineOptions& options, std::int64_t first_stage = 1000,
                                       double nominal_alpha = 0.05);

struct SampleSizeResult {
  bool resolved = false;
  std::int64_t size = 0;  // smallest size whose power exceeds the target, when resolved
  std::int64_t bracket_lo = 0;
  std::int64_t bracket_hi = 0;
  std::int64_t evaluations = 0;
};

// Produces the rejection-indicator stream of the test at a given sample size.
using PowerStream = std::function<std::unique_ptr<BitSampler>(std::int64_t sample_size)>;

// Bisection over [lo, hi] for the smallest sample size whose power exceeds
// target_power, each comparison decided by a truncated sequential run.
// options.max_steps is mandatory. Throws when hi is decided below target.
SampleSizeResult find_sample_size(const PowerStream& stream, double target_power, std::int64_t lo,
                                  std::int64_t hi, const EngineOptions& options);

}  // namespace seqmc
