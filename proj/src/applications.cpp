#include "seqmc/applications.hpp"

#include <stdexcept>
#include <string>

#include "seqmc/distributions.hpp"

namespace seqmc {

namespace {

// Stream tags keep the nesting levels on disjoint generator streams.
constexpr std::uint64_t kOuterStream = 1;
constexpr std::uint64_t kFirstStageStream = 2;

SpendingSequence spending_of(const EngineOptions& o) { return SpendingSequence::standard(o.epsilon, o.k); }

void check_threshold(double a, const char* what) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
}

AppReport finish(BoundaryTable& table, const RunResult& r, std::int64_t samples) {
  AppReport rep;
  rep.result = r;
  rep.samples = samples;
  if (!r.stopped() && r.steps > 0) rep.interim = interim_interval(table, r.steps);
  return rep;
}

RunOptions outer_run_options(const EngineOptions& o) {
  RunOptions ro;
  ro.max_steps = o.max_steps;
  return ro;
}

// Fraction of `budget` draws from `model` whose statistic reaches t_obs.
double fixed_budget_pvalue(const NullModel& model, double t_obs, std::int64_t budget, Rng& rng,
                           std::int64_t& samples) {
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < budget; ++i) {
    if (lrt_statistic(sample_null(model, rng)) >= t_obs) ++hits;
    ++samples;
  }
  return static_cast<double>(hits) / static_cast<double>(budget);
}

// h_threshold over 1{T(B_j) >= t_obs}, B_j drawn from `model`, truncated at max_steps.
double inner_bootstrap(BoundaryCache& cache, double threshold, const NullModel& model, double t_obs,
                       std::int64_t max_steps, Rng& rng, std::int64_t& samples) {
  CallbackSampler draws([&] { return lrt_statistic(sample_null(model, rng)) >= t_obs; });
  CountingSampler counted(draws, samples);
  return h_alpha(cache, threshold, counted, max_steps);
}

}  // namespace

AppReport bootstrap_pvalue(const ContingencyTable& data, double alpha, const EngineOptions& options) {
  check_threshold(alpha, "alpha");
  const double t_obs = lrt_statistic(data);
  const NullModel model = NullModel::fit(data);
  const Rng base = Rng(options.seed).split(kOuterStream);
  IndexedSampler draws(
      [&model, base, t_obs](std::uint64_t i) {
        Rng rng = base.split(i);
        return lrt_statistic(sample_null(model, rng)) >= t_obs;
      },
      options.threads);
  std::int64_t samples = 0;
  CountingSampler counted(draws, samples);
  BoundaryTable table(alpha, spending_of(options));
  const RunResult r = run(table, counted, outer_run_options(options));
  return finish(table, r, samples);
}

AppReport check_level(const ContingencyTable& data, double nominal_alpha, double threshold_alpha,
                      const EngineOptions& options) {
  check_threshold(nominal_alpha, "nominal alpha");
  check_threshold(threshold_alpha, "threshold alpha");
  const double critical =
      chisq_quantile(1.0 - nominal_alpha, static_cast<double>(degrees_of_freedom(data)));
  const NullModel model = NullModel::fit(data);
  const Rng base = Rng(options.seed).split(kOuterStream);
  IndexedSampler draws(
      [&model, base, critical](std::uint64_t i) {
        Rng rng = base.split(i);
        return lrt_statistic(sample_null(model, rng)) >= critical;
      },
      options.threads);
  std::int64_t samples = 0;
  CountingSampler counted(draws, samples);
  BoundaryTable table(threshold_alpha, spending_of(options));
  const RunResult r = run(table, counted, outer_run_options(options));
  return finish(table, r, samples);
}

AppReport check_level_bootstrap(const ContingencyTable& data, std::int64_t inner_steps,
                                double outer_alpha, const EngineOptions& options, double inner_alpha) {
  if (inner_steps < 1) throw std::invalid_argument("inner step limit M must be >= 1");
  check_threshold(outer_alpha, "outer alpha");
  check_threshold(inner_alpha, "inner alpha");
  const NullModel model = NullModel::fit(data);
  const Rng base = Rng(options.seed).split(kOuterStream);
  BoundaryCache inner_cache(spending_of(options));
  std::int64_t samples = 0;
  std::uint64_t i = 0;
  CallbackSampler outer([&] {
    Rng rng = base.split(i++);
    const ContingencyTable a = sample_null(model, rng);
    ++samples;
    const double inner = inner_bootstrap(inner_cache, inner_alpha, NullModel::fit(a),
                                         lrt_statistic(a), inner_steps, rng, samples);
    return inner <= inner_alpha;
  });
  BoundaryTable table(outer_alpha, spending_of(options));
  const RunResult r = run(table, outer, outer_run_options(options));
  return finish(table, r, samples);
}

AppReport double_bootstrap(const ContingencyTable& data, std::int64_t inner_steps, double outer_alpha,
                           const EngineOptions& options, std::int64_t first_stage) {
  if (inner_steps < 1) throw std::invalid_argument("inner step limit M must be >= 1");
  if (first_stage < 1) throw std::invalid_argument("first-stage budget must be >= 1");
  check_threshold(outer_alpha, "outer alpha");
  const double t_obs = lrt_statistic(data);
  const NullModel model = NullModel::fit(data);
  std::int64_t samples = 0;

  Rng first_rng = Rng(options.seed).split(kFirstStageStream);
  const double p = fixed_budget_pvalue(model, t_obs, first_stage, first_rng, samples);
  if (!(p > 0.0 && p < 1.0))
    throw std::runtime_error("double bootstrap: first-stage p-value is " + std::to_string(p) +
                             "; a threshold strictly inside (0, 1) is required");

  const Rng base = Rng(options.seed).split(kOuterStream);
  BoundaryCache inner_cache(spending_of(options));
  std::uint64_t i = 0;
  CallbackSampler outer([&] {
    Rng rng = base.split(i++);
    const ContingencyTable a = sample_null(model, rng);
    ++samples;
    const double inner =
        inner_bootstrap(inner_cache, p, NullModel::fit(a), lrt_statistic(a), inner_steps, rng, samples);
    return inner <= p;
  });
  BoundaryTable table(outer_alpha, spending_of(options));
  const RunResult r = run(table, outer, outer_run_options(options));
  AppReport rep = finish(table, r, samples);
  rep.first_stage_p = p;
  return rep;
}

AppReport check_level_double_bootstrap(const ContingencyTable& data, std::int64_t inner_steps,
                                       std::int64_t middle_steps, double outer_alpha,
                                       const EngineOptions& options, std::int64_t first_stage,
                                       double nominal_alpha) {
  if (inner_steps < 1 || middle_steps < 1)
    throw std::invalid_argument("inner and middle step limits must be >= 1");
  if (first_stage < 1) throw std::invalid_argument("first-stage budget must be >= 1");
  check_threshold(outer_alpha, "outer alpha");
  check_threshold(nominal_alpha, "nominal alpha");
  const NullModel model = NullModel::fit(data);
  const Rng base = Rng(options.seed).split(kOuterStream);
  BoundaryCache cache(spending_of(options));
  std::int64_t samples = 0;
  std::uint64_t i = 0;

  CallbackSampler outer([&] {
    Rng rng = base.split(i++);
    const ContingencyTable a = sample_null(model, rng);
    ++samples;
    const double t_a = lrt_statistic(a);
    const NullModel null_a = NullModel::fit(a);
    std::int64_t hits = 0;
    for (std::int64_t b = 0; b < first_stage; ++b) {
      if (lrt_statistic(sample_null(null_a, rng)) >= t_a) ++hits;
      ++samples;
    }
    // Add-one estimate keeps the inner threshold strictly inside (0, 1).
    const double p_a = static_cast<double>(hits + 1) / static_cast<double>(first_stage + 1);
    CallbackSampler middle([&] {
      const ContingencyTable b = sample_null(null_a, rng);
      ++samples;
      const double inner =
          inner_bootstrap(cache, p_a, NullModel::fit(b), lrt_statistic(b), inner_steps, rng, samples);
      return inner <= p_a;
    });
    return h_alpha(cache, nominal_alpha, middle, middle_steps) <= nominal_alpha;
  });
  BoundaryTable table(outer_alpha, spending_of(options));
  const RunResult r = run(table, outer, outer_run_options(options));
  return finish(table, r, samples);
}

SampleSizeResult find_sample_size(const PowerStream& stream, double target_power, std::int64_t lo,
                                  std::int64_t hi, const EngineOptions& options) {
  if (lo > hi) throw std::invalid_argument("sample size search: empty range");
  if (!options.max_steps)
    throw std::invalid_argument("sample size search: a truncation (max_steps) is mandatory");
  SampleSizeResult res;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  if (target_power <= 0.0) {
    res.resolved = true;
    res.size = lo;
    return res;
  }
  check_threshold(target_power, "target power");

  BoundaryTable table(target_power, spending_of(options));
  RunOptions ro;
  ro.max_steps = options.max_steps;
  // +1: power above target, -1: below, 0: undecided within the truncation.
  auto classify = [&](std::int64_t n) {
    ++res.evaluations;
    auto sampler = stream(n);
    const RunResult r = run(table, *sampler, ro);
    if (!r.stopped()) return 0;
    return r.side == Side::upper ? 1 : -1;
  };

  const int at_hi = classify(hi);
  if (at_hi < 0)
    throw std::invalid_argument("sample size search: power at the upper end of the range is below target");
  if (at_hi == 0) return res;
  const int at_lo = classify(lo);
  if (at_lo > 0) {
    res.resolved = true;
    res.size = lo;
    res.bracket_hi = lo;
    return res;
  }
  if (at_lo == 0) return res;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    const int c = classify(mid);
    if (c == 0) {
      res.bracket_lo = lo;
      res.bracket_hi = hi;
      return res;
    }
    (c > 0 ? hi : lo) = mid;
  }
  res.resolved = true;
  res.size = hi;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  return res;
}

}  // namespace seqmc
