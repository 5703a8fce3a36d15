#include "seqmc/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seqmc {

std::string to_string(Side side) { return side == Side::upper ? "upper" : "lower"; }

namespace {

void ensure_extended(BoundaryTable& table, std::int64_t n) {
  if (n <= table.n_max()) return;
  std::int64_t target = std::max(n, 2 * table.n_max());
  if (auto len = table.spending().length()) target = std::max(n, std::min(target, *len));
  table.extend_to(target);
}

double envelope_radius(const BoundaryTable& table, std::int64_t m) {
  return (table.delta(m) + 1.0) / static_cast<double>(m);
}

}  // namespace

Interval coarse_interim_interval(const BoundaryTable& table, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("interim interval: n must be >= 1");
  const double r = envelope_radius(table, n);
  if (!std::isfinite(r)) return {0.0, 1.0};
  return {std::max(0.0, table.alpha() - r), std::min(1.0, table.alpha() + r)};
}

Interval interim_interval(BoundaryTable& table, std::int64_t n, std::optional<std::int64_t> window) {
  if (n < 1) throw std::invalid_argument("interim interval: n must be >= 1");
  const double alpha = table.alpha();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  auto scan = [&](std::int64_t from, std::int64_t to) {
    for (std::int64_t v = from; v <= to; ++v) {
      const double dv = static_cast<double>(v);
      hi = std::max(hi, static_cast<double>(table.upper(v)) / dv);
      lo = std::min(lo, static_cast<double>(table.lower(v)) / dv);
    }
  };
  auto clamp = [&] { return Interval{std::max(0.0, lo), std::min(1.0, hi)}; };

  if (auto len = table.spending().length()) {
    if (n > *len) throw std::out_of_range("interim interval: n beyond the spending table");
    table.extend_to(*len);
    scan(n, *len);
    return clamp();
  }

  std::int64_t w = window.value_or(static_cast<std::int64_t>(std::ceil(2.0 / alpha)));
  if (w < 0) throw std::invalid_argument("interim interval: window must be >= 0");
  std::int64_t m = n + w;
  table.extend_to(m);
  scan(n, m);
  for (;;) {
    const double r = envelope_radius(table, m + 1);
    if (alpha + r <= hi && alpha - r >= lo) return clamp();
    w = std::max<std::int64_t>(1, 2 * w);
    const std::int64_t next = n + w;
    table.extend_to(next);
    scan(m + 1, next);
    m = next;
  }
}

std::optional<RunResult> SequentialTest::step(bool x) {
  const std::int64_t n = n_ + 1;
  ensure_extended(*table_, n);
  n_ = n;
  s_ += x ? 1 : 0;
  const bool up = s_ >= table_->upper(n);
  const bool down = s_ <= table_->lower(n);
  if (!up && !down) return std::nullopt;
  RunResult r;
  r.status = RunResult::Status::stopped;
  r.steps = n_;
  r.successes = s_;
  r.side = up ? Side::upper : Side::lower;
  r.p_hat = static_cast<double>(s_) / static_cast<double>(n_);
  return r;
}

RunResult SequentialTest::truncate() const {
  RunResult r;
  r.status = RunResult::Status::truncated;
  r.steps = n_;
  r.successes = s_;
  // An empty run carries no information; report the threshold itself.
  r.p_hat = n_ > 0 ? static_cast<double>(s_) / static_cast<double>(n_) : table_->alpha();
  return r;
}

RunResult run(BoundaryTable& table, BitSampler& sampler, const RunOptions& options) {
  using clock = std::chrono::steady_clock;
  SequentialTest test(table);
  const auto start = clock::now();
  auto last_report = start;
  const bool timed = options.progress_sink && options.report_every_time.has_value();
  const bool counted = options.progress_sink && options.report_every_steps.has_value() &&
                       *options.report_every_steps > 0;

  for (;;) {
    if (options.max_steps && test.steps() >= *options.max_steps) return test.truncate();
    std::optional<bool> x;
    try {
      x = sampler.next();
    } catch (const std::exception& e) {
      throw RunAborted(std::string("sampler failed: ") + e.what(), test.steps(), test.successes());
    }
    if (!x) return test.truncate();
    if (auto done = test.step(*x)) return *done;

    const std::int64_t n = test.steps();
    bool report = counted && n % *options.report_every_steps == 0;
    clock::time_point now{};
    if (timed) {
      now = clock::now();
      report = report || now - last_report >= *options.report_every_time;
    }
    if (report) {
      if (!timed) now = clock::now();
      last_report = now;
      const double ms = std::chrono::duration<double, std::milli>(now - start).count();
      options.progress_sink(
          Progress{n, test.successes(), interim_interval(table, n, options.interim_window), ms});
    }
  }
}

BoundaryTable& BoundaryCache::table(double alpha) {
  std::lock_guard lock(mutex_);
  auto key = std::make_tuple(alpha, spending_.epsilon(), spending_.descriptor());
  auto it = tables_.find(key);
  if (it == tables_.end())
    it = tables_.emplace(key, std::make_unique<BoundaryTable>(alpha, spending_)).first;
  return *it->second;
}

std::size_t BoundaryCache::size() const {
  std::lock_guard lock(mutex_);
  return tables_.size();
}

double h_alpha(BoundaryCache& cache, double threshold, BitSampler& sampler,
               std::optional<std::int64_t> max_steps) {
  RunOptions opts;
  opts.max_steps = max_steps;
  return run(cache.table(threshold), sampler, opts).p_hat;
}

}  // namespace seqmc
