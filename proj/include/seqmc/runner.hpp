#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

#include "seqmc/boundary.hpp"
#include "seqmc/samplers.hpp"

namespace seqmc {

enum class Side { upper, lower };

std::string to_string(Side side);

struct RunResult {
  enum class Status { stopped, truncated };

  Status status = Status::truncated;
  std::int64_t steps = 0;      // tau when stopped, n when truncated
  std::int64_t successes = 0;  // S_tau or S_n
  Side side = Side::lower;     // meaningful only when stopped
  double p_hat = 0.0;

  bool stopped() const { return status == Status::stopped; }
};

// Interval guaranteed to contain the eventual estimate of a run that has not
// stopped before step n.
struct Interval {
  double lower;
  double upper;
  double width() const { return upper - lower; }
  bool contains(const Interval& o) const { return lower <= o.lower && o.upper <= upper; }
};

// Sound interim interval at step n.
//
// Scans U_v/v and L_v/v over v in [n, n + w] starting with w = window
// (default ceil(2/alpha)) and doubling w until the Hoeffding envelope
// alpha +- (Delta_m + 1)/m beyond the scanned range lies inside the running
// extremes. For the default spending the envelope is decreasing in m, so the
// tail of the sequence cannot exceed it. A custom spending table is finite
// and is scanned to its end instead. The table is extended as needed.
Interval interim_interval(BoundaryTable& table, std::int64_t n,
                          std::optional<std::int64_t> window = std::nullopt);

// [alpha - (Delta_n + 1)/n, alpha + (Delta_n + 1)/n]; infinite Delta gives [0, 1].
Interval coarse_interim_interval(const BoundaryTable& table, std::int64_t n);

// Single sequential run over a boundary table that is extended on demand.
class SequentialTest {
 public:
  explicit SequentialTest(BoundaryTable& table) : table_(&table) {}

  // Consumes one draw; returns the result once a boundary is hit.
  std::optional<RunResult> step(bool x);

  std::int64_t steps() const { return n_; }
  std::int64_t successes() const { return s_; }
  const BoundaryTable& table() const { return *table_; }

  // The h_alpha convention for an undecided run: S_n/n.
  RunResult truncate() const;

 private:
  BoundaryTable* table_;
  std::int64_t n_ = 0;
  std::int64_t s_ = 0;
};

struct Progress {
  std::int64_t n;
  std::int64_t s;
  Interval interim;
  double elapsed_ms;
};

struct RunOptions {
  std::optional<std::int64_t> max_steps;
  std::optional<std::int64_t> report_every_steps;
  std::optional<std::chrono::milliseconds> report_every_time;
  std::optional<std::int64_t> interim_window;
  std::function<void(const Progress&)> progress_sink;
};

// Raised when the sampler fails mid-run; carries the partial state.
class RunAborted : public std::runtime_error {
 public:
  RunAborted(const std::string& what, std::int64_t n, std::int64_t s)
      : std::runtime_error(what), n_(n), s_(s) {}
  std::int64_t steps() const { return n_; }
  std::int64_t successes() const { return s_; }

 private:
  std::int64_t n_;
  std::int64_t s_;
};

// Drives the test until a boundary is hit, max_steps draws have been
// consumed, or a finite sampler runs dry (the last two give `truncated`).
RunResult run(BoundaryTable& table, BitSampler& sampler, const RunOptions& options = {});

// Boundary tables keyed by (alpha, epsilon, spending). Lookups are
// thread-safe; a returned table must be extended by one thread at a time.
class BoundaryCache {
 public:
  explicit BoundaryCache(SpendingSequence spending) : spending_(std::move(spending)) {}

  const SpendingSequence& spending() const { return spending_; }
  BoundaryTable& table(double alpha);
  std::size_t size() const;

 private:
  SpendingSequence spending_;
  mutable std::mutex mutex_;
  std::map<std::tuple<double, double, std::string>, std::unique_ptr<BoundaryTable>> tables_;
};

// The estimate of a run at `threshold`, for nesting runs inside other runs.
double h_alpha(BoundaryCache& cache, double threshold, BitSampler& sampler,
               std::optional<std::int64_t> max_steps = std::nullopt);

}  // namespace seqmc
