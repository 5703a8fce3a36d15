#include "seqmc/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace seqmc {

namespace {

constexpr std::int64_t kDriftBlock = 10000;
constexpr double kDriftPerBlock = 1e-10;

}  // namespace

double hoeffding_delta(const SpendingSequence& spending, std::int64_t n) {
  const double inc = spending.increment(n);
  if (!(inc > 0.0)) return std::numeric_limits<double>::infinity();
  const double v = -static_cast<double>(n) * std::log(inc) / 2.0;
  return std::sqrt(std::max(v, 0.0));
}

BoundaryTable::BoundaryTable(double alpha, SpendingSequence spending)
    : alpha_(alpha), spending_(std::move(spending)) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("boundary: alpha must lie in (0, 1)");
  upper_.push_back(2);
  lower_.push_back(-1);
  hit_upper_.push_back(0.0);
  hit_lower_.push_back(0.0);
  alive_ = {1.0 - alpha, alpha};  // S_1 in {0, 1}, both strictly inside (-1, 2)
}

std::size_t BoundaryTable::index(std::int64_t n) const {
  if (n < 1 || n > n_max())
    throw std::out_of_range("boundary: step " + std::to_string(n) + " outside [1, " +
                            std::to_string(n_max()) + "]");
  return static_cast<std::size_t>(n - 1);
}

double BoundaryTable::alive_total() const {
  return std::accumulate(alive_.begin(), alive_.end(), 0.0);
}

double BoundaryTable::mass_drift() const {
  return std::abs(alive_total() + hit_upper_.back() + hit_lower_.back() - 1.0);
}

double BoundaryTable::drift_budget() const {
  const std::int64_t blocks = std::max<std::int64_t>(1, (n_max() + kDriftBlock - 1) / kDriftBlock);
  return kDriftPerBlock * static_cast<double>(blocks);
}

double BoundaryTable::delta(std::int64_t n) const { return hoeffding_delta(spending_, n); }

void BoundaryTable::extend_to(std::int64_t n_target) {
  if (auto len = spending_.length(); len && n_target > *len)
    throw std::out_of_range("boundary: spending table ends at n=" + std::to_string(*len) +
                            ", cannot extend to " + std::to_string(n_target));
  if (n_target <= n_max()) return;
  upper_.reserve(static_cast<std::size_t>(n_target));
  lower_.reserve(static_cast<std::size_t>(n_target));
  hit_upper_.reserve(static_cast<std::size_t>(n_target));
  hit_lower_.reserve(static_cast<std::size_t>(n_target));
  while (n_max() < n_target) {
    step();
    if (n_max() % kDriftBlock == 0 && mass_drift() > drift_budget())
      throw std::runtime_error("boundary: mass drift " + std::to_string(mass_drift()) +
                               " exceeds budget at n=" + std::to_string(n_max()));
  }
}

void BoundaryTable::step() {
  const std::int64_t n = n_max() + 1;
  const std::int64_t lo = lower_.back() + 1;  // support of the alive mass: [lo, hi]
  const double eps_n = spending_(n);
  const double hit_up = hit_upper_.back();
  const double hit_down = hit_lower_.back();

  // One Bernoulli(alpha) step: support grows to [lo, hi + 1].
  const std::size_t width = alive_.size() + 1;
  scratch_.assign(width, 0.0);
  const double q = 1.0 - alpha_;
  for (std::size_t i = 0; i < alive_.size(); ++i) {
    scratch_[i] += alive_[i] * q;
    scratch_[i + 1] += alive_[i] * alpha_;
  }
  auto mass_at = [&](std::int64_t j) {
    const std::int64_t i = j - lo;
    return (i >= 0 && i < static_cast<std::int64_t>(width)) ? scratch_[i] : 0.0;
  };

  // Upper boundary moves by at most one: start at U_{n-1} + 1 where the tail is empty.
  std::int64_t u = upper_.back() + 1;
  double tail_up = 0.0;
  while (u - 1 >= 1) {
    const double m = mass_at(u - 1);
    if (tail_up + m + hit_up <= eps_n) {
      tail_up += m;
      --u;
    } else {
      break;
    }
  }

  const std::int64_t top = lo + static_cast<std::int64_t>(width) - 1;
  std::int64_t l = lower_.back();
  double tail_down = 0.0;
  while (l + 1 <= top) {
    const double m = mass_at(l + 1);
    if (tail_down + m + hit_down <= eps_n) {
      tail_down += m;
      ++l;
    } else {
      break;
    }
  }

  if (u <= l)
    throw DegenerateBoundary(n, "boundary: degenerate spending at n=" + std::to_string(n) +
                                    " (U_n=" + std::to_string(u) + " <= L_n=" +
                                    std::to_string(l) + ")");

  upper_.push_back(u);
  lower_.push_back(l);
  hit_upper_.push_back(hit_up + tail_up);
  hit_lower_.push_back(hit_down + tail_down);
  alive_.assign(scratch_.begin() + (l + 1 - lo), scratch_.begin() + (u - lo));
}

BoundaryTable BoundaryTable::restore(double alpha, SpendingSequence spending,
                                     std::vector<std::int64_t> upper,
                                     std::vector<std::int64_t> lower,
                                     std::vector<double> hit_upper,
                                     std::vector<double> hit_lower, std::vector<double> alive) {
  BoundaryTable t(alpha, std::move(spending));
  const std::size_t n = upper.size();
  if (n == 0 || lower.size() != n || hit_upper.size() != n || hit_lower.size() != n)
    throw std::invalid_argument("boundary: restored arrays have inconsistent lengths");
  if (upper[0] != 2 || lower[0] != -1)
    throw std::invalid_argument("boundary: restored table does not start at U_1=2, L_1=-1");
  for (std::size_t i = 0; i < n; ++i) {
    if (upper[i] <= lower[i])
      throw std::invalid_argument("boundary: restored U_n <= L_n at n=" + std::to_string(i + 1));
  }
  if (static_cast<std::int64_t>(alive.size()) != upper.back() - lower.back() - 1)
    throw std::invalid_argument("boundary: alive mass width does not match U_n - L_n - 1");
  if (std::any_of(alive.begin(), alive.end(), [](double v) { return !(v >= 0.0); }))
    throw std::invalid_argument("boundary: alive mass has negative or NaN entries");
  t.upper_ = std::move(upper);
  t.lower_ = std::move(lower);
  t.hit_upper_ = std::move(hit_upper);
  t.hit_lower_ = std::move(hit_lower);
  t.alive_ = std::move(alive);
  if (!(t.mass_drift() <= t.drift_budget()))
    throw std::invalid_argument("boundary: restored mass vector fails conservation (drift " +
                                std::to_string(t.mass_drift()) + ")");
  return t;
}

bool operator==(const BoundaryTable& a, const BoundaryTable& b) {
  return a.alpha_ == b.alpha_ && a.spending_ == b.spending_ && a.upper_ == b.upper_ &&
         a.lower_ == b.lower_ && a.hit_upper_ == b.hit_upper_ && a.hit_lower_ == b.hit_lower_ &&
         a.alive_ == b.alive_;
}

}  // namespace seqmc
