#include "seqmc/spending.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace seqmc {

SpendingSequence::SpendingSequence(Kind kind, double epsilon, std::int64_t k,
                                   std::vector<double> values)
    : kind_(kind), epsilon_(epsilon), k_(k), values_(std::move(values)) {}

SpendingSequence SpendingSequence::standard(double epsilon, std::int64_t k) {
  if (!(epsilon > 0.0 && epsilon <= 0.25))
    throw std::invalid_argument("spending: epsilon must lie in (0, 1/4]");
  if (k < 1) throw std::invalid_argument("spending: k must be a positive integer");
  return SpendingSequence(Kind::standard, epsilon, k, {});
}

SpendingSequence SpendingSequence::custom(double epsilon, std::vector<double> values) {
  if (!(epsilon > 0.0 && epsilon <= 0.25))
    throw std::invalid_argument("spending: epsilon must lie in (0, 1/4]");
  if (values.empty()) throw std::invalid_argument("spending: custom table is empty");
  double prev = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v >= 0.0 && v < epsilon))
      throw std::invalid_argument("spending: eps_" + std::to_string(i + 1) +
                                  " outside [0, epsilon)");
    if (v < prev)
      throw std::invalid_argument("spending: table decreases at n=" + std::to_string(i + 1));
    prev = v;
  }
  return SpendingSequence(Kind::custom, epsilon, 0, std::move(values));
}

std::optional<std::int64_t> SpendingSequence::length() const {
  if (kind_ == Kind::custom) return static_cast<std::int64_t>(values_.size());
  return std::nullopt;
}

double SpendingSequence::operator()(std::int64_t n) const {
  if (n < 0) throw std::out_of_range("spending: negative step");
  if (n == 0) return 0.0;
  if (kind_ == Kind::standard)
    return epsilon_ * static_cast<double>(n) / static_cast<double>(k_ + n);
  if (n > static_cast<std::int64_t>(values_.size()))
    throw std::out_of_range("spending: custom table has " + std::to_string(values_.size()) +
                            " entries, eps_" + std::to_string(n) + " requested");
  return values_[static_cast<std::size_t>(n - 1)];
}

double SpendingSequence::increment(std::int64_t n) const {
  if (n < 1) throw std::out_of_range("spending: increment needs n >= 1");
  if (kind_ == Kind::standard) {
    const double kn = static_cast<double>(k_ + n);
    return epsilon_ * static_cast<double>(k_) / (kn * (kn - 1.0));
  }
  return (*this)(n) - (*this)(n - 1);
}

std::string SpendingSequence::descriptor() const {
  if (kind_ == Kind::standard) return "default:" + std::to_string(k_);
  std::uint64_t h = 1469598103934665603ULL;
  char buf[32];
  for (double v : values_) {
    const int len = std::snprintf(buf, sizeof buf, "%.17g;", v);
    for (int i = 0; i < len; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("custom:") + buf;
}

SpendingReport validate_spending(const SpendingSequence& seq, std::int64_t horizon,
                                 double max_decay_rate) {
  if (horizon < 2) throw std::invalid_argument("validate_spending: horizon must be >= 2");
  if (auto len = seq.length(); len && horizon > *len) horizon = *len;

  SpendingReport report;
  report.increments.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t n = 1; n <= horizon; ++n) report.increments.push_back(seq.increment(n));

  auto log_inc = [&](std::int64_t n) { return std::log(report.increments[n - 1]); };
  for (std::int64_t n = 2; n <= horizon; ++n) {
    const double inc = report.increments[n - 1];
    if (!(inc > 0.0)) {
      report.flags.push_back({n, SpendingFlag::Reason::non_positive_increment, inc});
      continue;
    }
    const std::int64_t m = n / 2;
    if (report.increments[m - 1] <= 0.0) continue;
    const double rate = (log_inc(m) - log_inc(n)) / static_cast<double>(n - m);
    if (rate > max_decay_rate)
      report.flags.push_back({n, SpendingFlag::Reason::fast_decay, rate});
  }
  return report;
}

}  // namespace seqmc
