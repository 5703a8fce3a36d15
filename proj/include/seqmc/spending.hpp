#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace seqmc {

// Schedule eps_n with eps_n increasing to the total risk budget eps.
//
// The default kind is eps_n = eps * n / (k + n). A custom kind holds an
// explicit finite table eps_1..eps_N; boundaries cannot be extended past N.
class SpendingSequence {
 public:
  enum class Kind { standard, custom };

  static SpendingSequence standard(double epsilon, std::int64_t k);
  static SpendingSequence custom(double epsilon, std::vector<double> values);

  Kind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  std::int64_t k() const { return k_; }
  const std::vector<double>& values() const { return values_; }

  // Largest n for which eps_n is defined; empty for the open-ended default.
  std::optional<std::int64_t> length() const;

  // eps_n for n >= 1, with eps_0 = 0. Throws std::out_of_range past a custom table.
  double operator()(std::int64_t n) const;

  // eps_n - eps_{n-1}. The default kind uses the closed form
  // eps * k / ((k + n)(k + n - 1)) so that late increments keep full precision.
  double increment(std::int64_t n) const;

  // "default:<k>" or "custom:<fnv1a-64 of the serialized values>".
  std::string descriptor() const;

  friend bool operator==(const SpendingSequence&, const SpendingSequence&) = default;

 private:
  SpendingSequence(Kind kind, double epsilon, std::int64_t k, std::vector<double> values);

  Kind kind_;
  double epsilon_;
  std::int64_t k_ = 0;
  std::vector<double> values_;
};

struct SpendingFlag {
  enum class Reason { non_positive_increment, fast_decay };
  std::int64_t n;
  Reason reason;
  double value;  // the increment, or the measured decay rate
};

struct SpendingReport {
  std::vector<double> increments;  // increments[n-1] = eps_n - eps_{n-1}
  std::vector<SpendingFlag> flags;
  bool ok() const { return flags.empty(); }
};

// Empirical check of log(eps_n - eps_{n-1}) = o(n) up to `horizon`.
//
// A step is flagged when its increment is zero, or when the average decay
// rate of log-increments over (n/2, n] exceeds `max_decay_rate`; an
// exponentially spent budget (increments ~ e^{-cn}) shows a rate of c.
SpendingReport validate_spending(const SpendingSequence& seq, std::int64_t horizon,
                                 double max_decay_rate = 0.5);

}  // namespace seqmc
