#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqmc/spending.hpp"

namespace seqmc {

// Raised when a recursion step would produce U_n <= L_n.
class DegenerateBoundary : public std::runtime_error {
 public:
  DegenerateBoundary(std::int64_t n, const std::string& what)
      : std::runtime_error(what), n_(n) {}
  std::int64_t step() const { return n_; }

 private:
  std::int64_t n_;
};

// Stopping boundaries U_n, L_n for threshold alpha, computed by the forward
// lattice recursion under p = alpha.
//
// U_n is the smallest positive integer j with
//   P(tau >= n, S_n >= j) + P(tau < n, S_tau >= U_tau) <= eps_n
// and L_n the largest integer j with the mirrored lower-tail condition.
// U_1 = 2 and L_1 = -1 are fixed seeds. Only the current alive window of the
// lattice is kept; the per-step cumulative hit probabilities are stored so
// the budget invariants can be audited at every n.
//
// Extension is single-writer. A table that is no longer extended can be
// shared freely between readers.
class BoundaryTable {
 public:
  BoundaryTable(double alpha, SpendingSequence spending);

  double alpha() const { return alpha_; }
  const SpendingSequence& spending() const { return spending_; }
  std::int64_t n_max() const { return static_cast<std::int64_t>(upper_.size()); }

  // Extends the recursion so that boundaries exist for all n <= n_target.
  // A target at or below n_max() is a no-op.
  void extend_to(std::int64_t n_target);

  std::int64_t upper(std::int64_t n) const { return upper_.at(index(n)); }
  std::int64_t lower(std::int64_t n) const { return lower_.at(index(n)); }
  // P_alpha(tau <= n, upper hit) and P_alpha(tau <= n, lower hit).
  double hit_upper_cum(std::int64_t n) const { return hit_upper_.at(index(n)); }
  double hit_lower_cum(std::int64_t n) const { return hit_lower_.at(index(n)); }

  std::span<const std::int64_t> upper_bounds() const { return upper_; }
  std::span<const std::int64_t> lower_bounds() const { return lower_; }
  std::span<const double> hit_upper_history() const { return hit_upper_; }
  std::span<const double> hit_lower_history() const { return hit_lower_; }

  // P_alpha(tau > n_max, S_{n_max} = j) for j = alive_offset() + i.
  std::span<const double> alive_mass() const { return alive_; }
  std::int64_t alive_offset() const { return lower_.back() + 1; }
  double alive_total() const;

  // |sum(alive) + hit_upper + hit_lower - 1|.
  double mass_drift() const;
  // Drift allowance at the current extent: 1e-10 per 1e4 steps (at least one block).
  double drift_budget() const;

  // Hoeffding radius sqrt(-n log(eps_n - eps_{n-1}) / 2); +inf on a zero increment.
  double delta(std::int64_t n) const;

  // Rebuilds a table from persisted state; validates shape and mass.
  static BoundaryTable restore(double alpha, SpendingSequence spending,
                               std::vector<std::int64_t> upper, std::vector<std::int64_t> lower,
                               std::vector<double> hit_upper, std::vector<double> hit_lower,
                               std::vector<double> alive);

  // Structural equality over parameters and all persisted state.
  friend bool operator==(const BoundaryTable& a, const BoundaryTable& b);

 private:
  std::size_t index(std::int64_t n) const;
  void step();

  double alpha_;
  SpendingSequence spending_;
  std::vector<std::int64_t> upper_;
  std::vector<std::int64_t> lower_;
  std::vector<double> hit_upper_;
  std::vector<double> hit_lower_;
  std::vector<double> alive_;
  std::vector<double> scratch_;
};

// Hoeffding radius for an arbitrary spending sequence (free-function form).
double hoeffding_delta(const SpendingSequence& spending, std::int64_t n);

}  // namespace seqmc
