#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "seqmc/rng.hpp"

namespace seqmc {

// Two-way table of non-negative counts, row-major.
class ContingencyTable {
 public:
  ContingencyTable(std::size_t rows, std::size_t cols, std::vector<std::int64_t> counts);

  // Comma- or whitespace-separated rows of integers; '#' starts a comment.
  static ContingencyTable parse(std::istream& in);
  static ContingencyTable load(const std::filesystem::path& path);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return counts_[i * cols_ + j]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  std::int64_t row_sum(std::size_t i) const;
  std::int64_t col_sum(std::size_t j) const;
  std::int64_t total() const;

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> counts_;
};

// The sparse 5x7 table (39 observations) of the worked example.
ContingencyTable reference_table();

// Likelihood-ratio statistic 2 * sum a_ij log(a_ij / h_ij) for independence,
// h_ij = r_i c_j / N, with 0 log 0 = 0. Throws on an all-zero table.
double lrt_statistic(const ContingencyTable& table);

std::int64_t degrees_of_freedom(const ContingencyTable& table);

// Independence fit q_ij = (r_i / N)(c_j / N) with N fixed.
struct NullModel {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cell_probs;
  std::int64_t total = 0;

  static NullModel fit(const ContingencyTable& table);
};

// One multinomial(N, q) table, drawn cell by cell through conditional binomials.
ContingencyTable sample_null(const NullModel& model, Rng& rng);

}  // namespace seqmc
