#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>

#include "seqmc/boundary.hpp"

namespace seqmc {

inline constexpr int kBoundaryFormatVersion = 1;

class BoundaryFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Boundary CSV layout (floats with 17 significant digits):
//
//   format_version,alpha,epsilon,spending,n_max
//   1,0.050000000000000003,0.001,default:1000,3
//   n,lower,upper,eps_n,hit_lower_cum,hit_upper_cum
//   1,-1,2,9.99000999000999e-07,0,0
//   ...
//
// The JSON sidecar at "<csv>.state.json" carries the same header fields, the
// custom spending values if any, and the alive mass needed to resume extension.
void write_boundary_csv(const BoundaryTable& table, std::ostream& out);

void save_boundary(const BoundaryTable& table, const std::filesystem::path& csv_path);

// Loads and cross-checks the CSV against its sidecar. When `expected_alpha`
// or `expected_spending` are given they must match the stored parameters.
BoundaryTable load_boundary(const std::filesystem::path& csv_path,
                            std::optional<double> expected_alpha = std::nullopt,
                            const std::optional<SpendingSequence>& expected_spending = std::nullopt);

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace seqmc
