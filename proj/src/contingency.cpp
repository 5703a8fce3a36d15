#include "seqmc/contingency.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace seqmc {

ContingencyTable::ContingencyTable(std::size_t rows, std::size_t cols, std::vector<std::int64_t> counts)
    : rows_(rows), cols_(cols), counts_(std::move(counts)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("contingency table: empty shape");
  if (counts_.size() != rows * cols)
    throw std::invalid_argument("contingency table: expected " + std::to_string(rows * cols) +
                                " cells, got " + std::to_string(counts_.size()));
  for (auto c : counts_)
    if (c < 0) throw std::invalid_argument("contingency table: negative count");
}

ContingencyTable ContingencyTable::parse(std::istream& in) {
  std::vector<std::int64_t> cells;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t' || ch == '\r') ch = ' ';
    std::istringstream ls(line);
    std::vector<std::int64_t> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw std::invalid_argument("contingency table: bad count '" + tok + "'");
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (cols == 0) cols = row.size();
    if (row.size() != cols)
      throw std::invalid_argument("contingency table: ragged row " + std::to_string(rows + 1));
    cells.insert(cells.end(), row.begin(), row.end());
    ++rows;
  }
  return ContingencyTable(rows, cols, std::move(cells));
}

ContingencyTable ContingencyTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("contingency table: cannot open " + path.string());
  return parse(in);
}

std::int64_t ContingencyTable::row_sum(std::size_t i) const {
  return std::accumulate(counts_.begin() + i * cols_, counts_.begin() + (i + 1) * cols_, std::int64_t{0});
}

std::int64_t ContingencyTable::col_sum(std::size_t j) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rows_; ++i) s += at(i, j);
  return s;
}

std::int64_t ContingencyTable::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

ContingencyTable reference_table() {
  return ContingencyTable(5, 7,
                          {1, 2, 2, 1, 1, 0, 1,  //
                           2, 0, 0, 2, 3, 0, 0,  //
                           0, 1, 1, 1, 2, 7, 3,  //
                           1, 1, 2, 0, 0, 0, 1,  //
                           0, 1, 1, 1, 1, 0, 0});
}

double lrt_statistic(const ContingencyTable& table) {
  const std::int64_t n = table.total();
  if (n == 0) throw std::invalid_argument("lrt statistic: all-zero table");
  std::vector<double> r(table.rows()), c(table.cols());
  for (std::size_t i = 0; i < table.rows(); ++i) r[i] = static_cast<double>(table.row_sum(i));
  for (std::size_t j = 0; j < table.cols(); ++j) c[j] = static_cast<double>(table.col_sum(j));
  const double dn = static_cast<double>(n);
  double t = 0.0;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.cols(); ++j) {
      const auto a = table.at(i, j);
      if (a == 0) continue;  // includes every cell of an empty row or column
      const double h = r[i] * c[j] / dn;
      t += static_cast<double>(a) * std::log(static_cast<double>(a) / h);
    }
  }
  return 2.0 * t;
}

std::int64_t degrees_of_freedom(const ContingencyTable& table) {
  return static_cast<std::int64_t>((table.rows() - 1) * (table.cols() - 1));
}

NullModel NullModel::fit(const ContingencyTable& table) {
  const std::int64_t n = table.total();
  if (n == 0) throw std::invalid_argument("null model: all-zero table");
  NullModel m;
  m.rows = table.rows();
  m.cols = table.cols();
  m.total = n;
  m.cell_probs.resize(m.rows * m.cols);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double ri = static_cast<double>(table.row_sum(i)) / dn;
    for (std::size_t j = 0; j < m.cols; ++j)
      m.cell_probs[i * m.cols + j] = ri * static_cast<double>(table.col_sum(j)) / dn;
  }
  return m;
}

ContingencyTable sample_null(const NullModel& model, Rng& rng) {
  std::vector<std::int64_t> cells(model.cell_probs.size(), 0);
  std::int64_t remaining = model.total;
  double mass_left = 1.0;
  for (std::size_t k = 0; k < cells.size() && remaining > 0; ++k) {
    const double q = model.cell_probs[k];
    if (q <= 0.0) continue;
    if (k + 1 == cells.size() || q >= mass_left) {
      cells[k] = remaining;
      remaining = 0;
      break;
    }
    std::binomial_distribution<std::int64_t> bin(remaining, std::clamp(q / mass_left, 0.0, 1.0));
    const std::int64_t x = bin(rng);
    cells[k] = x;
    remaining -= x;
    mass_left -= q;
  }
  if (remaining > 0) {
    // Rounding left mass on trailing zero-probability cells; give it to the last positive cell.
    for (std::size_t k = cells.size(); k-- > 0;)
      if (model.cell_probs[k] > 0.0) {
        cells[k] += remaining;
        break;
      }
  }
  return ContingencyTable(model.rows, model.cols, std::move(cells));
}

}  // namespace seqmc
