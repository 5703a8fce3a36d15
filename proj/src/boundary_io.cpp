#include "seqmc/boundary_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqmc/format.hpp"

namespace seqmc {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  return out;
}

double parse_double(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0')
    throw BoundaryFileError(std::string("boundary file: bad ") + what + " '" + s + "'");
  return v;
}

std::int64_t parse_int(const std::string& s, const char* what) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0')
    throw BoundaryFileError(std::string("boundary file: bad ") + what + " '" + s + "'");
  return v;
}

json spending_json(const SpendingSequence& s) {
  json j{{"epsilon", s.epsilon()}, {"descriptor", s.descriptor()}};
  if (s.kind() == SpendingSequence::Kind::standard) {
    j["kind"] = "default";
    j["k"] = s.k();
  } else {
    j["kind"] = "custom";
    j["values"] = s.values();
  }
  return j;
}

SpendingSequence spending_from_json(const json& j) {
  const double eps = j.at("epsilon").get<double>();
  if (j.at("kind") == "default") return SpendingSequence::standard(eps, j.at("k").get<std::int64_t>());
  return SpendingSequence::custom(eps, j.at("values").get<std::vector<double>>());
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p += ".state.json";
  return p;
}

void write_boundary_csv(const BoundaryTable& table, std::ostream& out) {
  out << "format_version,alpha,epsilon,spending,n_max\n";
  out << kBoundaryFormatVersion << ',' << format_double(table.alpha()) << ','
      << format_double(table.spending().epsilon()) << ',' << table.spending().descriptor() << ','
      << table.n_max() << '\n';
  out << "n,lower,upper,eps_n,hit_lower_cum,hit_upper_cum\n";
  for (std::int64_t n = 1; n <= table.n_max(); ++n) {
    out << n << ',' << table.lower(n) << ',' << table.upper(n) << ','
        << format_double(table.spending()(n)) << ',' << format_double(table.hit_lower_cum(n))
        << ',' << format_double(table.hit_upper_cum(n)) << '\n';
  }
}

void save_boundary(const BoundaryTable& table, const std::filesystem::path& csv_path) {
  {
    std::ofstream out(csv_path);
    if (!out) throw BoundaryFileError("boundary file: cannot write " + csv_path.string());
    write_boundary_csv(table, out);
  }
  json state{{"format_version", kBoundaryFormatVersion},
             {"alpha", table.alpha()},
             {"spending", spending_json(table.spending())},
             {"n_max", table.n_max()},
             {"alive_offset", table.alive_offset()},
             {"alive_mass", std::vector<double>(table.alive_mass().begin(), table.alive_mass().end())}};
  std::ofstream out(sidecar_path(csv_path));
  if (!out) throw BoundaryFileError("boundary file: cannot write sidecar for " + csv_path.string());
  // dump() prints doubles in shortest round-trip form
  out << state.dump(1) << '\n';
}

BoundaryTable load_boundary(const std::filesystem::path& csv_path,
                            std::optional<double> expected_alpha,
                            const std::optional<SpendingSequence>& expected_spending) {
  std::ifstream in(csv_path);
  if (!in) throw BoundaryFileError("boundary file: cannot open " + csv_path.string());
  std::string line;
  if (!std::getline(in, line) || split_csv(line).at(0) != "format_version")
    throw BoundaryFileError("boundary file: missing header record");
  if (!std::getline(in, line)) throw BoundaryFileError("boundary file: truncated header");
  const auto head = split_csv(line);
  if (head.size() != 5) throw BoundaryFileError("boundary file: malformed header record");
  if (parse_int(head[0], "format version") != kBoundaryFormatVersion)
    throw BoundaryFileError("boundary file: unsupported format version " + head[0]);
  const double alpha = parse_double(head[1], "alpha");
  const double epsilon = parse_double(head[2], "epsilon");
  const std::string descriptor = head[3];
  const std::int64_t n_max = parse_int(head[4], "n_max");

  std::ifstream sin(sidecar_path(csv_path));
  if (!sin) throw BoundaryFileError("boundary file: missing sidecar " + sidecar_path(csv_path).string());
  json state;
  try {
    sin >> state;
  } catch (const json::exception& e) {
    throw BoundaryFileError(std::string("boundary file: corrupt sidecar: ") + e.what());
  }
  SpendingSequence spending = spending_from_json(state.at("spending"));

  auto mismatch = [](const std::string& field, const std::string& a, const std::string& b) {
    return BoundaryFileError("boundary file: parameter mismatch on " + field + " (" + a +
                             " vs " + b + ")");
  };
  if (state.at("format_version").get<int>() != kBoundaryFormatVersion)
    throw BoundaryFileError("boundary file: sidecar format version differs");
  if (state.at("alpha").get<double>() != alpha)
    throw mismatch("alpha", format_double(alpha), format_double(state.at("alpha").get<double>()));
  if (spending.epsilon() != epsilon)
    throw mismatch("epsilon", format_double(epsilon), format_double(spending.epsilon()));
  if (spending.descriptor() != descriptor) throw mismatch("spending", descriptor, spending.descriptor());
  if (state.at("n_max").get<std::int64_t>() != n_max)
    throw mismatch("n_max", std::to_string(n_max), state.at("n_max").dump());
  if (expected_alpha && *expected_alpha != alpha)
    throw mismatch("alpha", format_double(*expected_alpha), format_double(alpha));
  if (expected_spending && !(*expected_spending == spending))
    throw mismatch("spending", expected_spending->descriptor() + "/eps=" +
                                   format_double(expected_spending->epsilon()),
                   descriptor + "/eps=" + format_double(epsilon));

  if (!std::getline(in, line) || split_csv(line).at(0) != "n")
    throw BoundaryFileError("boundary file: missing column header");
  std::vector<std::int64_t> upper, lower;
  std::vector<double> hit_upper, hit_lower;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 6) throw BoundaryFileError("boundary file: malformed record '" + line + "'");
    const std::int64_t n = parse_int(f[0], "n");
    if (n != static_cast<std::int64_t>(upper.size()) + 1)
      throw BoundaryFileError("boundary file: records out of order at n=" + f[0]);
    if (parse_double(f[3], "eps_n") != spending(n))
      throw mismatch("eps_" + f[0], f[3], format_double(spending(n)));
    lower.push_back(parse_int(f[1], "lower"));
    upper.push_back(parse_int(f[2], "upper"));
    hit_lower.push_back(parse_double(f[4], "hit_lower_cum"));
    hit_upper.push_back(parse_double(f[5], "hit_upper_cum"));
  }
  if (static_cast<std::int64_t>(upper.size()) != n_max)
    throw BoundaryFileError("boundary file: expected " + std::to_string(n_max) + " records, found " +
                            std::to_string(upper.size()));
  if (state.at("alive_offset").get<std::int64_t>() != lower.back() + 1)
    throw BoundaryFileError("boundary file: sidecar alive offset disagrees with L_n");
  try {
    return BoundaryTable::restore(alpha, std::move(spending), std::move(upper), std::move(lower),
                                  std::move(hit_upper), std::move(hit_lower),
                                  state.at("alive_mass").get<std::vector<double>>());
  } catch (const std::invalid_argument& e) {
    throw BoundaryFileError(e.what());
  }
}

}  // namespace seqmc
