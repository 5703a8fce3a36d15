#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "seqmc/boundary_io.hpp"

using namespace seqmc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("seqmc_io_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST_CASE("csv layout") {
  BoundaryTable t(0.05, SpendingSequence::standard(1e-3, 1000));
  t.extend_to(3);
  std::ostringstream out;
  write_boundary_csv(t, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "format_version,alpha,epsilon,spending,n_max");
  std::getline(in, line);
  CHECK(line == "1,0.050000000000000003,0.001,default:1000,3");
  std::getline(in, line);
  CHECK(line == "n,lower,upper,eps_n,hit_lower_cum,hit_upper_cum");
  std::getline(in, line);
  CHECK(line.rfind("1,-1,2,", 0) == 0);
}

TEST_CASE("save / load round trip, then resume extension") {
  TempDir dir;
  const auto path = dir.path / "b.csv";
  BoundaryTable t(0.05, SpendingSequence::standard(1e-3, 1000));
  t.extend_to(2500);
  save_boundary(t, path);
  CHECK(fs::exists(sidecar_path(path)));
  auto loaded = load_boundary(path, 0.05, SpendingSequence::standard(1e-3, 1000));
  CHECK(loaded == t);
  loaded.extend_to(4000);
  t.extend_to(4000);
  CHECK(loaded == t);
}

TEST_CASE("custom spending round trip") {
  TempDir dir;
  const auto path = dir.path / "c.csv";
  std::vector<double> v;
  for (int n = 1; n <= 300; ++n) v.push_back(0.02 * n / (30.0 + n));
  BoundaryTable t(0.1, SpendingSequence::custom(0.02, v));
  t.extend_to(300);
  save_boundary(t, path);
  CHECK(load_boundary(path) == t);
}

TEST_CASE("parameter mismatch and tampering") {
  TempDir dir;
  const auto path = dir.path / "b.csv";
  BoundaryTable t(0.05, SpendingSequence::standard(1e-3, 1000));
  t.extend_to(200);
  save_boundary(t, path);

  CHECK_THROWS_AS(load_boundary(path, 0.1), BoundaryFileError);
  CHECK_THROWS_AS(load_boundary(path, std::nullopt, SpendingSequence::standard(1e-3, 500)),
                  BoundaryFileError);

  SUBCASE("alpha field tampered") {
    auto csv = slurp(path);
    const auto pos = csv.find("0.050000000000000003");
    csv.replace(pos, 20, "0.060000000000000005");
    spit(path, csv);
    CHECK_THROWS_WITH_AS(load_boundary(path), doctest::Contains("mismatch"), BoundaryFileError);
  }
  SUBCASE("version bump") {
    auto csv = slurp(path);
    csv.replace(csv.find("\n1,") + 1, 1, "9");
    spit(path, csv);
    CHECK_THROWS_WITH_AS(load_boundary(path), doctest::Contains("version"), BoundaryFileError);
  }
  SUBCASE("corrupt alive mass fails conservation") {
    auto state = slurp(sidecar_path(path));
    const auto pos = state.find("\"alive_mass\"");
    const auto first_digit = state.find_first_of("0123456789", pos);
    state.insert(first_digit, "1");
    spit(sidecar_path(path), state);
    CHECK_THROWS_AS(load_boundary(path), BoundaryFileError);
  }
  SUBCASE("missing sidecar") {
    fs::remove(sidecar_path(path));
    CHECK_THROWS_WITH_AS(load_boundary(path), doctest::Contains("sidecar"), BoundaryFileError);
  }
  SUBCASE("dropped record") {
    auto csv = slurp(path);
    csv.erase(csv.rfind('\n', csv.size() - 2) + 1);
    spit(path, csv);
    CHECK_THROWS_AS(load_boundary(path), BoundaryFileError);
  }
}
