// seqmc command-line front end.
//
// Exit codes: 0 success, 1 run truncated without a decision, 2 invalid
// configuration, 3 runtime error. Final results go to stdout; progress lines
// go to stderr so that stdout is a pure function of (config, seed).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seqmc/applications.hpp"
#include "seqmc/boundary.hpp"
#include "seqmc/boundary_io.hpp"
#include "seqmc/contingency.hpp"
#include "seqmc/distributions.hpp"
#include "seqmc/format.hpp"
#include "seqmc/inference.hpp"
#include "seqmc/runner.hpp"
#include "seqmc/samplers.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kTruncated = 1;
constexpr int kBadConfig = 2;
constexpr int kRuntime = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  double alpha = 0.05;
  double epsilon = 1e-3;
  std::int64_t k = 1000;
  std::string spending_file;
  std::string boundary_file;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--alpha", c.alpha, "Significance threshold")->capture_default_str();
  cmd->add_option("--eps", c.epsilon, "Total resampling-risk budget, 0 < eps <= 1/4")->capture_default_str();
  cmd->add_option("--k", c.k, "Spending parameter of eps*n/(k+n)")->capture_default_str();
  cmd->add_option("--spending-file", c.spending_file,
                  "Custom spending table: eps_1, eps_2, ... one per line (replaces --k)");
  cmd->add_option("--boundary-file", c.boundary_file,
                  "Boundary CSV: loaded when present, written back after use");
}

void validate(const Common& c) {
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("alpha must satisfy 0 < alpha < 1");
  if (!(c.epsilon > 0.0 && c.epsilon <= 0.25))
    throw ConfigError("epsilon must satisfy 0 < epsilon <= 1/4 (got " + seqmc::format_double(c.epsilon) + ")");
  if (c.spending_file.empty() && c.k < 1) throw ConfigError("k must be >= 1");
}

seqmc::SpendingSequence make_spending(const Common& c) {
  if (c.spending_file.empty()) return seqmc::SpendingSequence::standard(c.epsilon, c.k);
  std::ifstream in(c.spending_file);
  if (!in) throw ConfigError("cannot open spending file " + c.spending_file);
  std::vector<double> values;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("spending file: bad value '" + tok + "'");
    }
  }
  if (values.empty()) throw ConfigError("spending file is empty");
  return seqmc::SpendingSequence::custom(c.epsilon, std::move(values));
}

// Loads the boundary file when it exists, otherwise builds a fresh table.
seqmc::BoundaryTable open_table(const Common& c) {
  validate(c);
  auto spending = make_spending(c);
  if (!c.boundary_file.empty() && fs::exists(c.boundary_file))
    return seqmc::load_boundary(c.boundary_file, c.alpha, spending);
  return seqmc::BoundaryTable(c.alpha, std::move(spending));
}

void persist_table(const Common& c, const seqmc::BoundaryTable& table) {
  if (c.boundary_file.empty()) return;
  if (fs::exists(c.boundary_file)) {
    // Rewrite only when the table grew past what is stored.
    auto stored = seqmc::load_boundary(c.boundary_file);
    if (stored.n_max() >= table.n_max()) return;
  }
  seqmc::save_boundary(table, c.boundary_file);
}

json interval_json(const seqmc::Interval& iv) { return json::array({iv.lower, iv.upper}); }

json result_json(const seqmc::RunResult& r) {
  json j;
  j["status"] = r.stopped() ? "stopped" : "truncated";
  j["tau"] = r.steps;
  j["successes"] = r.successes;
  j["side"] = r.stopped() ? json(seqmc::to_string(r.side)) : json(nullptr);
  j["p_hat"] = r.p_hat;
  return j;
}

json ci_json(const seqmc::ConfidenceInterval& ci) {
  json j;
  j["p_obs"] = ci.p_obs;
  j["tau"] = ci.tau;
  j["s_tau"] = ci.s_tau;
  j["beta"] = ci.beta;
  j["p_low"] = ci.p_low;
  j["p_high"] = ci.p_high;
  j["certified"] = ci.certified;
  j["horizon"] = ci.horizon;
  return j;
}

// "a,b,c" or "start:stop:step" (inclusive of stop up to rounding).
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("bad grid value '" + s + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw ConfigError("grid range must be start:stop:step");
    const double a = num(parts[0]), b = num(parts[1]), h = num(parts[2]);
    if (!(h > 0.0) || b < a) throw ConfigError("grid range needs start <= stop and step > 0");
    const auto count = static_cast<std::int64_t>(std::floor((b - a) / h + 1e-9));
    for (std::int64_t i = 0; i <= count; ++i) out.push_back(a + static_cast<double>(i) * h);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');)
      if (!part.empty()) out.push_back(num(part));
  }
  if (out.empty()) throw ConfigError("empty p grid");
  for (double p : out)
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("grid values must lie in [0, 1]");
  return out;
}

// ---------------------------------------------------------------------------

struct BoundariesArgs {
  Common common;
  std::int64_t n = 5000;
  std::string out;
};

int cmd_boundaries(const BoundariesArgs& a) {
  if (a.n < 1) throw ConfigError("--n must be >= 1");
  auto table = open_table(a.common);
  table.extend_to(a.n);
  if (!a.out.empty()) {
    seqmc::save_boundary(table, a.out);
  } else if (table.n_max() == a.n) {
    seqmc::write_boundary_csv(table, std::cout);
  } else {
    // A loaded file may hold more rows than asked for; print only the first n.
    std::ostringstream full;
    seqmc::write_boundary_csv(table, full);
    std::istringstream lines(full.str());
    std::string line;
    std::getline(lines, line);  // header line with the stored n_max
    std::cout << "format_version,alpha,epsilon,spending,n_max\n";
    std::getline(lines, line);
    std::cout << line.substr(0, line.rfind(',') + 1) << a.n << "\n";
    std::getline(lines, line);
    std::cout << line << "\n";
    for (std::int64_t i = 0; i < a.n && std::getline(lines, line); ++i) std::cout << line << "\n";
  }
  persist_table(a.common, table);
  return kOk;
}

struct RunArgs {
  Common common;
  std::optional<double> simulate_p;
  bool from_stdin = false;
  std::string command;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> max_steps;
  std::int64_t report_every = 10000;
  double report_seconds = 1.0;
  bool quiet = false;
  std::optional<double> ci_beta;
  std::int64_t ci_horizon = 100000;
  std::string format = "json";
};

int cmd_run(const RunArgs& a) {
  const int sources = (a.simulate_p ? 1 : 0) + (a.from_stdin ? 1 : 0) + (a.command.empty() ? 0 : 1);
  if (sources != 1) throw ConfigError("choose exactly one of --simulate-p, --stdin, --cmd");
  if (a.simulate_p && !(*a.simulate_p >= 0.0 && *a.simulate_p <= 1.0))
    throw ConfigError("--simulate-p must lie in [0, 1]");
  if (a.max_steps && *a.max_steps < 0) throw ConfigError("--max-steps must be >= 0");
  if (a.ci_beta && !(*a.ci_beta > 0.0 && *a.ci_beta < 1.0)) throw ConfigError("--ci must lie in (0, 1)");
  if (a.format != "json" && a.format != "text") throw ConfigError("--format must be json or text");

  auto table = open_table(a.common);
  const std::uint64_t seed = a.seed.value_or(seqmc::entropy_seed());

  std::unique_ptr<seqmc::BitSampler> sampler;
  if (a.simulate_p)
    sampler = std::make_unique<seqmc::BernoulliSampler>(*a.simulate_p, seed);
  else if (a.from_stdin)
    sampler = std::make_unique<seqmc::TextBitSampler>(std::cin);
  else
    sampler = std::make_unique<seqmc::CommandSampler>(a.command);

  seqmc::RunOptions ro;
  ro.max_steps = a.max_steps;
  if (!a.quiet) {
    if (a.report_every > 0) ro.report_every_steps = a.report_every;
    if (a.report_seconds > 0)
      ro.report_every_time = std::chrono::milliseconds(static_cast<std::int64_t>(a.report_seconds * 1000));
    ro.progress_sink = [](const seqmc::Progress& p) {
      json j;
      j["n"] = p.n;
      j["s"] = p.s;
      j["p_min"] = p.interim.lower;
      j["p_max"] = p.interim.upper;
      j["elapsed_ms"] = std::round(p.elapsed_ms);
      std::cerr << j.dump() << std::endl;
    };
  }

  const seqmc::RunResult r = seqmc::run(table, *sampler, ro);

  json out;
  out["seed"] = seed;
  out["alpha"] = table.alpha();
  out["epsilon"] = table.spending().epsilon();
  out["spending"] = table.spending().descriptor();
  out["result"] = result_json(r);
  std::optional<seqmc::Interval> interim;
  if (!r.stopped() && r.steps > 0) {
    interim = seqmc::interim_interval(table, r.steps);
    out["interim"] = interval_json(*interim);
  }
  if (a.ci_beta) {
    seqmc::CiOptions co;
    co.horizon = a.ci_horizon;
    if (r.stopped())
      out["ci"] = ci_json(seqmc::confidence_interval_bracket(table, r, *a.ci_beta, co));
    else if (r.steps > 0)
      out["ci"] = ci_json(seqmc::confidence_interval_running(table, r.steps, *a.ci_beta, co));
  }
  persist_table(a.common, table);

  if (a.format == "json") {
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "seed " << seed << "\n";
    std::cout << "status " << (r.stopped() ? "stopped" : "truncated") << "\n";
    std::cout << "steps " << r.steps << "\nsuccesses " << r.successes << "\n";
    if (r.stopped()) std::cout << "side " << seqmc::to_string(r.side) << "\n";
    std::cout << "p_hat " << seqmc::format_double(r.p_hat) << "\n";
    if (interim)
      std::cout << "interim " << seqmc::format_double(interim->lower) << " "
                << seqmc::format_double(interim->upper) << "\n";
    if (out.contains("ci"))
      std::cout << "ci " << seqmc::format_double(out["ci"]["p_low"].get<double>()) << " "
                << seqmc::format_double(out["ci"]["p_high"].get<double>()) << "\n";
  }
  return r.stopped() ? kOk : kTruncated;
}

struct CurveArgs {
  Common common;
  std::string grid = "0.005:0.995:0.01";
  std::int64_t horizon = 100000;
  std::optional<std::int64_t> max_horizon;
  std::optional<std::int64_t> naive_n;
  unsigned threads = 1;
  std::string format = "csv";
};

int cmd_curve(const CurveArgs& a) {
  if (a.horizon < 1) throw ConfigError("--horizon must be >= 1");
  const std::int64_t cap = a.max_horizon.value_or(a.horizon);
  if (cap < a.horizon) throw ConfigError("--max-horizon must be >= --horizon");
  if (a.naive_n && *a.naive_n < 1) throw ConfigError("--naive-n must be >= 1");
  if (a.format != "csv" && a.format != "json") throw ConfigError("--format must be csv or json");
  const auto grid = parse_grid(a.grid);
  auto table = open_table(a.common);
  std::int64_t target = cap;
  if (auto len = table.spending().length()) target = std::min(target, *len);
  table.extend_to(target);

  seqmc::CurveOptions co;
  co.initial_horizon = std::min(a.horizon, table.n_max());
  co.threads = std::max(1u, a.threads);
  const auto points = seqmc::evaluate_curve(table, grid, co);
  persist_table(a.common, table);

  auto naive = [&](double p) { return seqmc::naive_risk(p, *a.naive_n, table.alpha()); };
  if (a.format == "json") {
    json rows = json::array();
    for (const auto& pt : points) {
      json j;
      j["p"] = pt.p;
      j["rr_lower"] = pt.risk.lower;
      j["rr_upper"] = pt.risk.upper;
      j["e_tau"] = pt.stop.value;
      j["residual"] = pt.risk.residual;
      j["wald_bound"] = std::isnan(pt.wald_bound) ? json(nullptr) : json(pt.wald_bound);
      j["horizon"] = pt.risk.horizon;
      if (a.naive_n) j["naive_risk"] = naive(pt.p);
      rows.push_back(j);
    }
    std::cout << rows.dump() << "\n";
    return kOk;
  }
  using seqmc::format_double;
  std::cout << "p,rr_lower,rr_upper,e_tau,residual,wald_bound,horizon" << (a.naive_n ? ",naive_risk" : "") << "\n";
  for (const auto& pt : points) {
    std::cout << format_double(pt.p) << "," << format_double(pt.risk.lower) << ","
              << format_double(pt.risk.upper) << "," << format_double(pt.stop.value) << ","
              << format_double(pt.risk.residual) << ","
              << (std::isnan(pt.wald_bound) ? std::string() : format_double(pt.wald_bound)) << ","
              << pt.risk.horizon;
    if (a.naive_n) std::cout << "," << format_double(naive(pt.p));
    std::cout << "\n";
  }
  return kOk;
}

struct CiArgs {
  Common common;
  std::int64_t tau = 0;
  std::int64_t successes = 0;
  double beta = 0.05;
  std::int64_t horizon = 100000;
};

int cmd_ci(const CiArgs& a) {
  if (!(a.beta > 0.0 && a.beta < 1.0)) throw ConfigError("--beta must lie in (0, 1)");
  if (a.tau < 1 || a.successes < 0 || a.successes > a.tau) throw ConfigError("need 0 <= s <= tau, tau >= 1");
  auto table = open_table(a.common);
  table.extend_to(a.tau);
  seqmc::RunResult r;
  r.steps = a.tau;
  r.successes = a.successes;
  r.p_hat = static_cast<double>(a.successes) / static_cast<double>(a.tau);
  if (a.successes >= table.upper(a.tau)) {
    r.status = seqmc::RunResult::Status::stopped;
    r.side = seqmc::Side::upper;
  } else if (a.successes <= table.lower(a.tau)) {
    r.status = seqmc::RunResult::Status::stopped;
    r.side = seqmc::Side::lower;
  } else {
    throw ConfigError("(tau, s) is not a stopping point of this boundary");
  }
  seqmc::CiOptions co;
  co.horizon = a.horizon;
  const auto ci = seqmc::confidence_interval_bracket(table, r, a.beta, co);
  persist_table(a.common, table);
  std::cout << ci_json(ci).dump() << "\n";
  return kOk;
}

struct DemoArgs {
  std::string name;
  std::string table_file;
  double alpha = 0.05;
  double epsilon = 1e-3;
  std::int64_t k = 1000;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> max_steps;
  unsigned threads = 1;
  double nominal = 0.05;
  std::string of = "chisq";
  std::int64_t inner_steps = 250;
  std::int64_t middle_steps = 500;
  std::optional<std::int64_t> first_stage;
};

int cmd_demo(const DemoArgs& a) {
  Common c;
  c.alpha = a.alpha;
  c.epsilon = a.epsilon;
  c.k = a.k;
  validate(c);
  if (!(a.nominal > 0.0 && a.nominal < 1.0)) throw ConfigError("--nominal must lie in (0, 1)");
  if (a.max_steps && *a.max_steps < 0) throw ConfigError("--max-steps must be >= 0");
  const seqmc::ContingencyTable data =
      a.table_file.empty() ? seqmc::reference_table() : seqmc::ContingencyTable::load(a.table_file);

  seqmc::EngineOptions eo;
  eo.epsilon = a.epsilon;
  eo.k = a.k;
  eo.max_steps = a.max_steps;
  eo.seed = a.seed.value_or(seqmc::entropy_seed());
  eo.threads = std::max(1u, a.threads);

  seqmc::AppReport rep;
  if (a.name == "bootstrap") {
    rep = seqmc::bootstrap_pvalue(data, a.alpha, eo);
  } else if (a.name == "level") {
    if (a.of == "chisq")
      rep = seqmc::check_level(data, a.nominal, a.alpha, eo);
    else if (a.of == "bootstrap")
      rep = seqmc::check_level_bootstrap(data, a.inner_steps, a.alpha, eo, a.nominal);
    else
      throw ConfigError("--of must be chisq or bootstrap");
  } else if (a.name == "double-bootstrap") {
    rep = seqmc::double_bootstrap(data, a.inner_steps, a.alpha, eo, a.first_stage.value_or(10000));
  } else {
    rep = seqmc::check_level_double_bootstrap(data, a.inner_steps, a.middle_steps, a.alpha, eo,
                                              a.first_stage.value_or(1000), a.nominal);
  }

  const double t = seqmc::lrt_statistic(data);
  const auto df = seqmc::degrees_of_freedom(data);
  json out;
  out["demo"] = a.name;
  out["seed"] = eo.seed;
  out["alpha"] = a.alpha;
  out["epsilon"] = a.epsilon;
  out["T"] = t;
  out["df"] = df;
  out["chisq_p"] = seqmc::chisq_pvalue(t, static_cast<double>(df));
  json b;
  b["status"] = rep.result.stopped() ? "stopped" : "truncated";
  b["p_hat"] = rep.result.p_hat;
  b["tau"] = rep.result.steps;
  b["side"] = rep.result.stopped() ? json(seqmc::to_string(rep.result.side)) : json(nullptr);
  out["bootstrap"] = b;
  out["samples_used"] = rep.samples;
  out["interim"] = rep.interim ? interval_json(*rep.interim) : json(nullptr);
  if (rep.first_stage_p) out["first_stage_p"] = *rep.first_stage_p;
  std::cout << out.dump() << "\n";
  return rep.result.stopped() ? kOk : kTruncated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential Monte Carlo p-values with bounded resampling risk"};
  app.require_subcommand(1);

  BoundariesArgs ba;
  auto* boundaries = app.add_subcommand("boundaries", "Compute the stopping boundaries as CSV");
  add_common(boundaries, ba.common);
  boundaries->add_option("--n", ba.n, "Number of steps")->capture_default_str();
  boundaries->add_option("--out", ba.out, "Write CSV (and state sidecar) here instead of stdout");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run the sequential test on a bit stream");
  add_common(run, ra.common);
  auto* src_sim = run->add_option("--simulate-p", ra.simulate_p, "Simulate Bernoulli(P) draws");
  auto* src_in = run->add_flag("--stdin", ra.from_stdin, "Read 0/1 lines from stdin");
  auto* src_cmd = run->add_option("--cmd", ra.command, "Read 0/1 lines from a child process");
  src_sim->excludes(src_in)->excludes(src_cmd);
  src_in->excludes(src_cmd);
  run->add_option("--seed", ra.seed, "Seed for --simulate-p (default: from entropy, always echoed)");
  run->add_option("--max-steps", ra.max_steps, "Truncate after this many draws");
  run->add_option("--report-every", ra.report_every, "Progress every N steps (0: off)")->capture_default_str();
  run->add_option("--report-seconds", ra.report_seconds, "Progress every T seconds (0: off)")
      ->capture_default_str();
  run->add_flag("--quiet", ra.quiet, "No progress lines");
  run->add_option("--ci", ra.ci_beta, "Report a 1-BETA confidence interval");
  run->add_option("--ci-horizon", ra.ci_horizon, "Lattice horizon for the interval")->capture_default_str();
  run->add_option("--format", ra.format, "json or text")->capture_default_str();

  CurveArgs risk_args;
  CurveArgs etau_args;
  auto* risk = app.add_subcommand("risk", "Resampling-risk and stopping-time curve as CSV");
  auto* etau = app.add_subcommand("etau", "Same curve, under the stopping-time name");
  for (auto [cmd, args] : {std::pair{risk, &risk_args}, std::pair{etau, &etau_args}}) {
    add_common(cmd, args->common);
    cmd->add_option("--p", args->grid, "p grid: a,b,c or start:stop:step")->capture_default_str();
    cmd->add_option("--horizon", args->horizon, "Initial lattice horizon")->capture_default_str();
    cmd->add_option("--max-horizon", args->max_horizon, "Auto-doubling cap (default: --horizon)");
    cmd->add_option("--naive-n", args->naive_n, "Add the risk of the fixed-n estimator");
    cmd->add_option("--threads", args->threads, "Worker threads for the grid")->capture_default_str();
    cmd->add_option("--format", args->format, "csv or json")->capture_default_str();
  }

  CiArgs ca;
  auto* ci = app.add_subcommand("ci", "Confidence interval for a stopped run");
  add_common(ci, ca.common);
  ci->add_option("--tau", ca.tau, "Stopping time")->required();
  ci->add_option("--s", ca.successes, "Successes at the stopping time")->required();
  ci->add_option("--beta", ca.beta, "1 - confidence level")->capture_default_str();
  ci->add_option("--horizon", ca.horizon, "Lattice horizon")->capture_default_str();

  DemoArgs da;
  auto* demo = app.add_subcommand("demo", "Contingency-table bootstrap workflows");
  demo->add_option("name", da.name, "bootstrap | level | double-bootstrap | triple-level")
      ->required()
      ->check(CLI::IsMember({"bootstrap", "level", "double-bootstrap", "triple-level"}));
  demo->add_option("--table", da.table_file, "Contingency table CSV (default: bundled 5x7 table)");
  demo->add_option("--alpha", da.alpha, "Threshold of the outermost run")->capture_default_str();
  demo->add_option("--eps", da.epsilon, "Risk budget, 0 < eps <= 1/4")->capture_default_str();
  demo->add_option("--k", da.k, "Spending parameter")->capture_default_str();
  demo->add_option("--seed", da.seed, "Seed (default: from entropy, always echoed)");
  demo->add_option("--max-steps", da.max_steps, "Truncate the outermost run");
  demo->add_option("--threads", da.threads, "Sample-production threads")->capture_default_str();
  demo->add_option("--nominal", da.nominal, "Nominal level of the test being checked")->capture_default_str();
  demo->add_option("--of", da.of, "level: chisq or bootstrap")->capture_default_str();
  demo->add_option("--inner-steps", da.inner_steps, "Truncation M of inner runs")->capture_default_str();
  demo->add_option("--middle-steps", da.middle_steps, "Truncation of middle runs (triple-level)")
      ->capture_default_str();
  demo->add_option("--first-stage", da.first_stage, "First-stage budget (10000; 1000 for triple-level)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadConfig;
  }

  try {
    if (*boundaries) return cmd_boundaries(ba);
    if (*run) return cmd_run(ra);
    if (*risk) return cmd_curve(risk_args);
    if (*etau) return cmd_curve(etau_args);
    if (*ci) return cmd_ci(ca);
    if (*demo) return cmd_demo(da);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const seqmc::BoundaryFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const seqmc::DegenerateBoundary& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const seqmc::RunAborted& e) {
    std::cerr << "error: " << e.what() << " (after " << e.steps() << " draws, " << e.successes()
              << " successes)\n";
    return kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kRuntime;
}
