#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seqmc/applications.hpp"
#include "seqmc/boundary.hpp"
#include "seqmc/contingency.hpp"
#include "seqmc/distributions.hpp"
#include "seqmc/inference.hpp"
#include "seqmc/runner.hpp"
#include "seqmc/samplers.hpp"
#include "seqmc/spending.hpp"

namespace py = pybind11;
using namespace seqmc;

namespace {

// Pulls bits from a Python iterable; exhaustion ends the stream.
class IterSampler final : public BitSampler {
 public:
  explicit IterSampler(py::iterator it) : it_(std::move(it)) {}
  std::optional<bool> next() override {
    if (it_ == py::iterator::sentinel()) return std::nullopt;
    const bool v = py::cast<bool>(*it_);
    ++it_;
    return v;
  }

 private:
  py::iterator it_;
};

RunOptions run_options(std::optional<std::int64_t> max_steps) {
  RunOptions o;
  o.max_steps = max_steps;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sequential Monte Carlo p-value engine with uniformly bounded resampling risk";

  py::class_<SpendingSequence>(m, "SpendingSequence")
      .def_static("standard", &SpendingSequence::standard, py::arg("epsilon") = 1e-3, py::arg("k") = 1000)
      .def_static("custom", &SpendingSequence::custom, py::arg("epsilon"), py::arg("values"))
      .def_property_readonly("epsilon", &SpendingSequence::epsilon)
      .def("__call__", &SpendingSequence::operator())
      .def("increment", &SpendingSequence::increment)
      .def("descriptor", &SpendingSequence::descriptor);

  py::class_<BoundaryTable>(m, "BoundaryTable")
      .def(py::init<double, SpendingSequence>(), py::arg("alpha"),
           py::arg("spending") = SpendingSequence::standard(1e-3, 1000))
      .def_property_readonly("alpha", &BoundaryTable::alpha)
      .def_property_readonly("n_max", &BoundaryTable::n_max)
      .def("extend_to", &BoundaryTable::extend_to)
      .def("upper", &BoundaryTable::upper)
      .def("lower", &BoundaryTable::lower)
      .def("hit_upper_cum", &BoundaryTable::hit_upper_cum)
      .def("hit_lower_cum", &BoundaryTable::hit_lower_cum)
      .def("delta", &BoundaryTable::delta)
      .def("mass_drift", &BoundaryTable::mass_drift)
      .def("upper_bounds", [](const BoundaryTable& t) {
        return std::vector<std::int64_t>(t.upper_bounds().begin(), t.upper_bounds().end());
      })
      .def("lower_bounds", [](const BoundaryTable& t) {
        return std::vector<std::int64_t>(t.lower_bounds().begin(), t.lower_bounds().end());
      });

  py::enum_<Side>(m, "Side").value("upper", Side::upper).value("lower", Side::lower);

  py::class_<RunResult>(m, "RunResult")
      .def_property_readonly("stopped", &RunResult::stopped)
      .def_readonly("steps", &RunResult::steps)
      .def_readonly("successes", &RunResult::successes)
      .def_readonly("side", &RunResult::side)
      .def_readonly("p_hat", &RunResult::p_hat)
      .def("__repr__", [](const RunResult& r) {
        return "RunResult(" + std::string(r.stopped() ? "stopped" : "truncated") +
               ", steps=" + std::to_string(r.steps) + ", successes=" + std::to_string(r.successes) +
               (r.stopped() ? ", side=" + to_string(r.side) : "") + ")";
      });

  py::class_<Interval>(m, "Interval")
      .def_readonly("lower", &Interval::lower)
      .def_readonly("upper", &Interval::upper)
      .def("__iter__", [](const Interval& i) { return py::iter(py::make_tuple(i.lower, i.upper)); });

  m.def(
      "run_bernoulli",
      [](BoundaryTable& t, double p, std::uint64_t seed, std::optional<std::int64_t> max_steps) {
        BernoulliSampler s(p, seed);
        return run(t, s, run_options(max_steps));
      },
      py::arg("table"), py::arg("p"), py::arg("seed"), py::arg("max_steps") = py::none());
  m.def(
      "run_bits",
      [](BoundaryTable& t, py::iterable bits, std::optional<std::int64_t> max_steps) {
        IterSampler s(py::iter(bits));
        return run(t, s, run_options(max_steps));
      },
      py::arg("table"), py::arg("bits"), py::arg("max_steps") = py::none(),
      "Runs the test over an iterable of 0/1 values (e.g. a generator).");
  m.def("interim_interval",
        [](BoundaryTable& t, std::int64_t n) { return interim_interval(t, n); });

  py::class_<RiskBound>(m, "RiskBound")
      .def_readonly("lower", &RiskBound::lower)
      .def_readonly("upper", &RiskBound::upper)
      .def_readonly("residual", &RiskBound::residual)
      .def_readonly("horizon", &RiskBound::horizon);
  py::class_<StopTime>(m, "StopTime")
      .def_readonly("value", &StopTime::value)
      .def_readonly("residual", &StopTime::residual)
      .def_readonly("horizon", &StopTime::horizon);
  m.def("resampling_risk", &resampling_risk, py::arg("table"), py::arg("p"), py::arg("horizon"));
  m.def("expected_stop_time", &expected_stop_time, py::arg("table"), py::arg("p"), py::arg("horizon"));
  m.def("wald_lower_bound", &wald_lower_bound, py::arg("p"), py::arg("epsilon"), py::arg("alpha"));
  m.def("naive_risk", &naive_risk, py::arg("p"), py::arg("n"), py::arg("alpha"));

  py::class_<ConfidenceInterval>(m, "ConfidenceInterval")
      .def_readonly("p_low", &ConfidenceInterval::p_low)
      .def_readonly("p_high", &ConfidenceInterval::p_high)
      .def_readonly("certified", &ConfidenceInterval::certified);
  m.def(
      "confidence_interval",
      [](BoundaryTable& t, const RunResult& r, double beta, std::int64_t horizon) {
        CiOptions o;
        o.horizon = horizon;
        return confidence_interval_bracket(t, r, beta, o);
      },
      py::arg("table"), py::arg("result"), py::arg("beta"), py::arg("horizon") = 100000);

  m.def("chisq_pvalue", &chisq_pvalue, py::arg("t"), py::arg("df"));
  m.def(
      "lrt_pvalue",
      [](std::vector<std::vector<std::int64_t>> rows) {
        if (rows.empty()) throw std::invalid_argument("empty table");
        std::vector<std::int64_t> cells;
        for (const auto& r : rows) {
          if (r.size() != rows[0].size()) throw std::invalid_argument("ragged table");
          cells.insert(cells.end(), r.begin(), r.end());
        }
        const ContingencyTable t(rows.size(), rows[0].size(), cells);
        const double stat = lrt_statistic(t);
        return py::make_tuple(stat, degrees_of_freedom(t),
                              chisq_pvalue(stat, static_cast<double>(degrees_of_freedom(t))));
      },
      "Returns (T, df, asymptotic chi-square p-value) for a table given as a list of rows.");
  m.def(
      "bootstrap_reference",
      [](double alpha, std::uint64_t seed, std::optional<std::int64_t> max_steps) {
        EngineOptions o;
        o.seed = seed;
        o.max_steps = max_steps;
        const auto rep = bootstrap_pvalue(reference_table(), alpha, o);
        return py::make_tuple(rep.result, rep.samples);
      },
      py::arg("alpha") = 0.05, py::arg("seed") = 0, py::arg("max_steps") = py::none(),
      "Sequential parametric bootstrap on the bundled 5x7 table; returns (result, samples).");
}
