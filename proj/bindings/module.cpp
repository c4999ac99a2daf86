// Python bindings for the core operations: trap problems, schedules, GA
// runs, population sizing and the supporting statistics.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>
#include <vector>

#include "svps/errors.hpp"
#include "svps/experiment.hpp"
#include "svps/ga.hpp"
#include "svps/genome.hpp"
#include "svps/parallel.hpp"
#include "svps/powerlaw.hpp"
#include "svps/schedule.hpp"
#include "svps/sizing.hpp"
#include "svps/stats.hpp"
#include "svps/trap.hpp"
#include "svps/version.hpp"

namespace py = pybind11;
using namespace svps;

namespace {

// Python-facing helpers work on plain '0'/'1' strings; packing stays
// internal to the C++ side.
double evaluate_bits(const TrapProblem& problem, const std::string& bits) {
  return problem.evaluate(Genome::from_string(bits));
}

int unitation_bits(const std::string& bits) { return Genome::from_string(bits).unitation(); }

ReliabilityReport run_batch_py(const TrapProblem& problem, const SvpsSchedule& schedule, int runs,
                               std::uint64_t master_seed, const GAConfig& config,
                               unsigned workers) {
  const SeedScope scope{master_seed, static_cast<std::uint64_t>(problem.params().block_len),
                        static_cast<std::uint64_t>(problem.num_blocks()), SeedPhase::manual,
                        static_cast<std::uint64_t>(schedule.initial_size), 0};
  return run_batch(problem, schedule, runs, config, scope, Executor(workers));
}

SizingResult run_sizing_py(const TrapProblem& problem, const ReliabilityCriterion& crit,
                           std::uint64_t master_seed, const GAConfig& config,
                           const BisectionSettings& settings, GmaxStatistic statistic,
                           unsigned workers) {
  return run_sizing(problem, crit, config, settings, statistic, master_seed, Executor(workers));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shrinking population schedules for trap-function genetic algorithms";
  m.attr("__version__") = kVersion;

  py::register_exception<estimation_error>(m, "EstimationError", PyExc_RuntimeError);

  py::class_<TrapParams>(m, "TrapParams")
      .def(py::init<>())
      .def_readwrite("block_len", &TrapParams::block_len)
      .def_readwrite("local_opt", &TrapParams::local_opt)
      .def_readwrite("global_opt", &TrapParams::global_opt)
      .def_readwrite("slope_change", &TrapParams::slope_change)
      .def_static("defaults_for", &TrapParams::defaults_for, py::arg("block_len"));

  py::class_<TrapProblem>(m, "TrapProblem")
      .def(py::init<TrapParams, int>(), py::arg("params"), py::arg("num_blocks"))
      .def_property_readonly("num_blocks", &TrapProblem::num_blocks)
      .def_property_readonly("genome_length", &TrapProblem::genome_length)
      .def_property_readonly("optimum_fitness", &TrapProblem::optimum_fitness)
      .def("evaluate", &evaluate_bits, py::arg("bits"),
           "Fitness of a genome given as a '0'/'1' string.");

  m.def("make_problem", &make_problem, py::arg("block_len"), py::arg("num_blocks"),
        "Trap problem with the standard parameters for the block length.");
  m.def("trap_value", &trap_value, py::arg("ones"), py::arg("params"));
  m.def("unitation", &unitation_bits, py::arg("bits"), "Number of '1' characters.");

  py::class_<SvpsSchedule>(m, "Schedule")
      .def(py::init<int, double, double, int>(), py::arg("initial_size"), py::arg("speed"),
           py::arg("severity"), py::arg("horizon"))
      .def_static("constant", &SvpsSchedule::constant, py::arg("size"))
      .def_readonly("initial_size", &SvpsSchedule::initial_size)
      .def_readonly("speed", &SvpsSchedule::speed)
      .def_readonly("severity", &SvpsSchedule::severity)
      .def_readonly("horizon", &SvpsSchedule::horizon)
      .def("size_at", &SvpsSchedule::size_at, py::arg("generation"))
      .def("sizes", &SvpsSchedule::sizes);

  py::class_<GAConfig>(m, "GAConfig")
      .def(py::init<>())
      .def_readwrite("crossover_probability", &GAConfig::crossover_probability)
      .def_readwrite("tournament_size", &GAConfig::tournament_size)
      .def_readwrite("max_generations", &GAConfig::max_generations)
      .def_readwrite("count_initial_evaluations", &GAConfig::count_initial_evaluations);

  py::enum_<Termination>(m, "Termination")
      .value("optimum_found", Termination::optimum_found)
      .value("fixation", Termination::fixation)
      .value("generation_cap", Termination::generation_cap);

  py::class_<RunOutcome>(m, "RunOutcome")
      .def_readonly("success", &RunOutcome::success)
      .def_readonly("evaluations_to_solution", &RunOutcome::evaluations_to_solution)
      .def_readonly("total_evaluations", &RunOutcome::total_evaluations)
      .def_readonly("generations", &RunOutcome::generations)
      .def_readonly("termination", &RunOutcome::termination);

  m.def(
      "run",
      [](const TrapProblem& problem, const SvpsSchedule& schedule, std::uint64_t seed,
         const GAConfig& config) { return run(problem, schedule, config, seed); },
      py::arg("problem"), py::arg("schedule"), py::arg("seed"), py::arg("config") = GAConfig{},
      "One GA run under the size schedule.");

  py::class_<ReliabilityCriterion>(m, "ReliabilityCriterion")
      .def(py::init<>())
      .def(py::init([](int runs, int required) {
             ReliabilityCriterion c{runs, required};
             c.validate();
             return c;
           }),
           py::arg("runs"), py::arg("required_successes"))
      .def_readwrite("runs", &ReliabilityCriterion::runs)
      .def_readwrite("required_successes", &ReliabilityCriterion::required_successes);

  py::class_<ReliabilityReport>(m, "ReliabilityReport")
      .def_readonly("size", &ReliabilityReport::size)
      .def_readonly("runs", &ReliabilityReport::runs)
      .def_readonly("successes", &ReliabilityReport::successes)
      .def_readonly("success_rate", &ReliabilityReport::success_rate)
      .def_readonly("aes_mean", &ReliabilityReport::aes_mean)
      .def_readonly("aes_std", &ReliabilityReport::aes_std)
      .def_readonly("generations_mean", &ReliabilityReport::generations_mean)
      .def_readonly("outcomes", &ReliabilityReport::outcomes)
      .def("passed", &ReliabilityReport::passed, py::arg("criterion"));

  m.def("run_batch", &run_batch_py, py::arg("problem"), py::arg("schedule"), py::arg("runs"),
        py::arg("master_seed"), py::arg("config") = GAConfig{}, py::arg("workers") = 0,
        "Independent replications under one schedule; deterministic in the seed.");

  py::enum_<GmaxStatistic>(m, "GmaxStatistic")
      .value("mean", GmaxStatistic::mean)
      .value("median", GmaxStatistic::median)
      .value("max", GmaxStatistic::max);

  py::class_<BisectionSettings>(m, "BisectionSettings")
      .def(py::init<>())
      .def_readwrite("initial_size", &BisectionSettings::initial_size)
      .def_readwrite("threshold", &BisectionSettings::threshold)
      .def_readwrite("ceiling", &BisectionSettings::ceiling);

  py::class_<SizingRecord>(m, "SizingRecord")
      .def_readonly("phase", &SizingRecord::phase)
      .def_readonly("report", &SizingRecord::report);

  py::class_<SizingResult>(m, "SizingResult")
      .def_readonly("n_bisection", &SizingResult::n_bisection)
      .def_readonly("n_refined", &SizingResult::n_refined)
      .def_readonly("g_max_estimate", &SizingResult::g_max_estimate)
      .def_readonly("reports", &SizingResult::reports);

  m.def("run_sizing", &run_sizing_py, py::arg("problem"), py::arg("criterion"),
        py::arg("master_seed"), py::arg("config") = GAConfig{},
        py::arg("settings") = BisectionSettings{}, py::arg("statistic") = GmaxStatistic::mean,
        py::arg("workers") = 0,
        "Bisection, then 1% refinement, then the schedule horizon estimate.");

  m.def("estimate_gmax", &estimate_gmax, py::arg("report"),
        py::arg("statistic") = GmaxStatistic::mean);

  py::class_<SampleStats>(m, "SampleStats")
      .def(py::init([](double mean, double stddev, int count) {
             return SampleStats{mean, stddev, count};
           }),
           py::arg("mean"), py::arg("stddev"), py::arg("count"))
      .def_readonly("mean", &SampleStats::mean)
      .def_readonly("stddev", &SampleStats::stddev)
      .def_readonly("count", &SampleStats::count);

  py::enum_<TTestVariant>(m, "TTestVariant")
      .value("welch", TTestVariant::welch)
      .value("pooled", TTestVariant::pooled);

  py::class_<TTestResult>(m, "TTestResult")
      .def_readonly("t", &TTestResult::t)
      .def_readonly("dof", &TTestResult::dof)
      .def_readonly("p_value", &TTestResult::p_value)
      .def_readonly("significant", &TTestResult::significant);

  m.def("two_sample_t_test", &two_sample_t_test, py::arg("a"), py::arg("b"),
        py::arg("variant") = TTestVariant::welch, py::arg("alpha") = 0.05);

  py::class_<PowerLawFit>(m, "PowerLawFit")
      .def_readonly("exponent", &PowerLawFit::exponent)
      .def_readonly("coefficient", &PowerLawFit::coefficient)
      .def_readonly("r_squared", &PowerLawFit::r_squared)
      .def_readonly("points_used", &PowerLawFit::points_used);

  m.def(
      "fit_power_law",
      [](const std::vector<std::pair<double, double>>& points) {
        return fit_power_law(points);
      },
      py::arg("points"), "OLS fit of y = c * x^e on the log-log positive points.");
}
