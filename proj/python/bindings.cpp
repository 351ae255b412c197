#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nurse_roster/aco.hpp"
#include "nurse_roster/constraints.hpp"
#include "nurse_roster/executor.hpp"
#include "nurse_roster/experiment.hpp"
#include "nurse_roster/pso.hpp"
#include "nurse_roster/roster.hpp"

namespace py = pybind11;

namespace {

std::map<std::string, std::int64_t> soft_map(const nrp::SoftCounts& counts) {
  std::map<std::string, std::int64_t> out;
  for (std::size_t k = 0; k < nrp::kSoftConstraintCount; ++k) {
    out[nrp::soft_constraint_label(static_cast<nrp::SoftConstraint>(k))] = counts[k];
  }
  return out;
}

template <typename Params, typename Setter>
Params params_from_kwargs(const py::kwargs& kwargs, Setter set) {
  Params params;
  for (auto item : kwargs) {
    const auto key = py::str(item.first).cast<std::string>();
    std::string value;
    if (py::isinstance<py::bool_>(item.second)) value = item.second.cast<bool>() ? "true" : "false";
    else value = py::str(item.second).cast<std::string>();
    set(params, key, value);
  }
  return params;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nurse rostering: constraint evaluation, ant colony and particle swarm solvers";

  py::register_exception<nrp::InstanceError>(m, "InstanceError", PyExc_ValueError);

  py::class_<nrp::RosterInstance>(m, "RosterInstance")
      .def_property_readonly("nurse_count", &nrp::RosterInstance::nurse_count)
      .def_property_readonly("day_count", &nrp::RosterInstance::day_count)
      .def_property_readonly("shift_count", &nrp::RosterInstance::shift_count)
      .def_property_readonly("shift_ids",
                             [](const nrp::RosterInstance& i) {
                               std::vector<std::string> ids;
                               for (const auto& s : i.spec().shifts) ids.push_back(s.id);
                               return ids;
                             })
      .def_property_readonly("name", [](const nrp::RosterInstance& i) { return i.spec().name; })
      .def("__eq__", [](const nrp::RosterInstance& a, const nrp::RosterInstance& b) { return a == b; });

  py::class_<nrp::Schedule>(m, "Schedule")
      .def_property_readonly("nurse_count", &nrp::Schedule::nurse_count)
      .def_property_readonly("day_count", &nrp::Schedule::day_count)
      .def("at", &nrp::Schedule::at, py::arg("nurse"), py::arg("day"))
      .def("works", &nrp::Schedule::works, py::arg("nurse"), py::arg("day"))
      .def("__eq__", [](const nrp::Schedule& a, const nrp::Schedule& b) { return a == b; });

  py::class_<nrp::HardViolationReport>(m, "HardViolationReport")
      .def_readonly("hc1", &nrp::HardViolationReport::three_consecutive_nights)
      .def_readonly("hc2", &nrp::HardViolationReport::double_assignments)
      .def_readonly("hc3", &nrp::HardViolationReport::blank_limit_days)
      .def_readonly("hc4", &nrp::HardViolationReport::skill_mismatches)
      .def_property_readonly("feasible", &nrp::HardViolationReport::feasible);

  py::class_<nrp::PenaltyBreakdown>(m, "PenaltyBreakdown")
      .def_property_readonly("violations", [](const nrp::PenaltyBreakdown& b) { return soft_map(b.violations); })
      .def_property_readonly("weighted", [](const nrp::PenaltyBreakdown& b) { return soft_map(b.weighted); })
      .def_readonly("total", &nrp::PenaltyBreakdown::total)
      .def_readonly("hard", &nrp::PenaltyBreakdown::hard)
      .def_readonly("hard_penalty", &nrp::PenaltyBreakdown::hard_penalty)
      .def_readonly("fitness", &nrp::PenaltyBreakdown::fitness);

  py::class_<nrp::RunResult>(m, "RunResult")
      .def_readonly("best_schedule", &nrp::RunResult::best_schedule)
      .def_readonly("best_fitness", &nrp::RunResult::best_fitness)
      .def_readonly("history", &nrp::RunResult::history)
      .def_readonly("wall_time", &nrp::RunResult::wall_time)
      .def_readonly("evaluations", &nrp::RunResult::evaluations);

  py::class_<nrp::RunStats>(m, "RunStats")
      .def_readonly("n", &nrp::RunStats::n)
      .def_readonly("mean", &nrp::RunStats::mean)
      .def_readonly("stddev", &nrp::RunStats::stddev)
      .def_readonly("sem", &nrp::RunStats::sem)
      .def_readonly("min", &nrp::RunStats::min)
      .def_readonly("max", &nrp::RunStats::max);

  m.def("parse_instance", [](const std::string& text) { return nrp::parse_instance(text); }, py::arg("text"));
  m.def("serialize_instance", &nrp::serialize_instance, py::arg("instance"));
  m.def("load_instance", &nrp::load_instance_file, py::arg("path"));
  m.def("reference_instance", &nrp::reference_instance);
  m.def("desk_instance", &nrp::desk_instance, py::arg("nurses") = 8, py::arg("days") = 28);

  m.def("empty_schedule", &nrp::empty_schedule, py::arg("instance"));
  m.def(
      "set_assignment",
      [](nrp::Schedule schedule, const nrp::RosterInstance& instance, std::size_t nurse, std::size_t day,
         const std::string& value) {
        nrp::set_assignment(schedule, instance, nurse, day, value);
        return schedule;
      },
      py::arg("schedule"), py::arg("instance"), py::arg("nurse"), py::arg("day"), py::arg("value"),
      "Return a copy of the schedule with one cell changed.");
  m.def("parse_roster", [](const std::string& text, const nrp::RosterInstance& i) { return nrp::parse_roster(text, i); },
        py::arg("text"), py::arg("instance"));
  m.def("serialize_roster", &nrp::serialize_roster, py::arg("schedule"), py::arg("instance"));

  m.def("check_hard", &nrp::check_hard, py::arg("schedule"), py::arg("instance"));
  m.def(
      "soft_penalty",
      [](const nrp::Schedule& s, const nrp::RosterInstance& i, const std::string& label) {
        return nrp::soft_penalty(s, i, nrp::soft_constraint_from_label(label));
      },
      py::arg("schedule"), py::arg("instance"), py::arg("constraint"));
  m.def("evaluate", &nrp::evaluate, py::arg("schedule"), py::arg("instance"));
  m.def(
      "evaluate_batch",
      [](const std::vector<nrp::Schedule>& schedules, const nrp::RosterInstance& instance, std::size_t workers) {
        py::gil_scoped_release release;
        return nrp::evaluate_batch(schedules, instance, nrp::ExecutorConfig{workers});
      },
      py::arg("schedules"), py::arg("instance"), py::arg("workers") = 1);

  m.def(
      "run_aco",
      [](const nrp::RosterInstance& instance, std::size_t workers, const py::kwargs& kwargs) {
        auto params = params_from_kwargs<nrp::AcoParams>(
            kwargs, [](nrp::AcoParams& p, const std::string& k, const std::string& v) { nrp::set_aco_param(p, k, v); });
        py::gil_scoped_release release;
        nrp::EvaluationExecutor executor(nrp::ExecutorConfig{workers});
        return nrp::run_aco(instance, params, executor);
      },
      py::arg("instance"), py::arg("workers") = 1,
      "Run ant colony optimization; keyword arguments set solver parameters (ants, iterations, variant, ...).");
  m.def(
      "run_pso",
      [](const nrp::RosterInstance& instance, std::size_t workers, const py::kwargs& kwargs) {
        auto params = params_from_kwargs<nrp::PsoParams>(
            kwargs, [](nrp::PsoParams& p, const std::string& k, const std::string& v) { nrp::set_pso_param(p, k, v); });
        py::gil_scoped_release release;
        nrp::EvaluationExecutor executor(nrp::ExecutorConfig{workers});
        return nrp::run_pso(instance, params, executor);
      },
      py::arg("instance"), py::arg("workers") = 1,
      "Run particle swarm optimization; keyword arguments set solver parameters (particles, c1, c2, w, ...).");

  m.def("compute_stats", [](const std::vector<double>& samples) { return nrp::compute_stats(samples); },
        py::arg("samples"));
}
