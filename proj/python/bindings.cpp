// Python bindings for the core operations. Exact rationals cross the
// boundary as "num/den" strings so Fraction() can ingest them losslessly.

#include "overlap/discrete.hpp"
#include "overlap/objective.hpp"
#include "overlap/optimizer.hpp"
#include "overlap/rational.hpp"
#include "overlap/stepfn.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace overlap;

namespace {

std::vector<Rational> parse_values(const std::vector<std::string>& decimals) {
    std::vector<Rational> out;
    out.reserve(decimals.size());
    for (const std::string& s : decimals) out.push_back(parse_decimal(s));
    return out;
}

std::vector<std::string> fractions_of(const std::vector<Rational>& values) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const Rational& v : values) out.push_back(fraction_string(v));
    return out;
}

OptimizerConfig make_config(int steps, bool symmetric, int restarts, int max_iters,
                            double initial_step, std::uint64_t seed, double stop_tolerance,
                            int threads, bool anneal) {
    OptimizerConfig cfg;
    cfg.steps = steps;
    cfg.symmetric = symmetric;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.initial_step = initial_step;
    cfg.seed = seed;
    cfg.stop_tolerance = stop_tolerance;
    cfg.threads = threads;
    cfg.anneal.enabled = anneal;
    return cfg;
}

py::dict result_dict(const RunResult& r) {
    py::dict d;
    d["best"] = r.best;
    d["value"] = r.best_value_float;
    d["value_fraction"] = fraction_string(r.best_value_exact);
    d["value_decimal"] = decimal_string(r.best_value_exact, 40);
    d["history"] = r.restart_history;
    d["best_restart"] = r.best_restart;
    d["seed"] = r.seed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Step-function toolkit for the minimum overlap problem";

    py::class_<StepFunction>(m, "StepFunction")
        .def_static(
            "normalized",
            [](const std::vector<std::string>& values, const std::string& label) {
                return StepFunction::normalized(parse_values(values), label);
            },
            py::arg("values"), py::arg("label") = "",
            "Build from decimal strings; enforces [0,1] values and integral 1.")
        .def_static(
            "raw",
            [](const std::vector<std::string>& values, const std::string& label) {
                return StepFunction::raw(parse_values(values), label);
            },
            py::arg("values"), py::arg("label") = "")
        .def_static(
            "symmetric_from_half",
            [](int n, const std::vector<std::string>& half, const std::string& label) {
                return StepFunction::symmetric_from_half(n, parse_values(half), label);
            },
            py::arg("n"), py::arg("half"), py::arg("label") = "")
        .def_property_readonly("n", &StepFunction::steps)
        .def_property_readonly("label", &StepFunction::label)
        .def("values", &StepFunction::float_values, "Nearest-double shadows of the values.")
        .def("exact_values",
             [](const StepFunction& f) { return fractions_of(f.values()); })
        .def("integral_fraction",
             [](const StepFunction& f) { return fraction_string(f.integral()); })
        .def("is_normalized", &StepFunction::is_normalized)
        .def("is_symmetric", &StepFunction::is_symmetric)
        .def("in_unit_box", &StepFunction::in_unit_box)
        .def("to_json", &stepfn_to_json)
        .def("__eq__", [](const StepFunction& a, const StepFunction& b) { return a == b; })
        .def("__len__", &StepFunction::steps)
        .def("__repr__", [](const StepFunction& f) {
            std::ostringstream out;
            out << "StepFunction(n=" << f.steps();
            if (!f.label().empty()) out << ", label='" << f.label() << "'";
            out << ")";
            return out.str();
        });

    m.def("builtin", &builtin_stepfn, py::arg("name"),
          "Bundled certificate functions: p15, p19, p51.");
    m.def("builtin_names", [] { return builtin_names(); });
    m.def("from_json", &stepfn_from_json, py::arg("text"));
    m.def("load", [](const std::string& path) { return load_stepfn(path); }, py::arg("path"));
    m.def("store", [](const StepFunction& f, const std::string& path) { store_stepfn(f, path); },
          py::arg("f"), py::arg("path"));

    m.def(
        "shift_values",
        [](const StepFunction& f) {
            ShiftReportF r = shift_values_float(f);
            py::dict d;
            d["n"] = r.n;
            d["g"] = r.g;
            d["max"] = r.max_value;
            d["argmax"] = r.argmax;
            return d;
        },
        py::arg("f"), "Float-mode per-shift table; g[j + n - 1] is the value at shift j.");
    m.def(
        "shift_values_exact",
        [](const StepFunction& f) {
            ShiftReport r = shift_values_exact(f);
            py::dict d;
            d["n"] = r.n;
            d["g"] = fractions_of(r.g);
            d["max"] = fraction_string(r.max_value);
            d["argmax"] = r.argmax;
            return d;
        },
        py::arg("f"));
    m.def("max_overlap", [](const StepFunction& f) { return max_overlap_float(f); },
          py::arg("f"));
    m.def(
        "max_overlap_exact",
        [](const StepFunction& f) {
            auto [value, argmax] = max_overlap_exact(f);
            return py::make_tuple(fraction_string(value), argmax);
        },
        py::arg("f"), "Exact maximum as a 'num/den' string plus the argmax shifts.");
    m.def(
        "max_overlap_decimal",
        [](const StepFunction& f, int digits) {
            return decimal_string(max_overlap_exact(f).first, digits);
        },
        py::arg("f"), py::arg("digits") = 40);
    m.def("continuous_at",
          [](const StepFunction& f, double k) { return continuous_at(f, k).value; },
          py::arg("f"), py::arg("k"));
    m.def("subgradient", &subgradient, py::arg("f"), py::arg("j"));

    m.def("project_feasible", [](std::vector<double> v) { return project_feasible(std::move(v)); },
          py::arg("v"), "Euclidean projection onto the box-and-integral feasible set.");
    m.def("optimize",
          [](int steps, bool symmetric, int restarts, int max_iters, double initial_step,
             std::uint64_t seed, double stop_tolerance, int threads, bool anneal) {
              return result_dict(multi_start(make_config(steps, symmetric, restarts, max_iters,
                                                         initial_step, seed, stop_tolerance,
                                                         threads, anneal)));
          },
          py::arg("steps"), py::arg("symmetric") = false, py::arg("restarts") = 16,
          py::arg("max_iters") = 4000, py::arg("initial_step") = 0.1, py::arg("seed") = 0,
          py::arg("stop_tolerance") = 1e-12, py::arg("threads") = 1, py::arg("anneal") = false,
          "Seeded multi-start projected subgradient search; deterministic per seed.");
    m.def("minimize",
          [](const StepFunction& start, bool symmetric, int max_iters, double initial_step,
             std::uint64_t seed, double stop_tolerance, bool anneal) {
              OptimizerConfig cfg = make_config(start.steps(), symmetric, 1, max_iters,
                                                initial_step, seed, stop_tolerance, 1, anneal);
              return result_dict(minimize(start, cfg));
          },
          py::arg("start"), py::arg("symmetric") = false, py::arg("max_iters") = 4000,
          py::arg("initial_step") = 0.1, py::arg("seed") = 0, py::arg("stop_tolerance") = 1e-12,
          py::arg("anneal") = false);

    m.def(
        "difference_counts",
        [](int n, const std::vector<int>& a_elements) {
            DifferenceCounts dc = difference_counts(Partition::from_elements(n, a_elements));
            py::dict counts;
            for (int k = dc.min_k(); k <= dc.max_k(); ++k) {
                if (dc.count(k)) counts[py::int_(k)] = dc.count(k);
            }
            py::dict d;
            d["counts"] = counts;
            d["max"] = dc.max_count;
            return d;
        },
        py::arg("n"), py::arg("a_elements"),
        "M_k table for the partition of {1..2n} with the given first part.");
    m.def(
        "min_over_partitions",
        [](int n, int cap, bool prune) {
            MinOverlapResult r = min_over_partitions(n, cap, prune);
            py::dict d;
            d["n"] = r.n;
            d["value"] = r.value;
            d["witness"] = r.witness.a_elements();
            d["witness_mask"] = r.witness.a_mask;
            d["examined"] = r.examined;
            return d;
        },
        py::arg("n"), py::arg("cap") = kDefaultPartitionCap, py::arg("prune") = true,
        "Exhaustive M(n) with the canonical witness.");
    m.def(
        "partition_to_stepfn",
        [](int n, const std::vector<int>& a_elements) {
            return partition_to_stepfn(Partition::from_elements(n, a_elements));
        },
        py::arg("n"), py::arg("a_elements"));

    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
}
