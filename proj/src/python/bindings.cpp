#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ramprisk/data.hpp"
#include "ramprisk/domain.hpp"
#include "ramprisk/errors.hpp"
#include "ramprisk/estimator.hpp"
#include "ramprisk/lp.hpp"

namespace py = pybind11;
using namespace ramprisk;

namespace {

SampleSet to_samples(const std::vector<std::pair<double, double>>& pairs) {
    std::vector<ErrorPair> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) out.emplace_back(a, b);
    return SampleSet(std::move(out));
}

py::dict to_dict(const WorstCaseSolution& s) {
    py::dict d;
    d["value"] = s.value;
    d["gamma_star"] = s.gamma_star;
    d["active_breakpoint"] = s.active_breakpoint ? py::cast(*s.active_breakpoint) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_ramprisk, m) {
    m.doc() = "Worst-case wind ramp probabilities over a Wasserstein ball around historical errors";

    py::register_exception<SolverFailure>(m, "SolverFailure", PyExc_RuntimeError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::enum_<Direction>(m, "Direction").value("down", Direction::down).value("up", Direction::up);
    py::enum_<SolverPath>(m, "SolverPath")
        .value("closed_form", SolverPath::closed_form)
        .value("lp_oracle", SolverPath::lp_oracle);

    py::class_<SampleSet>(m, "SampleSet")
        .def(py::init(&to_samples), py::arg("pairs"))
        .def("__len__", &SampleSet::size)
        .def("prefix", &SampleSet::prefix, py::arg("count"))
        .def("pairs",
             [](const SampleSet& s) {
                 std::vector<std::pair<double, double>> out;
                 for (const auto& p : s.pairs()) out.emplace_back(p.dw1(), p.dw2());
                 return out;
             })
        .def_property_readonly("provenance", &SampleSet::provenance);

    py::class_<WassersteinConfig>(m, "WassersteinConfig")
        .def_static("with_radius", &WassersteinConfig::with_radius, py::arg("p"), py::arg("radius"))
        .def_static("with_confidence", &WassersteinConfig::with_confidence, py::arg("p"), py::arg("alpha"),
                    py::arg("sample_count"))
        .def_property_readonly("p", &WassersteinConfig::p)
        .def_property_readonly("q", &WassersteinConfig::q)
        .def_property_readonly("radius", &WassersteinConfig::radius);

    py::class_<RampQuery>(m, "RampQuery")
        .def(py::init<Direction, double>(), py::arg("direction"), py::arg("threshold"))
        .def_static("from_power_space", &RampQuery::from_power_space, py::arg("direction"),
                    py::arg("ramp_mw"), py::arg("forecast1_mw"), py::arg("forecast2_mw"))
        .def_property_readonly("direction", &RampQuery::direction)
        .def_property_readonly("threshold", &RampQuery::threshold);

    py::class_<EstimateResult>(m, "EstimateResult")
        .def_readonly("ramp_probability", &EstimateResult::ramp_probability)
        .def_readonly("inner_value", &EstimateResult::inner_value)
        .def_readonly("gamma_star", &EstimateResult::gamma_star)
        .def_readonly("active_breakpoint", &EstimateResult::active_breakpoint)
        .def_readonly("solver", &EstimateResult::solver)
        .def_readonly("radius_used", &EstimateResult::radius_used);

    m.def("threshold_to_error_space", &threshold_to_error_space, py::arg("ramp_mw"), py::arg("forecast1_mw"),
          py::arg("forecast2_mw"), py::arg("direction"));
    m.def(
        "ramp_margins",
        [](const SampleSet& s, Direction d, double t) {
            const MarginVector margins = ramp_margins(s, d, t);
            return std::vector<double>(margins.values().begin(), margins.values().end());
        },
        py::arg("samples"), py::arg("direction"), py::arg("threshold"));
    m.def("dual_norm_scale", &dual_norm_scale, py::arg("p"));
    m.def("radius_from_confidence", &radius_from_confidence, py::arg("alpha"), py::arg("sample_count"));
    m.def(
        "solve_worst_case",
        [](std::vector<double> g, double r, double scale) {
            return to_dict(solve_worst_case(MarginVector(std::move(g)), r, scale));
        },
        py::arg("margins"), py::arg("radius"), py::arg("scale") = 1.0);
    m.def(
        "solve_worst_case_lp",
        [](std::vector<double> g, double r, double scale) {
            return to_dict(lp::solve_worst_case_lp(MarginVector(std::move(g)), r, scale));
        },
        py::arg("margins"), py::arg("radius"), py::arg("scale") = 1.0);
    m.def(
        "estimate",
        [](const SampleSet& s, const RampQuery& q, const WassersteinConfig& c, SolverPath solver) {
            return estimate(s, q, c, {solver});
        },
        py::arg("samples"), py::arg("query"), py::arg("config"), py::arg("solver") = SolverPath::closed_form);
    m.def("erp", &erp, py::arg("samples"), py::arg("query"));
    m.def(
        "sweep",
        [](const SampleSet& s, Direction d, const std::vector<double>& grid, const WassersteinConfig& c) {
            const SweepCurve curve = sweep(s, d, grid, c);
            py::dict out;
            out["thresholds"] = curve.thresholds;
            out["ramp_probabilities"] = curve.ramp_probabilities;
            out["density"] = curve.density;
            return out;
        },
        py::arg("samples"), py::arg("direction"), py::arg("thresholds"), py::arg("config"));

    m.def("load_pairs", &data::load_pairs, py::arg("path"));
    m.def(
        "extract_pairs",
        [](const std::filesystem::path& path, double lo, double hi, bool first_only) {
            data::PairExtractionSpec spec;
            spec.window_lo = lo;
            spec.window_hi = hi;
            spec.mode = first_only ? data::WindowMode::first : data::WindowMode::both;
            return data::extract_pairs(data::load_series(path), spec).samples;
        },
        py::arg("path"), py::arg("window_lo"), py::arg("window_hi"), py::arg("first_only") = false);
}
