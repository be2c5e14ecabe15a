// Python bindings: configuration-driven runs, the JSON series and the corpus.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmap/job.hpp"

namespace py = pybind11;
using namespace qmap;

namespace {

std::string run_text(const std::string& config, const std::string& format) {
    JobConfig cfg = parse_config(config);
    cfg.output.format = format;
    py::gil_scoped_release release;
    return run_job(cfg).text;
}

py::object series(const std::string& config) {
    JobConfig cfg = parse_config(config);
    cfg.output.format = "json";
    std::string text;
    {
        py::gil_scoped_release release;
        text = run_job(cfg).text;
    }
    return py::module_::import("json").attr("loads")(text);
}

py::dict validate_preset(const std::string& name) {
    auto report = validate(preset_presentation(name));
    py::dict out;
    out["errors"] = report.errors;
    out["warnings"] = report.warnings;
    return out;
}

std::vector<py::dict> corpus(const std::string& dir) {
    auto report = run_corpus(dir);
    std::vector<py::dict> out;
    for (const auto& c : report.cases) {
        py::dict d;
        d["name"] = c.name;
        d["passed"] = c.passed;
        d["message"] = c.message;
        d["repro"] = c.repro;
        out.push_back(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Small I-functions of GIT quotients by exact computation";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<IntegrityError>(m, "IntegrityError", base.ptr());
    py::register_exception<UnboundedEnumeration>(m, "UnboundedEnumeration", base.ptr());

    m.attr("SCHEMA_VERSION") = kSchemaVersion;
    m.def("render", &run_text, py::arg("config"), py::arg("format") = "plain",
          "Runs a YAML job configuration and returns the series as plain, latex or json text.");
    m.def("series", &series, py::arg("config"), "Runs a YAML job configuration and returns the JSON series as a dict.");
    m.def("validate_preset", &validate_preset, py::arg("name"), "Errors and warnings for a preset such as grassmannian(2,4).");
    m.def("run_corpus", &corpus, py::arg("directory"), "Runs NAME.yaml against NAME.expected.json for every case.");
    m.def("parse_rational", [](const std::string& s) { return to_string(parse_rational(s)); }, py::arg("text"),
          "Canonical form of a rational number.");
}
