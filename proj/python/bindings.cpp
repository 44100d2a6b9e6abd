#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

#include "psl2rp/genseq.hpp"
#include "psl2rp/report.hpp"

namespace py = pybind11;
using namespace psl2rp;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

nlohmann::json py_to_json(const py::object& obj) {
    py::module_ pyjson = py::module_::import("json");
    std::string dumped = py::cast<std::string>(pyjson.attr("dumps")(obj));
    return nlohmann::json::parse(dumped);
}

AnalysisOptions options_from_kwargs(unsigned threads, uint64_t seed,
                                    const std::optional<std::string>& cache_dir) {
    AnalysisOptions opts;
    opts.threads = threads;
    opts.seed = seed;
    if (cache_dir) opts.cache_dir = *cache_dir;
    return opts;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "PSL(2,p) replacement-property engine";

    py::class_<GroupTable>(m, "Group")
        .def_static(
            "build", [](uint32_t p, bool allow_p5) { return GroupTable::build(p, {allow_p5}); },
            py::arg("p"), py::arg("allow_p5") = false)
        .def_property_readonly("p", &GroupTable::p)
        .def_property_readonly("order", &GroupTable::order)
        .def("multiply", &GroupTable::multiply, py::arg("g"), py::arg("h"))
        .def("inverse", &GroupTable::inverse, py::arg("g"))
        .def("element_order", &GroupTable::element_order, py::arg("g"))
        .def("matrix",
             [](const GroupTable& g, uint32_t i) {
                 const ProjMatrix& m2 = g.matrix_of(i);
                 return py::make_tuple(m2.a, m2.b, m2.c, m2.d);
             })
        .def("index",
             [](const GroupTable& g, uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
                 return g.index_of(ProjMatrix{static_cast<uint16_t>(a), static_cast<uint16_t>(b),
                                              static_cast<uint16_t>(c), static_cast<uint16_t>(d)});
             })
        .def("closure_size",
             [](const GroupTable& g, const std::vector<uint32_t>& gens) {
                 return g.closure(gens).count();
             })
        .def("conjugacy_class_count", &GroupTable::class_count);

    m.def("predict_rp", [](uint32_t p) { return verdict_name(predict_rp(p)); });
    m.def("predict_witness_orders", &predict_witness_orders);
    m.def("jambor_m", &jambor_m);

    m.def(
        "maximal_census",
        [](uint32_t p, unsigned threads, uint64_t seed, const std::optional<std::string>& cache) {
            AnalysisContext ctx = AnalysisContext::create(p, options_from_kwargs(threads, seed, cache));
            return json_to_py(census_to_json(ctx));
        },
        py::arg("p"), py::arg("threads") = 0, py::arg("seed") = 0x5eed,
        py::arg("cache_dir") = std::nullopt);

    m.def(
        "check_rp",
        [](uint32_t p, unsigned threads, uint64_t seed, const std::optional<std::string>& cache) {
            AnalysisContext ctx = AnalysisContext::create(p, options_from_kwargs(threads, seed, cache));
            RPReport rep = check_rp(ctx, jambor_m(p), false);
            return json_to_py(report_to_json(rep, ctx.group));
        },
        py::arg("p"), py::arg("threads") = 0, py::arg("seed") = 0x5eed,
        py::arg("cache_dir") = std::nullopt);

    m.def(
        "compute_m",
        [](uint32_t p, unsigned threads, const std::optional<std::string>& cache) {
            AnalysisContext ctx = AnalysisContext::create(p, options_from_kwargs(threads, 0x5eed, cache));
            MResult r = compute_m(ctx);
            return py::make_tuple(r.value, r.verified);
        },
        py::arg("p"), py::arg("threads") = 0, py::arg("cache_dir") = std::nullopt);

    m.def(
        "certify",
        [](uint32_t p, const std::string& variant, unsigned threads,
           const std::optional<std::string>& cache) {
            AnalysisContext ctx = AnalysisContext::create(p, options_from_kwargs(threads, 0x5eed, cache));
            return json_to_py(certificate_to_json(construct_failure_certificate(ctx, variant)));
        },
        py::arg("p"), py::arg("variant") = "case1", py::arg("threads") = 0,
        py::arg("cache_dir") = std::nullopt);

    m.def(
        "replay",
        [](const py::object& cert) {
            ReplayResult res = replay_certificate(py_to_json(cert));
            return py::make_tuple(res.ok, res.failed_check);
        },
        py::arg("certificate"));

    m.attr("__version__") = "1.0.0";
}
