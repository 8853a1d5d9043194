#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pbg/catalog.hpp"
#include "pbg/cli.hpp"
#include "pbg/io.hpp"
#include "pbg/nerve.hpp"
#include "pbg/transformations.hpp"

namespace py = pybind11;
using namespace pbg;

namespace {

PBGroupoid gauge(unsigned n, std::size_t m) { return pb_groupoid_from_principal_bundle(catalog_pbgauge0(n, m)); }

std::string dump(const ValidationReport& r) { return r.to_json().dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite PB groupoids, bundle gerbes and crossed modules";

    py::register_exception<Error>(m, "PbgError");

    m.def("run", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
            py::gil_scoped_release release;
            code = pbg::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));

    m.def("catalog_document", [] { return canonical(catalog_document()); });
    m.def("catalog_files", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& e : catalog_entries()) out.emplace_back(e.file, canonical(e.document));
        return out;
    });
    m.def("roundtrip", [](const std::string& text) { return canonical(emit_document(parse_document(text))); },
          py::arg("text"));
    m.def("stanzas", [](const std::string& text) { return parse_document(text).stanzas; }, py::arg("text"));

    m.def("check_crossed_module", [](const std::string& name) {
        if (name == "A3_S3") return dump(check_crossed_module(catalog_a3_s3()));
        if (name == "Z3_Z2_dtrivial") return dump(check_crossed_module(catalog_abelian_dtrivial()));
        throw Error(ErrorKind::DanglingReference, "no catalog crossed module " + name);
    }, py::arg("name"));

    m.def("gauge_phi", [](unsigned n, std::size_t m) {
        auto p = gauge(n, m);
        auto g = functor_phi(p, catalog_point_surjection(p.base->object_labels()));
        return py::make_tuple(g.B->num_arrows(), g.base->num_arrows(), dump(check_bundle_gerbe(g)));
    }, py::arg("n"), py::arg("m"));

    m.def("gauge_nerve_sizes", [](unsigned n, std::size_t m, std::size_t k) {
        PBNerve pn(gauge(n, m), k);
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i <= k; ++i) s.push_back(pn.P().size(i));
        return s;
    }, py::arg("n"), py::arg("m"), py::arg("k"));

    m.def("gauge_aut", [](unsigned n, std::size_t m, std::size_t k) {
        auto s = aut_partial_quotient(gauge(n, m), k);
        py::dict d;
        d["ok"] = s.report.ok();
        d["explicit"] = s.explicit_mode;
        d["aut"] = s.aut;
        d["equivariant_h"] = s.equivariant_h;
        d["pi_image"] = s.pi_image;
        d["xi_image"] = s.xi_image;
        return d;
    }, py::arg("n"), py::arg("m"), py::arg("k"));

    m.def("fiber_product_morita", [](std::vector<std::string> y, std::vector<std::string> mm, std::vector<Index> map) {
        return dump(fiber_product_morita(Surjection(std::move(y), std::move(mm), std::move(map))));
    }, py::arg("domain"), py::arg("codomain"), py::arg("map"));
}
