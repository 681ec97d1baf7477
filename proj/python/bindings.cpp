#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "germforge/cli.hpp"
#include "germforge/figures.hpp"
#include "germforge/io.hpp"

namespace py = pybind11;
using namespace germforge;

namespace {

py::object json_to_py(const json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

json py_to_json(py::handle obj) {
    const std::string s =
        py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return json::parse(s);
}

TruncatedSeries series_from_py(const std::string& kind, const std::vector<cplx>& coeffs) {
    Parity p;
    if (kind == "holomorphic")
        p = Parity::holomorphic;
    else if (kind == "antiholomorphic")
        p = Parity::antiholomorphic;
    else
        throw domain_error("kind must be 'holomorphic' or 'antiholomorphic'");
    return TruncatedSeries::from_coeffs(p, coeffs);
}

py::dict formal_class_to_py(const FormalClass& c) {
    py::dict d;
    d["degenerate"] = c.degenerate;
    d["k"] = c.k;
    d["b"] = c.b;
    d["type"] = c.type_sign == TypeSign::positive   ? "positive"
                : c.type_sign == TypeSign::negative ? "negative"
                                                    : "n/a";
    return d;
}

py::dict decision_to_py(const DecisionReport& rep) {
    py::dict d;
    d["verdict"] = rep.verdict;
    d["case"] = rep.case_tag;
    d["margin"] = rep.margin;
    d["at_precision"] = rep.at_precision;
    py::dict w;
    for (auto& [k, v] : rep.witnesses) w[py::str(k)] = v;
    d["witnesses"] = w;
    d["notes"] = rep.notes;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical invariants and decisions for parabolic germs";

    py::class_<TruncatedSeries>(m, "TruncatedSeries")
        .def(py::init(&series_from_py), py::arg("kind"), py::arg("coefficients"))
        .def_property_readonly("kind",
                               [](const TruncatedSeries& s) {
                                   return s.anti() ? "antiholomorphic" : "holomorphic";
                               })
        .def_property_readonly("order", &TruncatedSeries::order)
        .def_property_readonly("coefficients",
                               [](const TruncatedSeries& s) {
                                   std::vector<cplx> out;
                                   for (std::size_t d = 1; d <= s.order(); ++d)
                                       out.push_back(s.coeff(d));
                                   return out;
                               })
        .def("__call__", &TruncatedSeries::eval, py::arg("z"))
        .def("truncated", &TruncatedSeries::truncated, py::arg("order"))
        .def("__repr__", [](const TruncatedSeries& s) {
            std::ostringstream os;
            os << "TruncatedSeries(" << (s.anti() ? "antiholomorphic" : "holomorphic")
               << ", order=" << s.order() << ")";
            return os.str();
        });

    m.def("identity", &TruncatedSeries::identity, py::arg("order"));
    m.def("sigma", &TruncatedSeries::sigma, py::arg("order"));
    m.def("compose", &compose, py::arg("outer"), py::arg("inner"));
    m.def("invert", &invert, py::arg("series"));
    m.def("conjugate_by", &conjugate_by, py::arg("change"), py::arg("germ"));
    m.def("residue_iteratif", &residue_iteratif, py::arg("germ"));

    m.def(
        "realify",
        [](const TruncatedSeries& f) {
            auto r = realify(f);
            return py::make_tuple(r.real_form, r.change);
        },
        py::arg("germ"));
    m.def("classify", [](const TruncatedSeries& f) { return formal_class_to_py(classify(f)); },
          py::arg("germ"));
    m.def(
        "prenormalize",
        [](const TruncatedSeries& f) {
            auto r = prenormalize(f);
            py::dict d;
            d["prenormalized"] = r.prenormalized;
            d["k"] = r.params.k;
            d["b"] = r.params.b;
            d["change"] = r.change;
            return d;
        },
        py::arg("germ"));

    m.def(
        "flow_map",
        [](int k, cplx b, cplx t, std::size_t order) {
            return flow_map(VectorFieldParams{k, b}, t, order);
        },
        py::arg("k"), py::arg("b"), py::arg("t"), py::arg("order"));
    m.def(
        "normal_form",
        [](int k, cplx b, cplx t, std::size_t order, bool anti, int ell) {
            VectorFieldParams p{k, b};
            return anti ? normal_form_antiholomorphic(p, t, order, ell)
                        : normal_form_holomorphic(p, t, order);
        },
        py::arg("k"), py::arg("b"), py::arg("t"), py::arg("order"), py::arg("anti") = true,
        py::arg("ell") = 0);
    m.def(
        "normal_form_root",
        [](int k, cplx b, int n, int ell, double y, std::size_t order) {
            return make_normal_form_root(VectorFieldParams{k, b}, n, ell, y, order);
        },
        py::arg("k"), py::arg("b"), py::arg("n"), py::arg("ell") = 0, py::arg("y") = 0.0,
        py::arg("order") = 16);

    m.def(
        "chart_eval",
        [](int k, cplx b, int j, cplx z) { return chart_eval(VectorFieldParams{k, b}, j, z); },
        py::arg("k"), py::arg("b"), py::arg("j"), py::arg("z"));
    m.def(
        "chart_invert",
        [](int k, cplx b, int j, cplx Z) { return chart_invert(VectorFieldParams{k, b}, j, Z); },
        py::arg("k"), py::arg("b"), py::arg("j"), py::arg("Z"));
    m.def(
        "orbit",
        [](const TruncatedSeries& f, int k, cplx b, cplx z0, int steps) {
            auto tr = orbit_trace(f, VectorFieldParams{k, b}, z0, steps);
            py::list out;
            for (auto& st : tr.steps) out.append(py::make_tuple(st.z, st.chart, st.time_value));
            return out;
        },
        py::arg("germ"), py::arg("k"), py::arg("b"), py::arg("z0"), py::arg("steps"));

    m.def(
        "compute_modulus",
        [](const TruncatedSeries& f) {
            auto res = compute_modulus(f, {});
            py::dict d;
            d["k"] = res.params.k;
            d["b"] = res.params.b;
            d["modulus"] = json_to_py(modulus_to_json(res.descriptor));
            d["alternating_sum_residual"] = res.alternating_sum_residual;
            d["abel_residual"] = res.abel_residual;
            return d;
        },
        py::arg("germ"));

    m.def(
        "decide_embeddable",
        [](py::handle mod) { return decision_to_py(decide_embeddable(parse_modulus_json(py_to_json(mod)))); },
        py::arg("modulus"));
    m.def(
        "decide_real_curve",
        [](py::handle mod) {
            auto m_ = parse_modulus_json(py_to_json(mod));
            return decision_to_py(m_.kind == ModulusKind::antiholomorphic
                                      ? decide_real_curve_f(m_)
                                      : decide_real_curve_g(m_));
        },
        py::arg("modulus"));
    m.def(
        "decide_root",
        [](py::handle mod, int n) {
            auto m_ = parse_modulus_json(py_to_json(mod));
            if (n % 2 == 0) {
                auto full = m_.kind == ModulusKind::holomorphic ? m_ : to_full_table(m_);
                auto rr = decide_antiholo_root_g(full, n);
                py::dict d = decision_to_py(rr.base);
                d["axes"] = rr.axes;
                d["independent_transitions"] = rr.independent_transitions;
                return d;
            }
            return decision_to_py(decide_antiholo_root_f(m_, n));
        },
        py::arg("modulus"), py::arg("n"));
    m.def(
        "centralizer",
        [](py::handle mod) {
            auto rep = centralizer(parse_modulus_json(py_to_json(mod)));
            py::dict d = decision_to_py(rep.base);
            d["case"] = rep.case_tag;
            d["embeddable"] = rep.embeddable;
            d["max_order"] = rep.max_order;
            d["divisors"] = rep.divisor_lattice;
            d["schwarz_reflection"] = rep.schwarz_reflection;
            d["conditions"] = rep.conditions_checked;
            return d;
        },
        py::arg("modulus"));
    m.def(
        "moduli_equivalent",
        [](py::handle m1, py::handle m2) {
            return decision_to_py(
                moduli_equivalent(parse_modulus_json(py_to_json(m1)),
                                  parse_modulus_json(py_to_json(m2))));
        },
        py::arg("modulus1"), py::arg("modulus2"));
    m.def(
        "modulus_of_inverse",
        [](py::handle mod) {
            auto m_ = parse_modulus_json(py_to_json(mod));
            auto full = m_.kind == ModulusKind::holomorphic ? m_ : to_full_table(m_);
            return json_to_py(modulus_to_json(modulus_of_inverse(full)));
        },
        py::arg("modulus"));
    m.def(
        "conjugacy_check",
        [](const TruncatedSeries& f1, const TruncatedSeries& f2) {
            return decision_to_py(conjugacy_check(f1, f2).report);
        },
        py::arg("germ1"), py::arg("germ2"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_command(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));

    py::register_exception<germ_error>(m, "GermError");
}
