// Python surface for the core operations. Structured inputs arrive as JSON
// strings (the same formats the CLI reads from files); family parameters as
// a small dict. Results come back as plain dicts/lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "xhom/ce_cohomology.hpp"
#include "xhom/deformation.hpp"
#include "xhom/report.hpp"
#include "xhom/section4.hpp"

namespace py = pybind11;
using namespace xhom;
using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(e.what());
    }
}

FamilySpec family_from(const std::string& name, const py::dict& params) {
    auto get = [&](const char* k, double dflt) {
        return params.contains(k) ? params[py::str(k)].cast<double>() : dflt;
    };
    for (const auto& item : params) {
        const std::string k = py::cast<std::string>(item.first);
        if (k != "q" && k != "mu" && k != "lambda" && k != "p")
            throw InputError("unknown family parameter: " + k);
    }
    if (name == "g1") return Gamma1{get("q", 0)};
    if (name == "g2") return Gamma2{get("mu", 0), get("lambda", 0)};
    if (name == "g3") return Gamma3(get("p", 1), get("q", 0));
    throw InputError("unknown family: " + name);
}

py::dict family_to_dict(const FamilySpec& f) {
    py::dict out;
    out["family"] = family_name(f);
    if (const auto* g1 = std::get_if<Gamma1>(&f)) {
        out["q"] = g1->q;
    } else if (const auto* g2 = std::get_if<Gamma2>(&f)) {
        out["mu"] = g2->mu;
        out["lambda"] = g2->lambda;
    } else {
        const auto& g3 = std::get<Gamma3>(f);
        out["p"] = g3.p;
        out["q"] = g3.q;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "crossed homomorphisms, twisted cohomology, and deformation rigidity";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<EvalError>(m, "EvalError", PyExc_ValueError);
    py::register_exception<FlowError>(m, "FlowError", PyExc_RuntimeError);

    m.def(
        "verify",
        [](const std::string& algebra_json, const std::string& candidate_json) {
            const LieAlgebraSpec alg = LieAlgebraSpec::from_json(parse_text(algebra_json));
            py::dict out;
            const auto jw = alg.check_jacobi();
            out["jacobi"] = !jw;
            if (jw) {
                out["crossed_hom"] = false;
                out["detail"] = jw->describe();
                return out;
            }
            const ResidualTable table = crossed_residual(candidate_from_json(parse_text(candidate_json)),
                                                         AlgebraAction::adjoint(alg));
            const bool ok = residual_is_zero(table);
            out["crossed_hom"] = ok;
            out["detail"] = ok ? std::string() : residual_report(table);
            return out;
        },
        py::arg("algebra_json"), py::arg("candidate_json"),
        "Exact crossed-homomorphism check against the algebra's adjoint action.");

    m.def(
        "cohomology_table",
        [](const std::string& algebra_json, const std::string& candidate_json) {
            const LieAlgebraSpec alg = LieAlgebraSpec::from_json(parse_text(algebra_json));
            if (const auto jw = alg.check_jacobi())
                throw InputError("algebra fails the Jacobi identity: " + jw->describe());
            const AlgCrossedHom d(AlgebraAction::adjoint(alg),
                                  candidate_from_json(parse_text(candidate_json)));
            std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> rows;
            for (const auto& r : cohomology_dims(d))
                rows.emplace_back(r.k, r.dim_ck, r.rank_dk, r.dim_hk);
            return rows;
        },
        py::arg("algebra_json"), py::arg("candidate_json"),
        "Rows (k, dim C^k, rank d^k, dim H^k) of the twisted cohomology table.");

    m.def(
        "tangent_map",
        [](const std::string& family, const py::dict& params) {
            const Mat2 t = tangent_map(family_from(family, params));
            return std::vector<std::vector<double>>{{t.m00, t.m01}, {t.m10, t.m11}};
        },
        py::arg("family"), py::arg("params") = py::dict(),
        "2x2 tangent matrix of the family member at the identity.");

    m.def(
        "family_residual",
        [](const std::string& family, const py::dict& params) {
            const FamilySpec F = family_from(family, params);
            const auto pairs = default_pairs();
            return check_crossed_hom_group([&](UT2 g) { return eval_family(F, g); }, pairs);
        },
        py::arg("family"), py::arg("params") = py::dict(),
        "Max crossed-homomorphism residual of the member over the default pair grid.");

    m.def(
        "rigidity",
        [](const std::string& path_json) {
            const DeformationPath P = DeformationPath::from_json(parse_text(path_json));
            const RigidityVerdict v = rigidity_verdict(P);
            py::dict out;
            out["verdict"] = kind_name(v.kind);
            out["certificate"] = v.certificate;
            if (v.kind == RigidityVerdict::Kind::Trivial) {
                out["gauge_formula"] = v.gauge_formula;
                out["gauge_residual"] = v.gauge_residual;
                out["verified_interval"] = py::make_tuple(v.verified_lo, v.verified_hi);
            }
            return out;
        },
        py::arg("path_json"), "Triviality verdict for a deformation path.");

    m.def(
        "moser",
        [](const std::string& path_json, double smax, int steps) {
            const DeformationPath P = DeformationPath::from_json(parse_text(path_json));
            const MoserTrace tr = moser_flow(P, smax, steps);
            std::vector<double> ta, tb;
            for (const UT2& t : tr.tau) {
                ta.push_back(t.a);
                tb.push_back(t.b);
            }
            py::dict out;
            out["s"] = tr.s;
            out["tau_a"] = ta;
            out["tau_b"] = tb;
            out["max_gauge_residual"] = tr.max_gauge_residual;
            return out;
        },
        py::arg("path_json"), py::arg("smax") = 0.2, py::arg("steps") = 1000,
        "Integrate the gauge flow; returns the tau trace and its residual.");

    m.def(
        "identify",
        [](const std::string& family, const py::dict& params) -> py::object {
            const FamilySpec F = family_from(family, params);
            const auto res = identify_family([&](UT2 g) { return eval_family(F, g); });
            return res ? py::object(family_to_dict(*res)) : py::none();
        },
        py::arg("family"), py::arg("params") = py::dict(),
        "Round-trip: recover the member's parameters from its values alone.");

    m.def(
        "identify_path",
        [](const std::string& path_json, double s) -> py::object {
            const DeformationPath P = DeformationPath::from_json(parse_text(path_json));
            const auto res = identify_family([&](UT2 g) { return eval_path(P, g, s); });
            return res ? py::object(family_to_dict(*res)) : py::none();
        },
        py::arg("path_json"), py::arg("s") = 0.0,
        "Identify the family member a deformation path passes through at s.");

    m.def(
        "eval_expr",
        [](const std::string& text, double s) {
            const Dual r = eval_dual(parse_expr(text), s);
            return py::make_tuple(r.v, r.d);
        },
        py::arg("text"), py::arg("s"),
        "(value, derivative) of a parameter expression at s.");

    m.def(
        "section4",
        [](bool dense, std::uint64_t seed) {
            Section4Options opts;
            opts.dense = dense;
            opts.seed = seed;
            const RunReport rep = run_section4(opts);
            py::dict out;
            out["all_passed"] = rep.all_passed();
            out["text"] = rep.text();
            out["json"] = rep.to_json().dump(2);
            return out;
        },
        py::arg("dense") = false, py::arg("seed") = 0,
        "Run the full reproduction suite; returns pass flag plus both report forms.");
}
