// xhom: one binary, one subcommand per artifact.
//
//   verify         crossed-homomorphism identity for an algebra candidate
//   cohomology     twisted cohomology table for a validated candidate
//   tangent        tangent map of a group family at the identity
//   verify-family  group-level identity check for a family member
//   vanest-check   differentiation of group cochains vs the algebra side
//   rigidity       triviality verdict for a deformation path
//   moser          gauge construction by integrating the kappa field
//   identify       recover family parameters from a black-box map
//   section4       the full reproduction suite
//
// Exit codes: 0 all checks pass, 1 check failure, 2 input error.

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "xhom/ce_cohomology.hpp"
#include "xhom/deformation.hpp"
#include "xhom/report.hpp"
#include "xhom/section4.hpp"

namespace {

using nlohmann::json;
using namespace xhom;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

/// Prints the text report (stdout unless redirected for CSV modes), writes
/// the JSON report when requested, and turns pass/fail into the exit code.
struct Emit {
    std::string json_path;
    std::ostream* text_out = &std::cout;

    int finish(const RunReport& rep, const json& extra = json::object()) const {
        *text_out << rep.text();
        if (!json_path.empty()) {
            json j = rep.to_json();
            for (const auto& [k, v] : extra.items()) j[k] = v;
            std::ofstream out(json_path);
            if (!out) throw InputError("cannot write file: " + json_path);
            out << j.dump(2) << "\n";
        }
        return rep.all_passed() ? 0 : 1;
    }
};

/// Shared --family/--q/--mu/--lambda/--p block. Parameters that do not
/// belong to the chosen family are rejected rather than ignored.
struct FamilyFlags {
    std::string family;
    double q = 0, mu = 0, lambda = 0, p = 0;
    CLI::Option *oq = nullptr, *omu = nullptr, *olambda = nullptr, *op = nullptr;

    void attach(CLI::App* cmd, bool required) {
        auto* fam = cmd->add_option("--family", family, "family: g1, g2, or g3")
                        ->check(CLI::IsMember({"g1", "g2", "g3"}));
        if (required) fam->required();
        oq = cmd->add_option("--q", q, "parameter q (g1 and g3)");
        omu = cmd->add_option("--mu", mu, "parameter mu (g2)");
        olambda = cmd->add_option("--lambda", lambda, "parameter lambda (g2)");
        op = cmd->add_option("--p", p, "exponent p (g3; not 0 or -1)");
    }

    bool given() const { return !family.empty(); }

    FamilySpec build() const {
        auto reject = [&](const CLI::Option* o, const char* name) {
            if (o->count() > 0)
                throw InputError(std::string(name) + " does not apply to family " + family);
        };
        if (family == "g1") {
            reject(omu, "--mu"), reject(olambda, "--lambda"), reject(op, "--p");
            return Gamma1{q};
        }
        if (family == "g2") {
            reject(oq, "--q"), reject(op, "--p");
            return Gamma2{mu, lambda};
        }
        reject(omu, "--mu"), reject(olambda, "--lambda");
        if (op->count() == 0) throw InputError("--p is required for family g3");
        return Gamma3(p, q);
    }
};

json family_params_json(const FamilySpec& f) {
    if (const auto* g1 = std::get_if<Gamma1>(&f)) return {{"q", g1->q}};
    if (const auto* g2 = std::get_if<Gamma2>(&f)) return {{"mu", g2->mu}, {"lambda", g2->lambda}};
    const auto& g3 = std::get<Gamma3>(f);
    return {{"p", g3.p}, {"q", g3.q}};
}

// ---------------------------------------------------------------------------

int run_verify(const std::string& algebra_path, const std::string& candidate_path,
               const std::string& json_path) {
    RunReport rep("verify");
    const std::string atext = read_file(algebra_path), ctext = read_file(candidate_path);
    rep.ingest("algebra", atext);
    rep.ingest("candidate", ctext);
    const LieAlgebraSpec alg = LieAlgebraSpec::from_json(parse_json_text(atext, algebra_path));
    const RatMatrix d = candidate_from_json(parse_json_text(ctext, candidate_path));
    rep.set_meta("algebra", algebra_path);
    rep.set_meta("candidate", candidate_path);
    rep.set_meta("dim", std::to_string(alg.dim()));

    const auto jw = alg.check_jacobi();
    rep.add_check("jacobi identity (exact)", !jw, kNaN, kNaN, jw ? jw->describe() : "");
    if (!jw) {
        const AlgebraAction ad = AlgebraAction::adjoint(alg);
        const auto aw = ad.check();
        rep.add_check("adjoint action is a representation by derivations", !aw, kNaN, kNaN,
                      aw ? aw->describe() : "");
        const ResidualTable table = crossed_residual(d, ad);
        const bool zero = residual_is_zero(table);
        rep.add_check("crossed-homomorphism identity (exact)", zero, kNaN, kNaN,
                      zero ? "" : residual_report(table));
    }
    return Emit{json_path}.finish(rep);
}

int run_cohomology(const std::string& algebra_path, const std::string& candidate_path,
                   const std::string& json_path) {
    RunReport rep("cohomology");
    const std::string atext = read_file(algebra_path), ctext = read_file(candidate_path);
    rep.ingest("algebra", atext);
    rep.ingest("candidate", ctext);
    const LieAlgebraSpec alg = LieAlgebraSpec::from_json(parse_json_text(atext, algebra_path));
    if (const auto jw = alg.check_jacobi())
        throw InputError("algebra fails the Jacobi identity: " + jw->describe());
    const RatMatrix d = candidate_from_json(parse_json_text(ctext, candidate_path));
    rep.set_meta("algebra", algebra_path);
    rep.set_meta("candidate", candidate_path);

    // Construction validates the crossed-homomorphism identity exactly.
    const AlgCrossedHom dd(AlgebraAction::adjoint(alg), d);
    const TwistedRep trep(dd);
    rep.add_check("twisted complex d o d = 0 (exact)", verify_complex(trep));

    const auto rows = cohomology_dims(trep);
    std::ostringstream table;
    table << "  k" << std::setw(10) << "dim C^k" << std::setw(11) << "rank d^k" << std::setw(10)
          << "dim H^k" << "\n";
    std::string h_dims;
    json jtable = json::array();
    for (const auto& r : rows) {
        table << std::setw(3) << r.k << std::setw(10) << r.dim_ck << std::setw(11) << r.rank_dk
              << std::setw(10) << r.dim_hk << "\n";
        if (!h_dims.empty()) h_dims += ", ";
        h_dims += std::to_string(r.dim_hk);
        jtable.push_back(
            {{"k", r.k}, {"dim_ck", r.dim_ck}, {"rank_dk", r.rank_dk}, {"dim_hk", r.dim_hk}});
    }
    rep.set_meta("h_dims", h_dims);
    std::cout << table.str() << "\n";
    return Emit{json_path}.finish(rep, {{"table", jtable}});
}

int run_tangent(const FamilyFlags& ff, std::optional<double> tol, const std::string& json_path) {
    const FamilySpec F = ff.build();
    RunReport rep("tangent");
    rep.ingest("family", family_str(F));
    rep.set_meta("family", family_str(F));
    if (tol) rep.set_meta("tol_override", num(*tol));

    const Mat2 T = tangent_map(F);
    const Mat2 E = classified_tangent(F);
    rep.add_residual_check("tangent matches classified matrix", mat2_max_diff(T, E),
                           tol.value_or(tol::kTangentMatch), family_str(F));
    std::cout << "tangent map at the identity (columns = images of e1, e2):\n"
              << "  [ " << num(T.m00) << "  " << num(T.m01) << " ]\n"
              << "  [ " << num(T.m10) << "  " << num(T.m11) << " ]\n\n";
    const json extra{{"tangent", {{T.m00, T.m01}, {T.m10, T.m11}}},
                     {"classified", {{E.m00, E.m01}, {E.m10, E.m11}}}};
    return Emit{json_path}.finish(rep, extra);
}

int run_verify_family(const FamilyFlags& ff, bool dense, std::optional<double> tol,
                      const std::string& json_path) {
    const FamilySpec F = ff.build();
    RunReport rep("verify-family");
    rep.ingest("family", family_str(F));
    rep.ingest("grid", dense ? "dense" : "default");
    rep.set_meta("family", family_str(F));
    rep.set_meta("grid", dense ? "dense" : "default");
    if (tol) rep.set_meta("tol_override", num(*tol));

    const auto pairs = dense ? dense_pairs() : default_pairs();
    const double r =
        check_crossed_hom_group([&](UT2 g) { return eval_family(F, g); }, pairs);
    rep.add_residual_check("group crossed-homomorphism identity", r,
                           tol.value_or(tol::kGroupResidual),
                           std::to_string(pairs.size()) + " pairs");
    rep.add_residual_check("tangent matches classified matrix",
                           mat2_max_diff(tangent_map(F), classified_tangent(F)),
                           tol.value_or(tol::kTangentMatch));
    return Emit{json_path}.finish(rep);
}

int run_vanest(const FamilyFlags& ff, std::uint64_t seed, std::optional<double> tol,
               const std::string& json_path) {
    const FamilySpec F = ff.build();
    RunReport rep("vanest-check");
    rep.ingest("family", family_str(F));
    rep.ingest("seed", std::to_string(seed));
    rep.set_meta("family", family_str(F));
    rep.set_meta("seed", std::to_string(seed));
    if (tol) rep.set_meta("tol_override", num(*tol));

    const Mat2 d = tangent_map(F);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    double worst = 0, worst_lin = 0;
    for (int i = 0; i < 20; ++i) {
        const HVec w{box(rng), box(rng)};
        auto cochain = [&](UT2 g) { return group_coboundary0(F, w, g); };
        for (const HVec x : {HVec{1, 0}, HVec{0, 1}}) {
            const HVec rhs = theta_tangent(d, x).apply(w);
            worst = std::fmax(worst, hvec_max_diff(van_est1(cochain, x), rhs));
            worst_lin = std::fmax(
                worst_lin,
                hvec_max_diff(van_est1(cochain, x, CurveKind::ProofLinear), rhs));
        }
    }
    rep.add_residual_check("van Est chain map, degree 0 -> 1", worst,
                           tol.value_or(tol::kDerivMatch), "20 random 0-cochains, exp curves");
    rep.add_residual_check("same along first-order linear curves", worst_lin,
                           tol.value_or(tol::kDerivMatch), "curve-kind cross-check");
    return Emit{json_path}.finish(rep);
}

int run_rigidity(const std::string& path_file, std::optional<double> tol,
                 const std::string& json_path) {
    RunReport rep("rigidity");
    const std::string text = read_file(path_file);
    rep.ingest("path", text);
    const DeformationPath P = DeformationPath::from_json(parse_json_text(text, path_file));
    rep.set_meta("path", path_file);
    rep.set_meta("path_spec", P.to_json().dump());
    if (tol) rep.set_meta("tol_override", num(*tol));

    const RigidityVerdict v = rigidity_verdict(P);
    rep.add_verdict("rigidity", kind_name(v.kind), v.certificate);
    json extra{{"verdict", kind_name(v.kind)}, {"certificate", v.certificate}};
    if (v.kind == RigidityVerdict::Kind::Trivial) {
        std::ostringstream note;
        note << v.gauge_formula << " on [" << num(v.verified_lo) << ", " << num(v.verified_hi)
             << "]";
        rep.add_residual_check("gauge residual on verified interval", v.gauge_residual,
                               tol.value_or(tol::kGaugeResidual), note.str());
        extra["gauge_formula"] = v.gauge_formula;
        extra["verified_interval"] = {v.verified_lo, v.verified_hi};
    }
    return Emit{json_path}.finish(rep, extra);
}

int run_moser(const std::string& path_file, double smax, int steps, const std::string& csv_path,
              std::optional<double> tol, const std::string& json_path) {
    RunReport rep("moser");
    const std::string text = read_file(path_file);
    rep.ingest("path", text);
    rep.ingest("smax", num(smax));
    rep.ingest("steps", std::to_string(steps));
    const DeformationPath P = DeformationPath::from_json(parse_json_text(text, path_file));
    rep.set_meta("path", path_file);
    rep.set_meta("path_spec", P.to_json().dump());
    rep.set_meta("smax", num(smax));
    rep.set_meta("steps", std::to_string(steps));
    if (tol) rep.set_meta("tol_override", num(*tol));

    const MoserTrace tr = moser_flow(P, smax, steps);
    std::ostringstream csv;
    csv << "s,tau_a,tau_b\n";
    for (std::size_t i = 0; i < tr.s.size(); ++i)
        csv << num(tr.s[i]) << ',' << num(tr.tau[i].a) << ',' << num(tr.tau[i].b) << "\n";
    Emit em{json_path};
    if (csv_path.empty()) {
        // CSV owns stdout so it stays pipeable; the report moves to stderr.
        std::cout << csv.str();
        em.text_out = &std::cerr;
    } else {
        std::ofstream out(csv_path);
        if (!out) throw InputError("cannot write file: " + csv_path);
        out << csv.str();
    }
    rep.add_residual_check("gauge residual along the flow", tr.max_gauge_residual,
                           tol.value_or(tol::kGaugeResidual),
                           std::to_string(steps) + " RK4 steps on [0, " + num(smax) + "]");
    json extra{{"smax", smax},
               {"steps", steps},
               {"max_gauge_residual", tr.max_gauge_residual}};
    if (!csv_path.empty()) extra["csv"] = csv_path;
    return em.finish(rep, extra);
}

int run_identify(const FamilyFlags& ff, const std::string& path_file, std::optional<double> s_opt,
                 const std::string& json_path) {
    RunReport rep("identify");
    if (ff.given() && !path_file.empty())
        throw InputError("give either --family or --path, not both");
    if (s_opt && path_file.empty()) throw InputError("--s applies to --path mode only");

    std::function<UT2(UT2)> D;
    if (ff.given()) {
        const FamilySpec F = ff.build();
        rep.ingest("family", family_str(F));
        rep.set_meta("probe", family_str(F));
        D = [F](UT2 g) { return eval_family(F, g); };
    } else if (!path_file.empty()) {
        const std::string text = read_file(path_file);
        rep.ingest("path", text);
        const DeformationPath P = DeformationPath::from_json(parse_json_text(text, path_file));
        const double s = s_opt.value_or(0.0);
        rep.ingest("s", num(s));
        rep.set_meta("probe", "path " + path_file + " at s = " + num(s));
        D = [P, s](UT2 g) { return eval_path(P, g, s); };
    } else {
        throw InputError("identify needs --family or --path");
    }

    const std::optional<FamilySpec> res = identify_family(D);
    rep.add_verdict("identified family", res ? family_str(*res) : "none",
                    res ? "re-verified on the element grid"
                        : "no family member matches the probe responses");
    json extra;
    if (res) {
        extra["identified"] = family_name(*res);
        extra["params"] = family_params_json(*res);
    } else {
        extra["identified"] = nullptr;
    }
    return Emit{json_path}.finish(rep, extra);
}

int run_section4_cmd(bool dense, std::uint64_t seed, std::optional<double> tol,
                     const std::string& json_path) {
    Section4Options opts;
    opts.dense = dense;
    opts.seed = seed;
    opts.tol_override = tol;
    const RunReport rep = run_section4(opts);
    return Emit{json_path}.finish(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crossed homomorphisms, twisted cohomology, and deformation rigidity\n"
                 "for the 2d solvable matrix group and its Lie algebra"};
    app.require_subcommand(1);
    int rc = 0;

    struct {
        std::string algebra, candidate, json_path;
    } verify_o, coh_o;
    {
        auto* cmd = app.add_subcommand(
            "verify", "check a candidate matrix against the crossed-homomorphism identity");
        cmd->add_option("--algebra", verify_o.algebra, "algebra JSON file")->required();
        cmd->add_option("--candidate", verify_o.candidate, "candidate JSON file")->required();
        cmd->add_option("--json", verify_o.json_path, "write the JSON report here");
        cmd->callback(
            [&] { rc = run_verify(verify_o.algebra, verify_o.candidate, verify_o.json_path); });
    }
    {
        auto* cmd = app.add_subcommand(
            "cohomology", "twisted cohomology table for a validated candidate");
        cmd->add_option("--algebra", coh_o.algebra, "algebra JSON file")->required();
        cmd->add_option("--candidate", coh_o.candidate, "candidate JSON file")->required();
        cmd->add_option("--json", coh_o.json_path, "write the JSON report here");
        cmd->callback(
            [&] { rc = run_cohomology(coh_o.algebra, coh_o.candidate, coh_o.json_path); });
    }

    struct FamilyCmd {
        FamilyFlags ff;
        std::string grid = "default", json_path;
        double tol_v = 0;
        CLI::Option* otol = nullptr;
        std::uint64_t seed = 0;
        std::optional<double> tol() const {
            return otol->count() ? std::optional<double>(tol_v) : std::nullopt;
        }
    } tangent_o, vfam_o, vanest_o;
    {
        auto* cmd = app.add_subcommand("tangent", "tangent map of a family at the identity");
        tangent_o.ff.attach(cmd, true);
        tangent_o.otol = cmd->add_option("--tol", tangent_o.tol_v, "override the match tolerance");
        cmd->add_option("--json", tangent_o.json_path, "write the JSON report here");
        cmd->callback([&] { rc = run_tangent(tangent_o.ff, tangent_o.tol(), tangent_o.json_path); });
    }
    {
        auto* cmd = app.add_subcommand(
            "verify-family", "group-level crossed-homomorphism check for a family member");
        vfam_o.ff.attach(cmd, true);
        cmd->add_option("--grid", vfam_o.grid, "pair grid: default or dense")
            ->check(CLI::IsMember({"default", "dense"}));
        vfam_o.otol = cmd->add_option("--tol", vfam_o.tol_v, "override the residual tolerance");
        cmd->add_option("--json", vfam_o.json_path, "write the JSON report here");
        cmd->callback([&] {
            rc = run_verify_family(vfam_o.ff, vfam_o.grid == "dense", vfam_o.tol(),
                                   vfam_o.json_path);
        });
    }
    {
        auto* cmd = app.add_subcommand(
            "vanest-check", "compare differentiated group cochains with the algebra side");
        vanest_o.ff.attach(cmd, true);
        cmd->add_option("--seed", vanest_o.seed, "seed for the random 0-cochains");
        vanest_o.otol = cmd->add_option("--tol", vanest_o.tol_v, "override the match tolerance");
        cmd->add_option("--json", vanest_o.json_path, "write the JSON report here");
        cmd->callback([&] {
            rc = run_vanest(vanest_o.ff, vanest_o.seed, vanest_o.tol(), vanest_o.json_path);
        });
    }

    struct {
        std::string path, json_path;
        double tol_v = 0;
        CLI::Option* otol = nullptr;
        std::optional<double> tol() const {
            return otol->count() ? std::optional<double>(tol_v) : std::nullopt;
        }
    } rigidity_o;
    {
        auto* cmd = app.add_subcommand("rigidity", "triviality verdict for a deformation path");
        cmd->add_option("--path", rigidity_o.path, "deformation JSON file")->required();
        rigidity_o.otol =
            cmd->add_option("--tol", rigidity_o.tol_v, "override the gauge residual tolerance");
        cmd->add_option("--json", rigidity_o.json_path, "write the JSON report here");
        cmd->callback(
            [&] { rc = run_rigidity(rigidity_o.path, rigidity_o.tol(), rigidity_o.json_path); });
    }

    struct {
        std::string path, csv, json_path;
        double smax = 0.2, tol_v = 0;
        int steps = 1000;
        CLI::Option* otol = nullptr;
        std::optional<double> tol() const {
            return otol->count() ? std::optional<double>(tol_v) : std::nullopt;
        }
    } moser_o;
    {
        auto* cmd = app.add_subcommand("moser", "integrate the gauge flow and verify it");
        cmd->add_option("--path", moser_o.path, "deformation JSON file")->required();
        cmd->add_option("--smax", moser_o.smax, "flow endpoint (default 0.2)");
        cmd->add_option("--steps", moser_o.steps, "RK4 step count (default 1000)");
        cmd->add_option("--csv", moser_o.csv, "write the tau trace CSV here (default stdout)");
        moser_o.otol =
            cmd->add_option("--tol", moser_o.tol_v, "override the gauge residual tolerance");
        cmd->add_option("--json", moser_o.json_path, "write the JSON report here");
        cmd->callback([&] {
            rc = run_moser(moser_o.path, moser_o.smax, moser_o.steps, moser_o.csv, moser_o.tol(),
                           moser_o.json_path);
        });
    }

    struct {
        FamilyFlags ff;
        std::string path, json_path;
        double s_v = 0;
        CLI::Option* os = nullptr;
    } identify_o;
    {
        auto* cmd = app.add_subcommand(
            "identify", "recover family parameters from a black-box group map");
        identify_o.ff.attach(cmd, false);
        cmd->add_option("--path", identify_o.path, "probe a deformation JSON file instead");
        identify_o.os = cmd->add_option("--s", identify_o.s_v, "path parameter (default 0)");
        cmd->add_option("--json", identify_o.json_path, "write the JSON report here");
        cmd->callback([&] {
            rc = run_identify(identify_o.ff, identify_o.path,
                              identify_o.os->count() ? std::optional<double>(identify_o.s_v)
                                                     : std::nullopt,
                              identify_o.json_path);
        });
    }

    struct {
        std::string grid = "default", json_path;
        double tol_v = 0;
        CLI::Option* otol = nullptr;
        std::uint64_t seed = 0;
    } s4_o;
    {
        auto* cmd = app.add_subcommand("section4", "run the full reproduction suite");
        cmd->add_option("--grid", s4_o.grid, "pair grid: default or dense")
            ->check(CLI::IsMember({"default", "dense"}));
        cmd->add_option("--seed", s4_o.seed, "seed for randomized parameter draws");
        s4_o.otol = cmd->add_option("--tol", s4_o.tol_v, "override every residual tolerance");
        cmd->add_option("--json", s4_o.json_path, "write the JSON report here");
        cmd->callback([&] {
            rc = run_section4_cmd(s4_o.grid == "dense", s4_o.seed,
                                  s4_o.otol->count() ? std::optional<double>(s4_o.tol_v)
                                                     : std::nullopt,
                                  s4_o.json_path);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const EvalError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const FlowError& e) {
        std::cerr << "flow stalled at s = " << num(e.s) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
