#include "doctest.h"

#include <cmath>

#include "xhom/deformation.hpp"

using namespace xhom;
using nlohmann::json;

namespace {

DeformationPath path_json(const char* text) { return DeformationPath::from_json(json::parse(text)); }

}  // namespace

TEST_CASE("from_json parses all three families and defaults eps") {
    const DeformationPath p1 = path_json(R"({"family":"g1","f":"1+s"})");
    CHECK(p1.family == DeformationPath::Family::G1);
    CHECK(p1.eps == 0.5);
    CHECK(print_expr(p1.p1) == "1+s");

    const DeformationPath p2 = path_json(R"({"family":"g2","k":"s","m":"0","eps":0.25})");
    CHECK(p2.family == DeformationPath::Family::G2);
    CHECK(p2.eps == 0.25);

    const DeformationPath p3 = path_json(R"({"family":"g3","g":"2","h":"1+s"})");
    CHECK(p3.family == DeformationPath::Family::G3);

    // round trip through to_json
    const json j = p2.to_json();
    CHECK(j["family"] == "g2");
    CHECK(j["k"] == "s");
    CHECK(j["m"] == "0");
    CHECK(j["eps"] == 0.25);
    const DeformationPath back = DeformationPath::from_json(j);
    CHECK(back.p1 == p2.p1);
    CHECK(back.p2 == p2.p2);
}

TEST_CASE("from_json rejects malformed descriptions") {
    CHECK_THROWS_AS(path_json(R"({"family":"g4","f":"s"})"), InputError);
    CHECK_THROWS_AS(path_json(R"({"f":"s"})"), InputError);
    CHECK_THROWS_AS(path_json(R"({"family":"g1"})"), InputError);            // missing f
    CHECK_THROWS_AS(path_json(R"({"family":"g2","k":"s"})"), InputError);    // missing m
    CHECK_THROWS_AS(path_json(R"({"family":"g1","f":"1+"})"), ParseError);   // bad expression
    CHECK_THROWS_AS(path_json(R"({"family":"g1","f":"s","eps":0})"), InputError);
    CHECK_THROWS_AS(path_json(R"({"family":"g1","f":"s","eps":-1})"), InputError);
}

TEST_CASE("g3 paths must keep g(s) away from the excluded powers") {
    // g(s) = s crosses 0 inside the domain: rejected up front
    CHECK_THROWS_AS(path_json(R"({"family":"g3","g":"s","h":"0"})"), PathError);
    // g(s) = -1 + s crosses -1: rejected
    CHECK_THROWS_AS(path_json(R"({"family":"g3","g":"-1+s","h":"0"})"), PathError);
    // staying clear is fine
    CHECK_NOTHROW(path_json(R"({"family":"g3","g":"2+s","h":"0","eps":0.5})"));
}

TEST_CASE("family_at evaluates the parameter expressions") {
    const DeformationPath P = path_json(R"({"family":"g2","k":"s","m":"2*s"})");
    const FamilySpec f = P.family_at(0.25);
    const auto* g2 = std::get_if<Gamma2>(&f);
    REQUIRE(g2 != nullptr);
    CHECK(g2->mu == doctest::Approx(0.25).epsilon(1e-14));     // mu = k(s)
    CHECK(g2->lambda == doctest::Approx(0.5).epsilon(1e-14));  // lambda = m(s)
    CHECK_THROWS_AS(P.family_at(0.6), PathError);
    CHECK_THROWS_AS(P.family_at(-0.51), PathError);
}

TEST_CASE("eval_path composes family_at with the closed-form family") {
    const DeformationPath P = path_json(R"({"family":"g1","f":"1+s"})");
    for (double s : {-0.3, 0.0, 0.2})
        for (UT2 g : default_elements()) {
            const UT2 via_path = eval_path(P, g, s);
            const UT2 direct = eval_family(P.family_at(s), g);
            CHECK(via_path.a == direct.a);
            CHECK(via_path.b == direct.b);
        }
}

TEST_CASE("closed-form cocycle matches the numeric derivative") {
    const DeformationPath paths[] = {
        path_json(R"({"family":"g1","f":"1+s"})"),
        path_json(R"({"family":"g2","k":"s","m":"1"})"),
        path_json(R"({"family":"g3","g":"2","h":"1+s"})"),
    };
    for (const auto& P : paths)
        for (double s : {-0.2, 0.0, 0.15})
            for (UT2 g : default_elements()) {
                CHECK(hvec_max_diff(dhat_closed(P, g, s), dhat_numeric(P, g, s)) < 1e-5);
            }
}

TEST_CASE("cocycle fixture: the g1 path at a = e") {
    // f(s) = 1 + s at s = 0: dhat(e, 0) = (0, 1)
    const DeformationPath P = path_json(R"({"family":"g1","f":"1+s"})");
    const HVec v = dhat_closed(P, {2.718281828459045, 0.0}, 0.0);
    CHECK(std::abs(v.x) < 1e-12);
    CHECK(v.y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the cocycle identity residual vanishes") {
    const DeformationPath P = path_json(R"({"family":"g2","k":"s","m":"1"})");
    CHECK(cocycle_residual(P, 0.1, default_pairs()) < 1e-6);
}

TEST_CASE("sample_dhat returns one value per grid element") {
    const DeformationPath P = path_json(R"({"family":"g1","f":"2"})");
    const auto grid = default_elements();
    const CocycleSample cs = sample_dhat(P, 0.0, grid);
    CHECK(cs.s == 0.0);
    REQUIRE(cs.values.size() == grid.size());
    // constant path: the cocycle vanishes identically
    for (const HVec& v : cs.values) CHECK(hvec_max_diff(v, {0, 0}) < 1e-12);
}

TEST_CASE("solve_kappa frozen values at s = 0") {
    auto P = path_json(R"({"family":"g1","f":"1+s"})");
    auto k = solve_kappa(P, 0.0);
    REQUIRE(k.has_value());
    CHECK(k->kappa.x == doctest::Approx(-0.5).epsilon(1e-10));  // -f'/(2f)
    CHECK(k->kappa.y == 0.0);
    CHECK_FALSE(k->x_free);
    CHECK(k->y_free);

    P = path_json(R"({"family":"g2","k":"s","m":"0"})");
    k = solve_kappa(P, 0.0);
    REQUIRE(k.has_value());
    CHECK(k->kappa.x == doctest::Approx(-0.5).epsilon(1e-10));  // -k'/(2(k+1))
    CHECK(std::abs(k->kappa.y) < 1e-12);
    CHECK_FALSE(k->x_free);
    CHECK_FALSE(k->y_free);

    // f(0) = 0 with f'(0) != 0: the division is impossible, no kappa
    P = path_json(R"({"family":"g1","f":"s"})");
    CHECK_FALSE(solve_kappa(P, 0.0).has_value());

    // k = -1 pins nothing: kappa_1 free, kappa_2 = m'/2
    P = path_json(R"({"family":"g2","k":"-1","m":"s"})");
    k = solve_kappa(P, 0.0);
    REQUIRE(k.has_value());
    CHECK(k->x_free);
    CHECK(k->kappa.x == 0.0);
    CHECK(k->kappa.y == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("gauge_verify accepts the known gauge and rejects tau(0) != id") {
    const DeformationPath P = path_json(R"({"family":"g1","f":"1+s"})");
    const auto tau = [](double s) { return UT2{std::sqrt(1 + s), 0.0}; };
    CHECK(gauge_verify(P, tau, -0.2, 0.2) < 1e-6);
    const auto off = [](double s) { return UT2{std::sqrt(1 + s), 0.1}; };
    CHECK_THROWS_AS(gauge_verify(P, off, -0.2, 0.2), InputError);
    // a wrong gauge produces a visible residual
    const auto wrong = [](double s) { return UT2{1.0 + s, 0.0}; };
    CHECK(gauge_verify(P, wrong, -0.2, 0.2) > 1e-3);
}

TEST_CASE("rigidity verdicts across the catalog") {
    auto kind_of = [](const char* text) { return rigidity_verdict(path_json(text)).kind; };
    using K = RigidityVerdict::Kind;
    CHECK(kind_of(R"({"family":"g1","f":"1+s"})") == K::Trivial);
    CHECK(kind_of(R"({"family":"g1","f":"s"})") == K::Nontrivial);
    CHECK(kind_of(R"({"family":"g1","f":"2"})") == K::Trivial);  // constant gauge tau = id
    CHECK(kind_of(R"({"family":"g1","f":"0"})") == K::ConstantPath);
    CHECK(kind_of(R"x({"family":"g2","k":"-1+flatbump(s)","m":"0"})x") == K::Indeterminate);
    CHECK(kind_of(R"({"family":"g2","k":"-1+s^3","m":"1"})") == K::Nontrivial);
    CHECK(kind_of(R"({"family":"g2","k":"-1","m":"s"})") == K::Trivial);

    const RigidityVerdict v = rigidity_verdict(path_json(R"({"family":"g2","k":"s","m":"0"})"));
    CHECK(v.kind == K::Trivial);
    CHECK(v.gauge_formula.size() > 0);
    CHECK(v.gauge_residual < 1e-6);
    CHECK(v.verified_lo < 0);
    CHECK(v.verified_hi > 0);
    REQUIRE(v.gauge);
    CHECK(std::abs(v.gauge(0.1).a - std::sqrt(1.1)) < 1e-9);

    const RigidityVerdict n = rigidity_verdict(path_json(R"({"family":"g3","g":"2+s","h":"0"})"));
    CHECK(n.kind == K::Nontrivial);
    CHECK(n.certificate.size() > 0);
}

TEST_CASE("moser_flow reproduces the closed-form gauges") {
    struct Case {
        const char* text;
        UT2 (*tau)(double);
    };
    const Case cases[] = {
        {R"({"family":"g1","f":"1+s"})", [](double s) { return UT2{std::sqrt(1 + s), 0.0}; }},
        {R"({"family":"g2","k":"s","m":"0"})",
         [](double s) { return UT2{std::sqrt(1 + s), 0.0}; }},
        {R"({"family":"g2","k":"-1","m":"s"})", [](double s) { return UT2{1.0, -s / 2}; }},
        {R"({"family":"g3","g":"2","h":"1+s"})", [](double s) { return UT2{1.0, -s / 6}; }},
    };
    for (const Case& c : cases) {
        const MoserTrace tr = moser_flow(path_json(c.text), 0.2, 400);
        REQUIRE(tr.s.size() == tr.tau.size());
        REQUIRE(tr.s.size() == 401);
        CHECK(tr.max_gauge_residual < 1e-6);
        for (std::size_t i = 0; i < tr.s.size(); i += 50) {
            const UT2 expect = c.tau(tr.s[i]);
            CHECK(std::abs(tr.tau[i].a - expect.a) < 1e-7);
            CHECK(std::abs(tr.tau[i].b - expect.b) < 1e-7);
        }
    }
}

TEST_CASE("moser_flow rejects bad arguments and stalls on obstructions") {
    const DeformationPath P = path_json(R"({"family":"g1","f":"1+s"})");
    CHECK_THROWS_AS(moser_flow(P, 0.2, 5), InputError);    // too few steps
    CHECK_THROWS_AS(moser_flow(P, 0.6, 100), InputError);  // outside the domain
    CHECK_THROWS_AS(moser_flow(path_json(R"({"family":"g1","f":"s"})"), 0.2, 100), FlowError);
}

TEST_CASE("identify_family round-trips the closed families") {
    const FamilySpec specs[] = {Gamma1{1.25}, Gamma2{0.7, -1.3}, Gamma3(2.0, 0.5),
                                Gamma3(-2.0, 1.0), Gamma2{0.0, 0.0}};
    for (const FamilySpec& f : specs) {
        const auto found = identify_family([&](UT2 g) { return eval_family(f, g); });
        REQUIRE(found.has_value());
        CHECK(family_name(*found) == family_name(f));
        if (const auto* g3 = std::get_if<Gamma3>(&f)) {
            const auto* r = std::get_if<Gamma3>(&*found);
            REQUIRE(r != nullptr);
            CHECK(r->p == doctest::Approx(g3->p).epsilon(1e-9));
            CHECK(r->q == doctest::Approx(g3->q).epsilon(1e-9));
        }
    }
    // maps that are not crossed homomorphisms are rejected
    CHECK_FALSE(identify_family([](UT2 g) { return g; }).has_value());
    // constant non-identity maps as well
    CHECK_FALSE(identify_family([](UT2) { return UT2{2.0, 0.0}; }).has_value());
}
