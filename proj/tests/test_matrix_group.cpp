#include "doctest.h"

#include <cmath>

#include "xhom/matrix_group.hpp"

using namespace xhom;

namespace {

constexpr double kE = 2.718281828459045;

double family_residual(const FamilySpec& f, std::span<const std::pair<UT2, UT2>> pairs) {
    return check_crossed_hom_group([&](UT2 g) { return eval_family(f, g); }, pairs);
}

}  // namespace

TEST_CASE("group axioms hold on the default grid") {
    const auto els = default_elements();
    for (UT2 g : els) {
        const UT2 gi = group_mul(g, group_inv(g));
        CHECK(std::abs(gi.a - 1) < 1e-12);
        CHECK(std::abs(gi.b) < 1e-12);
        CHECK(group_mul(group_identity(), g) == g);
    }
    for (UT2 g : els)
        for (UT2 h : els) {
            const UT2 gh = group_mul(g, h);
            CHECK(std::abs(gh.a - g.a * h.a) < 1e-12);
            // associativity spot check against a third fixed element
            const UT2 k = make_ut2(2.0, -1.0);
            const UT2 lhs = group_mul(group_mul(g, h), k);
            const UT2 rhs = group_mul(g, group_mul(h, k));
            CHECK(std::abs(lhs.a - rhs.a) < 1e-12);
            CHECK(std::abs(lhs.b - rhs.b) < 1e-11);
        }
}

TEST_CASE("make_ut2 validates its arguments") {
    CHECK_THROWS_AS(make_ut2(0.0, 1.0), InputError);
    CHECK_THROWS_AS(make_ut2(-2.0, 0.0), InputError);
    CHECK_THROWS_AS(make_ut2(1.0, std::nan("")), InputError);
    CHECK(make_ut2(0.5, -3.0) == UT2{0.5, -3.0});
}

TEST_CASE("Ad matches direct 2x2 conjugation") {
    for (UT2 g : default_elements())
        for (HVec u : {HVec{1, 0}, HVec{0, 1}, HVec{-2, 3}}) {
            // conjugate X = [[x, y], [0, -x]] by [[a, b], [0, 1/a]] directly:
            // entry (0,1) of g X g^{-1} works out to a^2 y - 2ab x
            const double a = g.a, b = g.b, x = u.x, y = u.y;
            const HVec expect{x, a * a * y - 2 * a * b * x};
            CHECK(hvec_max_diff(adjoint(g, u), expect) < 1e-11);
            CHECK(hvec_max_diff(ad_matrix(g).apply(u), expect) < 1e-11);
        }
    const Mat2 A = ad_matrix({2.0, 3.0});
    CHECK(A.m00 == 1);
    CHECK(A.m01 == 0);
    CHECK(A.m10 == doctest::Approx(-12).epsilon(1e-14));
    CHECK(A.m11 == doctest::Approx(4).epsilon(1e-14));
    CHECK(A.det() == doctest::Approx(4).epsilon(1e-14));
}

TEST_CASE("Ad is a homomorphism into GL(h)") {
    for (const auto& [g, h] : default_pairs()) {
        const Mat2 prod = ad_matrix(g) * ad_matrix(h);
        CHECK(mat2_max_diff(ad_matrix(group_mul(g, h)), prod) < 1e-9);
    }
}

TEST_CASE("exp_curve is a one-parameter subgroup, continuous at small tx") {
    const HVec u{0.7, -1.3};
    for (double t : {-0.5, 0.3, 1.1}) {
        const UT2 sum = exp_curve(u, t + 0.25);
        const UT2 split = group_mul(exp_curve(u, t), exp_curve(u, 0.25));
        CHECK(std::abs(sum.a - split.a) < 1e-12);
        CHECK(std::abs(sum.b - split.b) < 1e-12);
    }
    // the series branch joins the sinh form smoothly: b(t)/t is continuous
    // across the |tx| = 1e-8 crossover
    const HVec v{1.0, 2.0};
    const double eps = 1e-8;
    const UT2 lo = exp_curve(v, eps * 0.99);
    const UT2 hi = exp_curve(v, eps * 1.01);
    CHECK(std::abs(lo.b / (eps * 0.99) - hi.b / (eps * 1.01)) < 1e-12);
    CHECK(exp_curve(v, 0.0) == group_identity());
    // the linear variant agrees at first order but diverges at third
    const UT2 ex = exp_curve(v, 0.5, CurveKind::Exact);
    const UT2 lin = exp_curve(v, 0.5, CurveKind::ProofLinear);
    CHECK(ex.a == lin.a);
    CHECK(ex.b == doctest::Approx(2 * std::sinh(0.5)).epsilon(1e-14));
    CHECK(lin.b == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("family values at hand-computed points") {
    const UT2 g1 = eval_family(Gamma1{2.0}, {kE, 0.0});
    CHECK(g1.a == doctest::Approx(1 / kE).epsilon(1e-14));
    CHECK(g1.b == doctest::Approx(2 * kE).epsilon(1e-13));  // q a ln a
    CHECK(eval_family(Gamma1{0.0}, {kE, 5.0}).b == doctest::Approx(-5.0).epsilon(1e-14));
    const UT2 g2 = eval_family(Gamma2{0.5, 1.0}, {2.0, 0.0});
    CHECK(g2.a == 1);
    CHECK(g2.b == doctest::Approx(1.5).epsilon(1e-14));  // lambda/2 (a^2 - 1)
    const UT2 g2b = eval_family(Gamma2{0.5, 0.0}, {2.0, 3.0});
    CHECK(g2b.b == doctest::Approx(3.0).epsilon(1e-14));  // mu a b
    const UT2 g3 = eval_family(Gamma3(1.0, 0.0), {2.0, 1.0});
    CHECK(g3.a == doctest::Approx(2.0).epsilon(1e-14));   // a^p
    CHECK(g3.b == doctest::Approx(-4.0).epsilon(1e-14));  // -b a^{p+1}
}

TEST_CASE("Gamma3 rejects the excluded powers") {
    CHECK_THROWS_AS(Gamma3(0.0, 1.0), InputError);
    CHECK_THROWS_AS(Gamma3(-1.0, 1.0), InputError);
    CHECK_THROWS_AS(Gamma3(std::nan(""), 1.0), InputError);
    CHECK_NOTHROW(Gamma3(-0.5, 1.0));
}

TEST_CASE("family_str echoes parameters") {
    CHECK(family_name(Gamma1{2}) == "g1");
    CHECK(family_str(Gamma1{2}) == "g1(q=2)");
    CHECK(family_str(Gamma2{0.5, -1}).find("mu=0.5") != std::string::npos);
    CHECK(family_str(Gamma3(2, 3)).find("p=2") != std::string::npos);
}

TEST_CASE("the crossed-hom residual separates members from non-members") {
    const auto pairs = default_pairs();
    CHECK(family_residual(Gamma1{1.5}, pairs) < 1e-12);
    CHECK(family_residual(Gamma2{-0.7, 2.0}, pairs) < 1e-12);
    CHECK(family_residual(Gamma3(2.0, -1.0), pairs) < 1e-9);
    // the group inverse map is the q = 0 member of Gamma1
    CHECK(check_crossed_hom_group([](UT2 g) { return group_inv(g); }, pairs) < 1e-12);
    // the identity map is *not* a crossed homomorphism for conjugation
    CHECK(check_crossed_hom_group([](UT2 g) { return g; }, pairs) > 0.1);
}

TEST_CASE("tangent maps agree with the classified matrices for both curve kinds") {
    const FamilySpec specs[] = {Gamma1{-0.8}, Gamma2{1.2, -2.0}, Gamma3(1.5, 0.7)};
    for (const FamilySpec& f : specs) {
        CHECK(mat2_max_diff(tangent_map(f, CurveKind::Exact), classified_tangent(f)) < 1e-6);
        CHECK(mat2_max_diff(tangent_map(f, CurveKind::ProofLinear), classified_tangent(f)) <
              1e-6);
    }
    const Mat2 t = classified_tangent(Gamma2{1.2, -2.0});
    CHECK(t.m00 == 0);
    CHECK(t.m10 == -2.0);
    CHECK(t.m11 == 1.2);
}

TEST_CASE("theta_D is multiplicative and trivial at the identity") {
    const FamilySpec f = Gamma3(2.0, 1.0);
    CHECK(mat2_max_diff(theta_D(f, group_identity()), Mat2{}) < 1e-12);
    for (const auto& [g, h] : default_pairs()) {
        const Mat2 lhs = theta_D(f, group_mul(g, h));
        const Mat2 rhs = theta_D(f, g) * theta_D(f, h);
        // entries reach ~1e8 for p = 2 on composed pairs, so the bound is absolute
        CHECK(mat2_max_diff(lhs, rhs) < 1e-7);
    }
}

TEST_CASE("ad_vec and theta_tangent fixtures") {
    CHECK(ad_vec({1, 0}) == Mat2{0, 0, 0, 2});
    CHECK(ad_vec({0, 1}) == Mat2{0, 0, -2, 0});
    // theta_d(x) = ad_x + ad_{d x} for the tangent matrix of the (p, q) =
    // (3, -2) member: theta_d(e1) = [[0, 0], [-2q, 2(1+p)]], theta_d(e2) = 0
    const Mat2 d{3, 0, -2, -1};
    const Mat2 th1 = theta_tangent(d, {1, 0});
    CHECK(th1.m00 == 0);
    CHECK(th1.m01 == 0);
    CHECK(th1.m10 == doctest::Approx(4).epsilon(1e-14));
    CHECK(th1.m11 == doctest::Approx(8).epsilon(1e-14));
    CHECK(mat2_max_diff(theta_tangent(d, {0, 1}), Mat2{0, 0, 0, 0}) == 0);
}

TEST_CASE("degree-0 group coboundary fixture") {
    const HVec v = group_coboundary0(Gamma1{1.0}, {1, 0}, {kE, 0.0});
    CHECK(std::abs(v.x - 0) < 1e-12);
    CHECK(std::abs(v.y - (-2)) < 1e-9);
}

TEST_CASE("van_est2 is antisymmetric") {
    const FamilySpec f = Gamma2{0.3, 1.1};
    auto c = [&](UT2 g1, UT2 g2) { return group_coboundary1(f, [](UT2 g) { return HVec{g.b, g.a - 1}; }, g1, g2); };
    const HVec ab = van_est2(c, {1, 0}, {0, 1});
    const HVec ba = van_est2(c, {0, 1}, {1, 0});
    CHECK(std::abs(ab.x + ba.x) < 1e-9);
    CHECK(std::abs(ab.y + ba.y) < 1e-9);
    const HVec aa = van_est2(c, {1, 0}, {1, 0});
    CHECK(std::abs(aa.x) < 1e-9);
    CHECK(std::abs(aa.y) < 1e-9);
}

TEST_CASE("grids have the documented shapes and random draws are seeded") {
    CHECK(default_elements().size() == 25);
    CHECK(default_pairs().size() == 100);
    CHECK(dense_elements().size() == 81);
    CHECK(dense_pairs().size() == 200);
    for (UT2 g : dense_elements()) CHECK(g.a > 0);

    const auto r1 = random_elements(10, 42);
    const auto r2 = random_elements(10, 42);
    const auto r3 = random_elements(10, 43);
    REQUIRE(r1.size() == 10);
    CHECK(r1 == r2);
    CHECK(r1 != r3);
    for (UT2 g : r1) {
        CHECK(g.a >= 0.2);
        CHECK(g.a <= 5.0);
        CHECK(std::abs(g.b) <= 5.0);
    }
    CHECK(random_pairs(7, 9).size() == 7);
    CHECK(random_pairs(7, 9) == random_pairs(7, 9));
}

TEST_CASE("richardson_diff nails smooth derivatives") {
    const double d = richardson_diff([](double t) { return std::sin(t); }, 0.3);
    CHECK(std::abs(d - std::cos(0.3)) < 1e-9);
    const double d2 = richardson_diff([](double t) { return t * t * t; }, 2.0);
    CHECK(std::abs(d2 - 12.0) < 1e-8);
}
