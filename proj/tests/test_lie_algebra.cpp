#include "doctest.h"

#include <nlohmann/json.hpp>

#include "xhom/lie_algebra.hpp"

using namespace xhom;
using nlohmann::json;

TEST_CASE("solvable2d bracket and adjoint matrices") {
    const LieAlgebraSpec a = LieAlgebraSpec::solvable2d();
    CHECK(a.dim() == 2);
    CHECK(a.bracket({Rat(1), Rat(0)}, {Rat(0), Rat(1)}) == RatVec{Rat(0), Rat(2)});
    CHECK(a.bracket({Rat(0), Rat(1)}, {Rat(1), Rat(0)}) == RatVec{Rat(0), Rat(-2)});
    CHECK_FALSE(a.check_jacobi().has_value());
    CHECK(a.is_solvable2d_presentation());

    const AlgebraAction ad = AlgebraAction::adjoint(a);
    CHECK(ad.matrix(0) == RatMatrix({{"0", "0"}, {"0", "2"}}));
    CHECK(ad.matrix(1) == RatMatrix({{"0", "0"}, {"-2", "0"}}));
    CHECK_FALSE(ad.check().has_value());
}

TEST_CASE("abelian algebras satisfy everything trivially") {
    const LieAlgebraSpec a = LieAlgebraSpec::abelian(4);
    CHECK_FALSE(a.check_jacobi().has_value());
    CHECK(a.bracket({Rat(1), Rat(2), Rat(3), Rat(4)}, {Rat(4), Rat(3), Rat(2), Rat(1)}) ==
          RatVec(4));
    CHECK_FALSE(a.is_solvable2d_presentation());
    CHECK_FALSE(AlgebraAction::adjoint(a).check().has_value());
}

TEST_CASE("constructor enforces antisymmetry of the structure tensor") {
    // c(0,0,0) = 1 violates antisymmetry on the diagonal
    std::vector<Rat> c(8);
    c[0] = 1;
    CHECK_THROWS_AS(LieAlgebraSpec(2, c), InputError);
    // c(0,1,0) = 1 without c(1,0,0) = -1
    std::vector<Rat> c2(8);
    c2[(0 * 2 + 1) * 2 + 0] = 1;
    CHECK_THROWS_AS(LieAlgebraSpec(2, c2), InputError);
    // tensor of the wrong size
    CHECK_THROWS_AS(LieAlgebraSpec(2, std::vector<Rat>(7)), InputError);
}

TEST_CASE("from_json fills antisymmetric completions and validates") {
    const json j = {{"dim", 2}, {"brackets", {{{"i", 1}, {"j", 2}, {"result", {{"0"}, {"2"}}}}}}};
    const LieAlgebraSpec a = LieAlgebraSpec::from_json(j);
    CHECK(a == LieAlgebraSpec::solvable2d());
    CHECK(a.c(1, 0, 1) == Rat(-2));  // filled by antisymmetry

    SUBCASE("bare strings work as coordinates") {
        const json flat = {{"dim", 2},
                           {"brackets", {{{"i", 1}, {"j", 2}, {"result", {"0", "2"}}}}}};
        CHECK(LieAlgebraSpec::from_json(flat) == a);
    }
    SUBCASE("round-trip through to_json") {
        CHECK(LieAlgebraSpec::from_json(a.to_json()) == a);
    }
}

TEST_CASE("from_json rejects bad input") {
    auto make = [](int i, int jdx) {
        return json{{"dim", 2}, {"brackets", {{{"i", i}, {"j", jdx}, {"result", {"0", "1"}}}}}};
    };
    CHECK_THROWS_AS(LieAlgebraSpec::from_json(make(0, 1)), InputError);   // 1-based
    CHECK_THROWS_AS(LieAlgebraSpec::from_json(make(1, 3)), InputError);   // out of range
    CHECK_THROWS_AS(LieAlgebraSpec::from_json(make(1, 1)), InputError);   // diagonal nonzero
    CHECK_THROWS_AS(LieAlgebraSpec::from_json(json{{"dim", 0}}), InputError);
    CHECK_THROWS_AS(LieAlgebraSpec::from_json(json{{"dim", 17}}), InputError);

    // conflicting duplicate entries for the same pair
    const json dup = {{"dim", 2},
                      {"brackets",
                       {{{"i", 1}, {"j", 2}, {"result", {"0", "2"}}},
                        {{"i", 2}, {"j", 1}, {"result", {"0", "2"}}}}}};
    CHECK_THROWS_AS(LieAlgebraSpec::from_json(dup), InputError);
}

TEST_CASE("jacobi failure reports the first offending triple") {
    // [e1,e2]=e2, [e1,e3]=e3, [e2,e3]=e1: the cyclic sum on (e1,e2,e3) is 2*e1
    const json j = {{"dim", 3},
                    {"brackets",
                     {{{"i", 1}, {"j", 2}, {"result", {"0", "1", "0"}}},
                      {{"i", 1}, {"j", 3}, {"result", {"0", "0", "1"}}},
                      {{"i", 2}, {"j", 3}, {"result", {"1", "0", "0"}}}}}};
    const LieAlgebraSpec a = LieAlgebraSpec::from_json(j);
    const auto w = a.check_jacobi();
    REQUIRE(w.has_value());
    CHECK(w->i == 0);
    CHECK(w->j == 1);
    CHECK(w->k == 2);
    // cyclic sum recomputed by hand: [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2]
    RatVec sum(3);
    auto basis = [](std::size_t idx) {
        RatVec v(3);
        v[idx] = 1;
        return v;
    };
    const RatVec t1 = a.bracket(a.bracket(basis(0), basis(1)), basis(2));
    const RatVec t2 = a.bracket(a.bracket(basis(1), basis(2)), basis(0));
    const RatVec t3 = a.bracket(a.bracket(basis(2), basis(0)), basis(1));
    for (std::size_t k = 0; k < 3; ++k) sum[k] = t1[k] + t2[k] + t3[k];
    CHECK(w->residual == sum);
    CHECK_FALSE(vec_is_zero(sum));
    CHECK(w->describe().find("e1") != std::string::npos);
}

TEST_CASE("action check distinguishes derivation and homomorphism failures") {
    const LieAlgebraSpec a = LieAlgebraSpec::solvable2d();

    SUBCASE("a non-derivation matrix is flagged") {
        // [[0,1],[0,0]] does not satisfy Leibniz for [e1,e2] = 2e2
        const AlgebraAction bad(a, a, {RatMatrix({{"0", "1"}, {"0", "0"}}), RatMatrix(2, 2)});
        const auto w = bad.check();
        REQUIRE(w.has_value());
        CHECK(w->kind == AlgebraAction::Witness::Kind::Derivation);
    }
    SUBCASE("derivations that ignore the bracket are flagged") {
        // Both images are derivations (multiples of ad_e1), but
        // theta[e1,e2] = 2 theta(e2) fails.
        const RatMatrix d1({{"0", "0"}, {"0", "2"}});
        const AlgebraAction bad(a, a, {d1, d1});
        const auto w = bad.check();
        REQUIRE(w.has_value());
        CHECK(w->kind == AlgebraAction::Witness::Kind::Homomorphism);
    }
    SUBCASE("the zero action always passes") {
        CHECK_FALSE(AlgebraAction::zero(a, a).check().has_value());
    }
    SUBCASE("dimension mismatches are construction errors") {
        CHECK_THROWS_AS(AlgebraAction(a, a, {RatMatrix(2, 2)}), InputError);
        CHECK_THROWS_AS(AlgebraAction(a, a, {RatMatrix(3, 2), RatMatrix(3, 2)}), InputError);
    }
}

TEST_CASE("AlgebraAction::of is linear in the domain vector") {
    const LieAlgebraSpec a = LieAlgebraSpec::solvable2d();
    const AlgebraAction ad = AlgebraAction::adjoint(a);
    const RatMatrix lhs = ad.of({Rat(3), Rat(-1, 2)});
    const RatMatrix rhs = ad.matrix(0).scaled(Rat(3)) + ad.matrix(1).scaled(Rat(-1, 2));
    CHECK(lhs == rhs);
}
