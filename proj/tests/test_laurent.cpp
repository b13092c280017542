#include "tropcell/laurent.hpp"
#include "tropcell/posrational.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace tropcell;

namespace {

LaurentPoly var(std::size_t nv, std::size_t i, int e = 1) { return LaurentPoly::variable(nv, i, e); }

}  // namespace

TEST_CASE("binomial square expands exactly") {
    // (x1 + x3)^2 in three variables
    LaurentPoly x1 = var(3, 0), x3 = var(3, 2);
    LaurentPoly sq = (x1 + x3) * (x1 + x3);
    LaurentPoly expect = x1 * x1 + LaurentPoly::constant(3, Rat(2)) * x1 * x3 + x3 * x3;
    CHECK(sq == expect);
    CHECK(sq == (x1 + x3).pow(2));
    CHECK(sq.term_count() == 3);
}

TEST_CASE("arithmetic cancels to zero and drops terms") {
    LaurentPoly x = var(1, 0);
    CHECK((x - x).is_zero());
    LaurentPoly p = x + LaurentPoly::constant(1, Rat(1));
    CHECK((p - x - LaurentPoly::constant(1, Rat(1))).is_zero());
    CHECK_THROWS_AS(var(2, 0) + var(3, 0), VariableContextError);
}

TEST_CASE("negative exponents and evaluation") {
    LaurentPoly t = var(1, 0);
    LaurentPoly tinv = var(1, 0, -1);
    CHECK(t * tinv == LaurentPoly::constant(1, Rat(1)));
    LaurentPoly p = t + tinv;
    CHECK(p.eval({rat(2)}) == rat(5, 2));
    CHECK(p.eval({rat(-1, 3)}) == rat(-10, 3));
    CHECK(rat_pow(rat(2, 3), -2) == rat(9, 4));
    CHECK(rat_pow(rat(5), 0) == rat(1));
}

TEST_CASE("unipotent lower triangular determinant is one") {
    // det [[t^-1, 0], [1, t]] = 1
    std::vector<std::vector<LaurentPoly>> m = {
        {var(1, 0, -1), LaurentPoly::zero(1)},
        {LaurentPoly::constant(1, Rat(1)), var(1, 0)},
    };
    CHECK(laurent_det(m) == LaurentPoly::constant(1, Rat(1)));
}

TEST_CASE("determinant matches cofactor expansion on a 3x3 Laurent matrix") {
    LaurentPoly a = var(2, 0), b = var(2, 1), one = LaurentPoly::constant(2, Rat(1));
    std::vector<std::vector<LaurentPoly>> m = {
        {a, b, one},
        {one, a * b, LaurentPoly::zero(2)},
        {b, one, a},
    };
    // Expansion along the last column: 1*(1 - a*b^2) + a*(a^2*b - b)
    LaurentPoly expect = (one - a * b * b) + a * (a * a * b - b);
    CHECK(laurent_det(m) == expect);

    // Permutation matrix needs the column-parity sign
    std::vector<std::vector<LaurentPoly>> perm = {
        {LaurentPoly::zero(2), one, LaurentPoly::zero(2)},
        {one, LaurentPoly::zero(2), LaurentPoly::zero(2)},
        {LaurentPoly::zero(2), LaurentPoly::zero(2), one},
    };
    CHECK(laurent_det(perm) == -one);
}

TEST_CASE("printer emits deterministic sorted form") {
    LaurentPoly t = var(2, 1);
    LaurentPoly a = var(2, 0);
    LaurentPoly p = a * a * t.shift({0, -2}) + LaurentPoly::constant(2, rat(1, 2)) * t;
    CHECK(p.str({"a", "t"}) == "1/2*t + a^2*t^-1");
    CHECK(LaurentPoly::zero(2).str({"a", "t"}) == "0");
    CHECK((-a).str({"a", "t"}) == "-a");
    CHECK((t - a).str({"a", "t"}) == "t - a");
}

TEST_CASE("positivity normalization certifies signs") {
    LaurentPoly x1 = var(3, 0), x2 = var(3, 1), x3 = var(3, 2);
    auto [s1, p1] = positivity_normalize(x1 + x3);
    CHECK(s1 == +1);
    CHECK(p1.num() == x1 + x3);

    auto [s2, p2] = positivity_normalize(-(x1 * x2));
    CHECK(s2 == -1);
    CHECK(p2.num() == x1 * x2);

    CHECK_THROWS_AS(positivity_normalize(x1 - x3), NotSubtractionFree);
}

TEST_CASE("subtraction-free arithmetic stays positive") {
    // exchange-relation shape: (b13*b45 + b15*b34)/b14 in vars b13,b14,b15,b34,b45
    auto v = [](std::size_t i) { return PosRational::variable(5, i); };
    PosRational ex = (v(0) * v(4) + v(2) * v(3)) / v(1);
    CHECK(ex.eval({rat(1), rat(2), rat(3), rat(4), rat(5)}) == rat(17, 2));
    PosRational same = (v(2) * v(3) + v(0) * v(4)) / v(1);
    CHECK(ex == same);
    CHECK(ex * v(1) == v(0) * v(4) + v(2) * v(3));
    CHECK_THROWS_AS(PosRational(var(1, 0) - LaurentPoly::constant(1, Rat(1)), var(1, 0)),
                    NotSubtractionFree);
}

TEST_CASE("substitution composes rational expressions") {
    // f(u) = u + 1/u; substitute u = x*y
    PosRational f = PosRational::variable(1, 0) + PosRational::variable(1, 0).pow(-1);
    PosRational xy = PosRational::variable(2, 0) * PosRational::variable(2, 1);
    PosRational g = f.subst({xy});
    CHECK(g == xy + xy.pow(-1));
    CHECK(g.eval({rat(2), rat(3)}) == rat(37, 6));

    // identity substitution
    std::vector<PosRational> id = {PosRational::variable(2, 0), PosRational::variable(2, 1)};
    PosRational h = (xy + PosRational::constant(2, Rat(1))) / PosRational::variable(2, 0);
    CHECK(h.subst(id) == h);
}

TEST_CASE("powers of subtraction-free expressions") {
    PosRational x = PosRational::variable(1, 0);
    PosRational p = x + PosRational::constant(1, Rat(1));
    CHECK(p.pow(0) == PosRational::constant(1, Rat(1)));
    CHECK(p.pow(2) == p * p);
    CHECK(p.pow(-1) * p == PosRational::constant(1, Rat(1)));
    CHECK(x.pow(-3).eval({rat(2)}) == rat(1, 8));
}
