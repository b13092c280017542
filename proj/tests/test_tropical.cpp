#include "tropcell/tropical.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace tropcell;

namespace {

TropForm form(std::vector<long long> a, long long b = 0) {
    TropForm f;
    for (long long c : a) f.a.push_back(Rat(c));
    f.b = Rat(b);
    return f;
}

PosRational pvar(std::size_t nv, std::size_t i) { return PosRational::variable(nv, i); }

// The three-component positive rational map used as the running example:
// (x1,x2,x3) -> (x2x3/(x1+x3), x1+x3, x1x2/(x1+x3))
std::vector<PosRational> example_map() {
    PosRational x1 = pvar(3, 0), x2 = pvar(3, 1), x3 = pvar(3, 2);
    return {x2 * x3 / (x1 + x3), x1 + x3, x1 * x2 / (x1 + x3)};
}

std::vector<std::vector<Rat>> integer_samples(std::size_t n, std::size_t count, long long lo,
                                              long long hi, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&]() {
        unsigned long long span = static_cast<unsigned long long>(hi - lo + 1);
        return lo + static_cast<long long>(rng() % span);
    };
    std::vector<std::vector<Rat>> out;
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<Rat> x(n);
        for (auto& v : x) v = Rat(draw());
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace

TEST_CASE("tropicalization of quotients and monomials") {
    PosRational x1 = pvar(3, 0), x2 = pvar(3, 1), x3 = pvar(3, 2);

    TropDiff t = tropicalize(x2 * x3 / (x1 + x3));
    CHECK(t.num == TropPoly(3, {form({0, 1, 1})}));
    CHECK(t.den == TropPoly(3, {form({1, 0, 0}), form({0, 0, 1})}));
    CHECK(t.eval({rat(5), rat(1), rat(2)}) == rat(1));

    TropDiff one = tropicalize(PosRational::constant(3, Rat(1)));
    CHECK(one.eval({rat(3), rat(-1), rat(7)}) == rat(0));

    // single monomial x1^2 x2^-1 -> 2ξ1 - ξ2
    TropDiff mono = tropicalize(pvar(2, 0).pow(2) / pvar(2, 1));
    CHECK(mono.eval({rat(3), rat(4)}) == rat(2));
    CHECK(mono.num == TropPoly(2, {form({2, -1})}));
}

TEST_CASE("tropicalized example map evaluates per the displayed formula") {
    PLMap m = tropicalize_map(example_map());
    CHECK(m.arity() == 3);
    CHECK(m.coarity() == 3);
    // spot values of (ξ2+ξ3-min(ξ1,ξ3), min(ξ1,ξ3), ξ1+ξ2-min(ξ1,ξ3))
    CHECK(m.eval({rat(0), rat(0), rat(1)}) == std::vector<Rat>{rat(1), rat(0), rat(0)});
    CHECK(m.eval({rat(2), rat(5), rat(1)}) == std::vector<Rat>{rat(5), rat(1), rat(6)});
    CHECK(m.eval({rat(0), rat(0), rat(0)}) == std::vector<Rat>{rat(0), rat(0), rat(0)});
    CHECK(pl_eval(m, {rat(-3), rat(2), rat(4)}) == std::vector<Rat>{rat(9), rat(-3), rat(2)});
}

TEST_CASE("identity map and pl_equal_on") {
    PLMap id = PLMap::identity(2);
    CHECK(id.eval({rat(3), rat(-7)}) == std::vector<Rat>{rat(3), rat(-7)});
    auto samples = integer_samples(2, 50, -10, 10, 42);
    CHECK(pl_equal_on(id, id, samples));
    PLMap m = tropicalize_map({pvar(2, 0), pvar(2, 1)});
    CHECK(pl_equal_on(id, m, samples));
    CHECK(id.equal_exact(m));
}

TEST_CASE("canonicalization drops dominated forms only") {
    // duplicate forms collapse on construction
    TropPoly dup(1, {form({1}), form({1})});
    CHECK(dup.forms().size() == 1);

    // min(2ξ1, ξ1+ξ3, 2ξ3): the mixed form is dominated
    TropPoly sq(3, {form({2, 0, 0}), form({1, 0, 1}), form({0, 0, 2})});
    TropPoly canon = trop_canonicalize(sq);
    CHECK(canon == TropPoly(3, {form({2, 0, 0}), form({0, 0, 2})}));
    CHECK(trop_equal(sq, canon));

    // min(2ξ1, ξ1) is already minimal: the forms cross at 0
    TropPoly cross(1, {form({2}), form({1})});
    CHECK(trop_canonicalize(cross) == cross);

    // canonicalization agrees with the square of the binomial
    PosRational x1 = pvar(3, 0), x3 = pvar(3, 2);
    TropDiff sq2 = tropicalize((x1 + x3) * (x1 + x3));
    CHECK(trop_canonicalize(sq2.num) == canon);
}

TEST_CASE("canonicalization preserves values on random points") {
    PosRational x1 = pvar(3, 0), x2 = pvar(3, 1), x3 = pvar(3, 2);
    PosRational f = (x1 + x3).pow(3) * (x2 + x1 * x3) + x2.pow(2);
    TropPoly t = tropicalize(PosRational(f.num(), LaurentPoly::constant(3, Rat(1)))).num;
    TropPoly canon = trop_canonicalize(t);
    CHECK(canon.forms().size() < t.forms().size());
    for (const auto& x : integer_samples(3, 1000, -20, 20, 7)) {
        CHECK(t.eval(x) == canon.eval(x));
    }
}

TEST_CASE("tropicalization is monoidal") {
    PosRational x1 = pvar(2, 0), x2 = pvar(2, 1);
    PosRational f = x1 + x2 * x2;
    PosRational g = x1 * x2 + PosRational::constant(2, Rat(3));

    TropDiff prod = tropicalize(f * g);
    TropDiff sum_of_trops{tropicalize(f).num.tadd(tropicalize(g).num), TropPoly::zero_form(2)};
    CHECK(prod.equal_exact(sum_of_trops));

    TropDiff add = tropicalize(f + g);
    TropDiff min_of_trops{tropicalize(f).num.tmin(tropicalize(g).num), TropPoly::zero_form(2)};
    CHECK(add.equal_exact(min_of_trops));

    for (const auto& x : integer_samples(2, 200, -15, 15, 11)) {
        CHECK(prod.eval(x) == tropicalize(f).eval(x) + tropicalize(g).eval(x));
        CHECK(add.eval(x) == std::min(tropicalize(f).eval(x), tropicalize(g).eval(x)));
    }
}

TEST_CASE("tropicalization respects composition on samples") {
    auto phi = example_map();
    // compose phi with itself symbolically, then compare tropicalizations
    std::vector<PosRational> phi2;
    for (const auto& comp : phi) phi2.push_back(comp.subst(phi));
    PLMap direct = tropicalize_map(phi2);
    PLMap outer = tropicalize_map(phi);
    for (const auto& x : integer_samples(3, 1000, -20, 20, 13)) {
        CHECK(direct.eval(x) == outer.eval(outer.eval(x)));
    }
}

TEST_CASE("exact piecewise-linear equality via chamber certificates") {
    // min(ξ1, ξ2) + max-free rewrite: ξ1 + ξ2 - min(ξ1, ξ2) = max(ξ1, ξ2)
    // encoded two ways as differences
    TropDiff lhs{TropPoly(2, {form({1, 1})}), TropPoly(2, {form({1, 0}), form({0, 1})})};
    TropDiff rhs{TropPoly(2, {form({1, 1})}), TropPoly(2, {form({0, 1}), form({1, 0})})};
    CHECK(lhs.equal_exact(rhs));

    TropDiff other{TropPoly(2, {form({1, 0})}), TropPoly::zero_form(2)};
    CHECK_FALSE(lhs.equal_exact(other));

    // trop_leq distinguishes one-sided domination
    TropPoly a(1, {form({1}), form({2})});
    TropPoly b(1, {form({1})});
    CHECK(trop_leq(a, b));
    CHECK_FALSE(trop_leq(b, a));
}

TEST_CASE("tropical printer output") {
    TropPoly t(2, {form({1, 0}), form({0, 1}, -2)});
    CHECK(trop_poly_str(t, {"u", "v"}) == "min(v - 2, u)");
    TropDiff d{TropPoly(2, {form({1, 1})}), t};
    CHECK(trop_diff_str(d, {"u", "v"}) == "u + v - min(v - 2, u)");
    CHECK(trop_form_str(form({-1, 2}, 1), {"u", "v"}) == "-u + 2*v + 1");
    CHECK(trop_form_str(form({0, 0}), {"u", "v"}) == "0");
}
