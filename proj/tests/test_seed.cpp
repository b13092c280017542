#include <catch2/catch_amalgamated.hpp>

#include "tropcell/seed.hpp"

#include <random>

using namespace tropcell;

namespace {

// Triangulation seed of the pentagon with initial diagonals (13, 14):
// exchangeable b13, b14 followed by the frozen sides b12, b23, b34, b45, b15.
Seed stasheff_seed() {
    Seed s;
    s.index_set = {1, 2, 3, 4, 5, 6, 7};
    s.exchangeable = {1, 2};
    s.matrix = IMat{{0, -1, 1, -1, 1, 0, 0},
                    {1, 0, 0, 0, -1, 1, -1},
                    {-1, 0, 0, 0, 0, 0, 0},
                    {1, 0, 0, 0, 0, 0, 0},
                    {-1, 1, 0, 0, 0, 0, 0},
                    {0, -1, 0, 0, 0, 0, 0},
                    {0, 1, 0, 0, 0, 0, 0}};
    s.skew_symmetrizer = {1, 1, 1, 1, 1, 1, 1};
    s.d = 1;
    return s;
}

// Same quiver with every weight doubled; still a valid skew-symmetrizer.
Seed stasheff_seed_weight2() {
    Seed s = stasheff_seed();
    s.skew_symmetrizer.assign(7, 2);
    s.d = 2;
    return s;
}

// Seed of the double word (-1,-2,-1,-2) in type B2, rows ordered (-2,-1,1,2).
Seed b2_word_seed() {
    Seed s;
    s.index_set = {-2, -1, 1, 2};
    s.exchangeable = {1, 2};
    s.matrix = IMat{{0, 0, 2, -1}, {0, 0, -1, 0}, {-1, 1, 0, 1}, {1, 0, -2, 0}};
    s.skew_symmetrizer = {2, 1, 1, 2};
    s.d = 2;
    return s;
}

// Seed of the double word (-1,-2,-1) in type A2, rows ordered (-2,-1,1).
Seed a2_word_seed() {
    Seed s;
    s.index_set = {-2, -1, 1};
    s.exchangeable = {1};
    s.matrix = IMat{{0, 0, 1}, {0, 0, -1}, {-1, 1, 0}};
    s.skew_symmetrizer = {1, 1, 1};
    s.d = 1;
    return s;
}

// Seed of the double word (-2,-1,-2) in type A2, rows ordered (-2,-1,1).
Seed a2_other_word_seed() {
    Seed s = a2_word_seed();
    s.matrix = IMat{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
    return s;
}

std::vector<QVec> integer_samples(std::size_t count, std::size_t dim, long long lo, long long hi,
                                  std::uint64_t seed_value) {
    std::mt19937_64 rng(seed_value);
    unsigned long long span = static_cast<unsigned long long>(hi - lo + 1);
    std::vector<QVec> samples;
    samples.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        QVec point(dim);
        for (std::size_t i = 0; i < dim; ++i)
            point[i] = Rat(lo + static_cast<long long>(rng() % span));
        samples.push_back(std::move(point));
    }
    return samples;
}

std::vector<PosRational> identity_tuple(std::size_t n) {
    std::vector<PosRational> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back(PosRational::variable(n, i));
    return t;
}

}  // namespace

TEST_CASE("fixture seeds are valid") {
    CHECK_NOTHROW(validate_seed(stasheff_seed()));
    CHECK_NOTHROW(validate_seed(stasheff_seed_weight2()));
    CHECK_NOTHROW(validate_seed(b2_word_seed()));
    CHECK_NOTHROW(validate_seed(a2_word_seed()));
    CHECK_NOTHROW(validate_seed(a2_other_word_seed()));

    Seed broken = b2_word_seed();
    broken.skew_symmetrizer = {1, 1, 1, 1};
    CHECK_THROWS_AS(validate_seed(broken), MathError);
}

TEST_CASE("matrix mutation") {
    Seed s = stasheff_seed();

    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(mutate_matrix(mutate_matrix(s.matrix, k), k) == s.matrix);
        IMat dual_then_mutate = mutate_matrix(-s.matrix.transpose(), k);
        IMat mutate_then_dual = -mutate_matrix(s.matrix, k).transpose();
        CHECK(dual_then_mutate == mutate_then_dual);
    }

    // Mutation in direction 2 flips the signs of row and column 2 everywhere
    // the entries touch index 2.
    IMat m2 = mutate_matrix(s.matrix, 1);
    for (std::size_t j = 0; j < 7; ++j) {
        CHECK(m2(1, j) == -s.matrix(1, j));
        CHECK(m2(j, 1) == -s.matrix(j, 1));
    }

    // Mutation of the B2 word seed preserves the skew-symmetrizer.
    for (int label : {1, 2}) {
        Seed mutated = mutate_seed(b2_word_seed(), label);
        CHECK_NOTHROW(validate_seed(mutated));
    }

    CHECK_THROWS_AS(mutate_seed(stasheff_seed(), 3), NotExchangeable);
    CHECK_THROWS_AS(mutate_seed(b2_word_seed(), -1), NotExchangeable);
}

TEST_CASE("chart mutation exchange relation") {
    Seed s = stasheff_seed();
    // b14 b35 = b13 b45 + b15 b34 on the pentagon: mutation at b14 produces
    // the diagonal b35 as (b13 b45 + b15 b34) / b14.
    auto transition = mutate_chart(s, 2);
    REQUIRE(transition.size() == 7);

    LaurentPoly::Exps e1(7, 0), e2(7, 0);
    e1[0] = 1;  // b13
    e1[5] = 1;  // b45
    e2[6] = 1;  // b15
    e2[4] = 1;  // b34
    LaurentPoly numerator = LaurentPoly::monomial(7, e1, Rat(1)) + LaurentPoly::monomial(7, e2, Rat(1));
    PosRational expected = PosRational::from_poly(numerator) / PosRational::variable(7, 1);
    CHECK(transition[1] == expected);
    for (std::size_t i = 0; i < 7; ++i)
        if (i != 1) CHECK(transition[i] == PosRational::variable(7, i));

    // The reverse transition undoes the exchange symbolically.
    Seed mutated = mutate_seed(s, 2);
    auto reverse = mutate_chart(mutated, 2);
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(reverse[i].subst(transition) == PosRational::variable(7, i));

    CHECK_THROWS_AS(mutate_chart(s, 5), NotExchangeable);
}

TEST_CASE("pentagon of mutations returns the chart with the diagonals swapped") {
    Seed s = stasheff_seed();
    auto [end_seed, total] = path_transition(s, {1, 2, 1, 2, 1});

    CHECK(total[0] == PosRational::variable(7, 1));
    CHECK(total[1] == PosRational::variable(7, 0));
    for (std::size_t i = 2; i < 7; ++i) CHECK(total[i] == PosRational::variable(7, i));

    // The exchange matrix comes back with indices 1 and 2 interchanged.
    std::vector<std::size_t> perm{1, 0, 2, 3, 4, 5, 6};
    IMat swapped(7, 7);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) swapped(i, j) = s.matrix(perm[i], perm[j]);
    CHECK(end_seed.matrix == swapped);
}

TEST_CASE("dual seeds") {
    Seed b2 = b2_word_seed();
    Seed dual = dual_seed(b2);
    CHECK(dual.matrix == -b2.matrix.transpose());
    CHECK(dual.skew_symmetrizer == std::vector<long long>{1, 2, 2, 1});
    CHECK(dual.d == 2);
    CHECK_NOTHROW(validate_seed(dual));
    CHECK(dual_seed(dual) == b2);

    // Duality commutes with mutation.
    for (int label : {1, 2}) {
        CHECK(dual_seed(mutate_seed(b2, label)) == mutate_seed(dual, label));
    }
    Seed st = stasheff_seed();
    for (int label : {1, 2}) {
        CHECK(dual_seed(mutate_seed(st, label)) == mutate_seed(dual_seed(st), label));
    }
}

TEST_CASE("comparison maps on seeds") {
    // Weight-1 positions stay fixed, weight-2 positions are squared.
    auto comps = comparison_on_seed(b2_word_seed());
    REQUIRE(comps.size() == 4);
    CHECK(comps[0] == PosRational::variable(4, 0).pow(2));
    CHECK(comps[1] == PosRational::variable(4, 1));
    CHECK(comps[2] == PosRational::variable(4, 2));
    CHECK(comps[3] == PosRational::variable(4, 3).pow(2));

    // Simply-laced seeds compare along the identity.
    auto trivial = comparison_on_seed(a2_word_seed());
    for (std::size_t i = 0; i < 3; ++i) CHECK(trivial[i] == PosRational::variable(3, i));

    // With a uniform weight d the comparison composed with an exchange sends
    // the mutated coordinate to (prod^d + prod^d) / a_k^d.
    Seed heavy = stasheff_seed_weight2();
    auto step = mutate_chart(heavy, 2);
    auto heavy_comps = comparison_on_seed(mutate_seed(heavy, 2));
    PosRational image = heavy_comps[1].subst(step);
    LaurentPoly::Exps e1(7, 0), e2(7, 0);
    e1[0] = 2;
    e1[5] = 2;
    e2[6] = 2;
    e2[4] = 2;
    LaurentPoly num_sq = (LaurentPoly::monomial(7, e1, Rat(1)) + LaurentPoly::monomial(7, e2, Rat(1)) +
                          LaurentPoly::monomial(7, [] {
                              LaurentPoly::Exps e(7, 0);
                              e[0] = 1;
                              e[5] = 1;
                              e[6] = 1;
                              e[4] = 1;
                              return e;
                          }(), Rat(2)));
    PosRational expected = PosRational::from_poly(num_sq) / PosRational::variable(7, 1).pow(2);
    CHECK(image == expected);
}

TEST_CASE("tropical commuting square") {
    auto st_samples = integer_samples(500, 7, -10, 10, 91u);
    Seed st = stasheff_seed();
    CHECK(verify_commuting_square(st, {}, st_samples));
    CHECK(verify_commuting_square(st, {1}, st_samples));
    CHECK(verify_commuting_square(st, {2}, st_samples));
    CHECK(verify_commuting_square(st, {1, 2, 1, 2, 1}, st_samples));

    Seed heavy = stasheff_seed_weight2();
    CHECK(verify_commuting_square(heavy, {2}, st_samples));
    CHECK(verify_commuting_square(heavy, {1, 2}, st_samples));

    auto b2_samples = integer_samples(500, 4, -10, 10, 92u);
    Seed b2 = b2_word_seed();
    CHECK(verify_commuting_square(b2, {1}, b2_samples));
    CHECK(verify_commuting_square(b2, {2}, b2_samples));
    CHECK(verify_commuting_square(b2, {1, 2}, b2_samples));
    CHECK(verify_commuting_square(b2, {1, 2, 1, 2, 1}, b2_samples));

    auto a2_samples = integer_samples(500, 3, -10, 10, 93u);
    Seed a2 = a2_word_seed();
    CHECK(verify_commuting_square(a2, {1}, a2_samples));
    CHECK(verify_commuting_square(a2, {1, 1, 1}, a2_samples));
}

TEST_CASE("mutation path search") {
    Seed a2 = a2_word_seed();
    auto self_path = find_mutation_path(a2, a2, 3);
    REQUIRE(self_path.has_value());
    CHECK(self_path->directions.empty());

    Seed mutated = mutate_seed(a2, 1);
    auto one_step = find_mutation_path(a2, mutated, 3);
    REQUIRE(one_step.has_value());
    CHECK(one_step->directions == std::vector<int>{1});

    // The seeds of the two reduced words for (w0, e) in A2 are one mutation
    // apart.
    auto across = find_mutation_path(a2_word_seed(), a2_other_word_seed(), 2);
    REQUIRE(across.has_value());
    CHECK(across->directions.size() <= 2);
    auto [reached, tuple] = path_transition(a2_word_seed(), across->directions);
    (void)tuple;
    CHECK(reached.matrix == a2_other_word_seed().matrix);

    // Unreachable within depth: the B2 seed never mutates into a matrix with
    // an off-diagonal 7.
    Seed unreachable = b2_word_seed();
    unreachable.matrix(0, 2) = 7;
    unreachable.matrix(2, 0) = -7;
    CHECK_FALSE(find_mutation_path(b2_word_seed(), unreachable, 4).has_value());

    Seed other_index = b2_word_seed();
    other_index.index_set = {-2, -1, 1, 3};
    CHECK_THROWS_AS(find_mutation_path(b2_word_seed(), other_index, 2), MathError);
}

TEST_CASE("decorated comparison maps") {
    DecoratedSeed dec;
    dec.torus_rank = 2;
    dec.seed = b2_word_seed();
    dec.psi_H = to_qmat(IMat{{1, 1}, {1, 2}});

    auto comps = comparison_on_decorated(dec);
    REQUIRE(comps.size() == 6);

    LaurentPoly::Exps h1(6, 0);
    h1[0] = 1;
    h1[1] = 1;
    CHECK(comps[0] == PosRational::from_poly(LaurentPoly::monomial(6, h1, Rat(1))));
    LaurentPoly::Exps h2(6, 0);
    h2[0] = 1;
    h2[1] = 2;
    CHECK(comps[1] == PosRational::from_poly(LaurentPoly::monomial(6, h2, Rat(1))));
    CHECK(comps[2] == PosRational::variable(6, 2).pow(2));
    CHECK(comps[3] == PosRational::variable(6, 3));
    CHECK(comps[4] == PosRational::variable(6, 4));
    CHECK(comps[5] == PosRational::variable(6, 5).pow(2));

    DecoratedSeed bad = dec;
    bad.psi_H = QMat{{Rat(1) / 2, Rat(0)}, {Rat(0), Rat(1)}};
    CHECK_THROWS_AS(comparison_on_decorated(bad), LatticeError);

    // The identity tuple substitutes to itself through the comparison.
    auto id = identity_tuple(6);
    for (std::size_t i = 0; i < comps.size(); ++i) CHECK(comps[i].subst(id) == comps[i]);
}
