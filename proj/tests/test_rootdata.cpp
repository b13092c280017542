#include <catch2/catch_amalgamated.hpp>

#include "tropcell/rootdata.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace tropcell;

namespace {

RootDatum sl2() { return build_datum("A", 1, Isogeny::simply_connected); }
RootDatum sl3() { return build_datum("A", 2, Isogeny::simply_connected); }
RootDatum sl4() { return build_datum("A", 3, Isogeny::simply_connected); }
RootDatum spin5() { return build_datum("B", 2, Isogeny::simply_connected); }
RootDatum so5() { return build_datum("B", 2, Isogeny::adjoint); }
RootDatum sp4() { return build_datum("C", 2, Isogeny::simply_connected); }

std::vector<RootDatum> registry_data() {
    return {sl2(), sl3(), sl4(), spin5(), so5(), sp4(),
            build_datum("C", 2, Isogeny::adjoint)};
}

QVec qv(std::initializer_list<long long> vals) {
    QVec v;
    for (long long x : vals) v.push_back(Rat(x));
    return v;
}

}  // namespace

TEST_CASE("cartan data for the registered types") {
    RootDatum b2 = spin5();
    CHECK(b2.A() == IMat{{2, -1}, {-2, 2}});
    CHECK(b2.cartan.symmetrizer == std::vector<long long>{1, 2});
    CHECK(b2.lcm_d() == 2);

    RootDatum a1 = sl2();
    CHECK(a1.A() == IMat{{2}});
    CHECK(a1.cartan.symmetrizer == std::vector<long long>{1});
    CHECK(a1.char_lattice == IMat::identity(1));
    CHECK(a1.cochar_lattice == IMat{{2}});

    RootDatum a2 = sl3();
    CHECK(a2.cartan.symmetrizer == std::vector<long long>{1, 1});
    CHECK(a2.lcm_d() == 1);

    RootDatum c2 = sp4();
    CHECK(c2.A() == IMat{{2, -2}, {-1, 2}});
    CHECK(c2.cartan.symmetrizer == std::vector<long long>{2, 1});

    for (const RootDatum& dat : registry_data()) {
        std::size_t r = static_cast<std::size_t>(dat.rank());
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                CHECK(dat.A()(i, j) * dat.cartan.symmetrizer[j] ==
                      dat.A()(j, i) * dat.cartan.symmetrizer[i]);
        for (long long di : dat.cartan.symmetrizer) CHECK(dat.lcm_d() % di == 0);
    }
}

TEST_CASE("unsupported types and isogenies are rejected") {
    CHECK_THROWS_AS(build_datum("D", 4, Isogeny::simply_connected), UnsupportedType);
    CHECK_THROWS_AS(build_datum("A", 4, Isogeny::simply_connected), UnsupportedType);
    CHECK_THROWS_AS(build_datum("B", 3, Isogeny::simply_connected), UnsupportedType);
    CHECK_THROWS_AS(build_datum("C", 1, Isogeny::simply_connected), UnsupportedType);

    // Type A adjoint groups have no integral twist map, so construction fails;
    // B2 and C2 adjoint groups are fine.
    CHECK_THROWS_AS(build_datum("A", 1, Isogeny::adjoint), SymmetrizerMismatch);
    CHECK_THROWS_AS(build_datum("A", 2, Isogeny::adjoint), SymmetrizerMismatch);
    CHECK_THROWS_AS(build_datum("A", 3, Isogeny::adjoint), SymmetrizerMismatch);
    CHECK_NOTHROW(build_datum("B", 2, Isogeny::adjoint));
    CHECK_NOTHROW(build_datum("C", 2, Isogeny::adjoint));
}

TEST_CASE("twist map matrices in lattice bases") {
    CHECK(spin5().psi_matrix == to_qmat(IMat{{2, -2}, {-2, 4}}));
    CHECK(so5().psi_matrix == to_qmat(IMat{{1, 1}, {1, 2}}));
    CHECK(sp4().psi_matrix == to_qmat(IMat{{4, -2}, {-2, 2}}));
    CHECK(build_datum("C", 2, Isogeny::adjoint).psi_matrix == to_qmat(IMat{{2, 1}, {1, 1}}));
    CHECK(sl2().psi_matrix == to_qmat(IMat{{2}}));
}

TEST_CASE("psi application and lattice errors") {
    // For the coweight-lattice form of B2 the twist map reads
    // (x1, x2) -> (x1 + x2) alpha1 + (x1 + 2 x2) alpha2.
    RootDatum dat = so5();
    CHECK(psi_apply(dat, qv({1, 0})) == qv({1, 1}));
    CHECK(psi_apply(dat, qv({0, 1})) == qv({1, 2}));
    CHECK(psi_apply(dat, qv({3, 4})) == qv({7, 11}));
    CHECK(psi_apply(dat, qv({0, 0})) == qv({0, 0}));

    // SL2 sends the simple coroot to the simple root, which has
    // omega-coordinate 2.
    CHECK(psi_apply(sl2(), qv({1})) == qv({2}));

    CHECK_THROWS_AS(psi_apply(dat, QVec{Rat(1) / 2, Rat(0)}), LatticeError);

    RootDatum psl2 = langlands_dual(sl2());
    CHECK_FALSE(psl2.psi_integral);
    CHECK_THROWS_AS(psi_apply(psl2, qv({1})), LatticeError);
    CHECK(psi_apply(psl2, qv({2})) == qv({1}));
}

TEST_CASE("langlands duals of the registered data") {
    RootDatum psp4 = langlands_dual(spin5());
    CHECK(psp4.type == "C");
    CHECK(psp4.A() == IMat{{2, -2}, {-1, 2}});
    CHECK(psp4.cartan.symmetrizer == std::vector<long long>{2, 1});
    CHECK(psp4.isogeny == Isogeny::adjoint);

    RootDatum sp4_dual = langlands_dual(so5());
    CHECK(sp4_dual.type == "C");
    CHECK(sp4_dual.isogeny == Isogeny::simply_connected);
    CHECK(sp4_dual.psi_matrix == to_qmat(IMat{{4, -2}, {-2, 2}}));

    RootDatum psl2 = langlands_dual(sl2());
    CHECK(psl2.type == "A");
    CHECK(psl2.isogeny == Isogeny::adjoint);
    CHECK(psl2.char_lattice == IMat{{2}});
    CHECK(psl2.psi_matrix == QMat{{Rat(1) / 2}});

    RootDatum back = langlands_dual(langlands_dual(spin5()));
    CHECK(back.type == "B");
    CHECK(back.A() == spin5().A());
    CHECK(back.cartan.symmetrizer == spin5().cartan.symmetrizer);
    CHECK(back.char_lattice == spin5().char_lattice);
    CHECK(back.cochar_lattice == spin5().cochar_lattice);
    CHECK(back.psi_matrix == spin5().psi_matrix);

    for (const RootDatum& dat : registry_data()) {
        RootDatum dual = langlands_dual(dat);
        QMat round_trip = dual.psi_matrix * dat.psi_matrix;
        QMat expected = QMat::identity(static_cast<std::size_t>(dat.rank())) * rat(dat.lcm_d());
        CHECK(round_trip == expected);
    }
}

TEST_CASE("bilinear forms in omega coordinates") {
    for (const RootDatum& dat : registry_data()) {
        QMat gs = dat.form_hstar();
        QMat gh = dat.form_h();
        int r = dat.rank();
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= r; ++j) {
                QVec ai = to_qvec(dat.simple_root(i));
                QVec aj = to_qvec(dat.simple_root(j));
                Rat value = vec_dot(ai, gs.apply(aj));
                CHECK(value == rat(dat.A()(i - 1, j - 1)) / rat(dat.d(i)));

                QVec ci = to_qvec(dat.simple_coroot(i));
                QVec cj = to_qvec(dat.simple_coroot(j));
                Rat covalue = vec_dot(ci, gh.apply(cj));
                CHECK(covalue == rat(dat.A()(i - 1, j - 1) * dat.d(j)));
            }
        // d_i = 2 / (alpha_i, alpha_i).
        for (int i = 1; i <= r; ++i) {
            QVec ai = to_qvec(dat.simple_root(i));
            CHECK(rat(2) / vec_dot(ai, gs.apply(ai)) == rat(dat.d(i)));
        }
    }
}

TEST_CASE("longest words") {
    CHECK(longest_word(sl2()).letters == std::vector<int>{1});
    CHECK(longest_word(sl3()).letters == std::vector<int>{1, 2, 1});
    CHECK(longest_word(spin5()).letters == std::vector<int>{1, 2, 1, 2});
    CHECK(longest_word(sp4()).letters == std::vector<int>{1, 2, 1, 2});
    CHECK(longest_word(sl4()).letters.size() == 6);

    for (const RootDatum& dat : registry_data()) {
        WeylWord w0 = longest_word(dat);
        CHECK(is_reduced(dat, w0));
        CHECK(weyl_length(dat, w0) == static_cast<long long>(w0.letters.size()));
        QVec rho = to_qvec(dat.rho());
        QVec image = weyl(dat, w0).on_hstar.apply(rho);
        CHECK(image == vec_scale(Rat(-1), rho));
        QVec rho_vee = to_qvec(dat.rho_vee());
        CHECK(weyl(dat, w0).on_h.apply(rho_vee) == vec_scale(Rat(-1), rho_vee));
    }
}

TEST_CASE("reduced words of the longest element") {
    auto words_of = [](const RootDatum& dat) {
        std::vector<std::vector<int>> ws;
        for (const WeylWord& w : reduced_words_of_w0(dat)) ws.push_back(w.letters);
        return ws;
    };

    CHECK(words_of(sl2()) == std::vector<std::vector<int>>{{1}});
    CHECK(words_of(sl3()) == std::vector<std::vector<int>>{{1, 2, 1}, {2, 1, 2}});
    CHECK(words_of(spin5()) == std::vector<std::vector<int>>{{1, 2, 1, 2}, {2, 1, 2, 1}});
    CHECK(words_of(sp4()).size() == 2);
    CHECK(words_of(sl4()).size() == 16);

    for (const RootDatum& dat : registry_data()) {
        auto words = words_of(dat);
        CHECK(std::is_sorted(words.begin(), words.end()));
        WeylWord w0 = longest_word(dat);
        QMat m0 = weyl(dat, w0).on_hstar;
        for (const auto& letters : words) {
            WeylWord w{letters};
            CHECK(is_reduced(dat, w));
            CHECK(weyl(dat, w).on_hstar == m0);
        }
    }
}

TEST_CASE("word reduction and length") {
    RootDatum dat = spin5();
    CHECK_FALSE(is_reduced(dat, WeylWord{{1, 1}}));
    CHECK(weyl_length(dat, WeylWord{{1, 1}}) == 0);
    CHECK(weyl_length(dat, WeylWord{{1, 2, 1, 2, 1}}) == 3);
    CHECK_THROWS_AS(require_reduced(dat, WeylWord{{1, 1}}), NotReduced);
    CHECK_NOTHROW(require_reduced(dat, WeylWord{{1, 2, 1}}));
    CHECK_THROWS_AS(weyl(dat, WeylWord{{3}}), MathError);
}

TEST_CASE("weyl actions preserve the forms and the pairing") {
    std::mt19937_64 rng(20240816ull);
    for (const RootDatum& dat : registry_data()) {
        std::size_t r = static_cast<std::size_t>(dat.rank());
        QMat gs = dat.form_hstar();
        QMat gh = dat.form_h();
        QMat pairing = qmat_inverse(to_qmat(dat.A()));
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<int> letters;
            std::size_t len = rng() % 7;
            for (std::size_t k = 0; k < len; ++k)
                letters.push_back(static_cast<int>(rng() % r) + 1);
            WeylAction act = weyl(dat, WeylWord{letters});
            CHECK(act.on_hstar.transpose() * gs * act.on_hstar == gs);
            CHECK(act.on_h.transpose() * gh * act.on_h == gh);
            CHECK(act.on_h.transpose() * pairing * act.on_hstar == pairing);
        }
    }
}

TEST_CASE("dual index of the longest element") {
    CHECK(dual_index(sl2(), 1) == 1);
    CHECK(dual_index(sl3(), 1) == 2);
    CHECK(dual_index(sl3(), 2) == 1);
    CHECK(dual_index(sl4(), 1) == 3);
    CHECK(dual_index(sl4(), 2) == 2);
    CHECK(dual_index(sl4(), 3) == 1);
    CHECK(dual_index(spin5(), 1) == 1);
    CHECK(dual_index(spin5(), 2) == 2);
    CHECK(dual_index(sp4(), 1) == 1);
}

TEST_CASE("positive roots along the longest word") {
    RootDatum b2 = spin5();
    auto roots = positive_roots(b2);
    REQUIRE(roots.size() == 4);

    std::set<IVec> alpha_coords;
    for (const auto& root : roots) alpha_coords.insert(root.root_alpha);
    CHECK(alpha_coords == std::set<IVec>{{1, 0}, {0, 1}, {1, 1}, {1, 2}});

    // Order along word (1,2,1,2) with d_alpha = d_{i_j}.
    CHECK(roots[0].root_alpha == IVec{1, 0});
    CHECK(roots[1].root_alpha == IVec{1, 1});
    CHECK(roots[2].root_alpha == IVec{1, 2});
    CHECK(roots[3].root_alpha == IVec{0, 1});
    CHECK(roots[0].d_alpha == 1);
    CHECK(roots[1].d_alpha == 2);
    CHECK(roots[2].d_alpha == 1);
    CHECK(roots[3].d_alpha == 2);
    long long product = 1;
    for (const auto& root : roots) product *= root.d_alpha;
    CHECK(product == 4);

    // Coroots of the non-simple roots.
    CHECK(roots[1].coroot_alphavee == IVec{2, 1});
    CHECK(roots[2].coroot_alphavee == IVec{1, 1});

    auto a1_roots = positive_roots(sl2());
    REQUIRE(a1_roots.size() == 1);
    CHECK(a1_roots[0].root_alpha == IVec{1});
    CHECK(a1_roots[0].d_alpha == 1);

    CHECK(positive_roots(sl3()).size() == 3);
    CHECK(positive_roots(sl4()).size() == 6);
    CHECK(positive_roots(sp4()).size() == 4);

    // d_alpha = 2 / (alpha, alpha) for every enumerated root.
    for (const RootDatum& dat : registry_data()) {
        QMat gs = dat.form_hstar();
        for (const auto& root : positive_roots(dat)) {
            QVec omega = to_qvec(root.root_omega);
            CHECK(rat(2) / vec_dot(omega, gs.apply(omega)) == rat(root.d_alpha));
            CHECK(to_qvec(root.root_omega) == to_qmat(dat.A()).apply(to_qvec(root.root_alpha)));
        }
    }
}

TEST_CASE("weyl dimension formula") {
    for (long long n = 0; n <= 5; ++n)
        CHECK(weyl_dim(sl2(), qv({n})) == Rat(n + 1));

    RootDatum c2 = sp4();
    CHECK(weyl_dim(c2, qv({1, 0})) == Rat(4));
    CHECK(weyl_dim(c2, qv({0, 1})) == Rat(5));
    CHECK(weyl_dim(c2, qv({1, 1})) == Rat(16));
    CHECK(weyl_dim(c2, qv({4, 4})) == Rat(625));

    RootDatum b2 = spin5();
    CHECK(weyl_dim(b2, qv({0, 1})) == Rat(4));
    CHECK(weyl_dim(b2, qv({1, 0})) == Rat(5));
    CHECK(weyl_dim(b2, qv({0, 2})) == Rat(10));
    CHECK(weyl_dim(b2, qv({1, 2})) == Rat(35));
    CHECK(weyl_dim(b2, qv({1, 3})) == Rat(64));

    CHECK(weyl_dim(sl3(), qv({1, 0})) == Rat(3));
    CHECK(weyl_dim(sl3(), qv({1, 1})) == Rat(8));
    CHECK(weyl_dim(sl4(), qv({1, 0, 0})) == Rat(4));
    CHECK(weyl_dim(sl4(), qv({0, 1, 0})) == Rat(6));
    CHECK(weyl_dim(sl4(), qv({1, 1, 1})) == Rat(64));

    CHECK(weyl_dim(sl2(), QVec{Rat(1) / 2}) == Rat(3) / 2);
    CHECK_THROWS_AS(weyl_dim(b2, qv({-1, 0})), NotDominant);
}

TEST_CASE("denominator identity") {
    for (const RootDatum& dat : registry_data()) CHECK(denominator_identity_check(dat));
    CHECK(denominator_identity_check(langlands_dual(sl2())));
    CHECK(denominator_identity_check(langlands_dual(sl3())));

    // Hand values for B2: heights 1,2,3,1 and coheights 1,3,2,1 both multiply to 6.
    Int lhs = 1, rhs = 1;
    for (const auto& root : positive_roots(spin5())) {
        Int h = 0, ch = 0;
        for (long long c : root.root_alpha) h += c;
        for (long long c : root.coroot_alphavee) ch += c;
        lhs *= h;
        rhs *= ch;
    }
    CHECK(lhs == 6);
    CHECK(rhs == 6);
}
