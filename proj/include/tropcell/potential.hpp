#pragma once

// Decoration of a factorization chart by the potential of its cell: exact
// potential terms assembled from generalized minors, the polyhedral cone cut
// out by the tropicalized potential, crystal operators on the integer points
// of that cone, and the piecewise-linear comparison onto the dual datum.

#include "tropcell/groups.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

namespace tropcell {

struct NotInCone : MathError {
    using MathError::MathError;
};

// Re-indexes a polynomial into a wider variable context, shifting every
// variable up by the offset.
inline LaurentPoly laurent_pad(const LaurentPoly& p, std::size_t nvars, std::size_t offset) {
    if (offset + p.nvars() > nvars) throw VariableContextError("pad target smaller than the source");
    LaurentPoly out(nvars);
    for (const auto& [e, c] : p.terms()) {
        LaurentPoly::Exps w(nvars, 0);
        for (std::size_t i = 0; i < e.size(); ++i) w[offset + i] = e[i];
        out = out + LaurentPoly::monomial(nvars, w, c);
    }
    return out;
}

namespace detail {

// Recovers a reduced word from the weight-side action matrix by stripping
// descents off the right end.
inline WeylWord reduced_word_from_hstar(const RootDatum& dat, QMat m) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    QMat a_inv = qmat_inverse(to_qmat(dat.A()));
    QMat id = QMat::identity(r);
    std::vector<int> rev;
    while (!(m == id)) {
        bool found = false;
        for (int j = 1; j <= static_cast<int>(r) && !found; ++j) {
            QVec img = m.apply(to_qvec(dat.simple_root(j)));
            QVec in_alpha = a_inv.apply(img);
            bool negative = true;
            for (const Rat& c : in_alpha)
                if (c > 0) {
                    negative = false;
                    break;
                }
            if (!negative) continue;
            rev.push_back(j);
            m = m * simple_reflection_hstar(dat, j);
            found = true;
        }
        if (!found) throw MathError("matrix is not a weyl group element");
    }
    WeylWord w;
    w.letters.assign(rev.rbegin(), rev.rend());
    return w;
}

}  // namespace detail

// Reduced word for the longest element with one reflection chopped off the
// right.
inline WeylWord longest_word_stripped(const RootDatum& dat, int i) {
    QMat m = weyl(dat, longest_word(dat)).on_hstar * simple_reflection_hstar(dat, i);
    return detail::reduced_word_from_hstar(dat, m);
}

// Potential of a chart, kept both as the total polynomial over the full
// chart and as the per-index minor pairs it is assembled from.
struct PotentialData {
    std::size_t rank = 0;
    std::size_t length = 0;
    // Minor pair of each simple index, in word variables only: p from the
    // reflected column, q from the reflected row.
    std::vector<LaurentPoly> p, q;
    // The same pieces over the full chart; the q piece carries the torus
    // monomial of the reflected simple root.
    std::vector<LaurentPoly> term_p, term_q;
    // Sum of all terms, torus variables first.
    LaurentPoly phi;
};

inline PotentialData bk_potential(const GroupModel& model, const DoubleWord& dw) {
    const RootDatum& dat = model.datum;
    std::size_t r = static_cast<std::size_t>(dat.rank());
    std::size_t n = dw.size();
    WeylWord w0 = longest_word(dat);
    WeylWord neg;
    for (int l : dw.letters) {
        if (l > 0) throw MathError("potential needs a word in lowering letters only");
        neg.letters.push_back(-l);
    }
    if (weyl_length(dat, neg) != static_cast<long long>(w0.letters.size()))
        throw MathError("potential needs a word for the longest element");

    SymbolicGroupElement z = chart_element(model, dw, false);
    PotentialData out;
    out.rank = r;
    out.length = n;
    out.phi = LaurentPoly(r + n);
    auto require_positive = [](const LaurentPoly& m) {
        if (m.is_zero()) throw MathError("potential minor vanishes on the chart");
        for (const auto& [e, c] : m.terms())
            if (c <= 0) throw MathError("potential minor with a nonpositive coefficient");
    };
    for (int i = 1; i <= static_cast<int>(r); ++i) {
        WeylWord si;
        si.letters = {i};
        LaurentPoly pi = generalized_minor(model, z, w0, si, static_cast<std::size_t>(i));
        WeylWord u = longest_word_stripped(dat, i);
        LaurentPoly qi = generalized_minor(model, z, u, WeylWord{}, static_cast<std::size_t>(i));
        require_positive(pi);
        require_positive(qi);
        int istar = dual_index(dat, i);
        std::vector<Rat> hexp = torus_char_exponents(dat, to_qvec(dat.simple_root(istar)));
        LaurentPoly::Exps he(r + n, 0);
        for (std::size_t j = 0; j < r; ++j) {
            if (!is_integer(hexp[j]))
                throw LatticeError("reflected root pairs fractionally with the torus");
            he[j] = static_cast<int>(to_ll(rat_num(hexp[j])));
        }
        LaurentPoly tp = laurent_pad(pi, r + n, r);
        LaurentPoly tq = LaurentPoly::monomial(r + n, he, Rat(1)) * laurent_pad(qi, r + n, r);
        out.phi = out.phi + tp + tq;
        out.p.push_back(std::move(pi));
        out.q.push_back(std::move(qi));
        out.term_p.push_back(std::move(tp));
        out.term_q.push_back(std::move(tq));
    }
    return out;
}

// Cone of the tropicalized potential: one nonstrict row per monomial that
// can achieve the minimum, canonicalized and sorted.
inline std::vector<LinIneq> bk_cone(const PotentialData& pot) {
    TropPoly t = trop_canonicalize(tropicalize_poly(pot.phi));
    std::vector<LinIneq> out;
    for (const TropForm& f : t.forms()) {
        LinIneq q;
        q.a = f.a;
        q.b = f.b;
        q.strict = false;
        ineq_canonicalize(q);
        out.push_back(std::move(q));
    }
    std::sort(out.begin(), out.end(),
              [](const LinIneq& x, const LinIneq& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
    return out;
}

inline std::vector<LinIneq> bk_cone(const GroupModel& model, const DoubleWord& dw) {
    return bk_cone(bk_potential(model, dw));
}

inline bool cone_contains(const std::vector<LinIneq>& cone, const QVec& x) {
    for (const LinIneq& q : cone)
        if (!q.satisfied(x)) return false;
    return true;
}

// Mutual entailment of two inequality systems over a common context.
inline bool cone_equal(const std::vector<LinIneq>& a, const std::vector<LinIneq>& b,
                       std::size_t nvars) {
    for (const LinIneq& q : b)
        if (!entails(a, q, nvars)) return false;
    for (const LinIneq& q : a)
        if (!entails(b, q, nvars)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Crystal structure on the integer points of the cone.

struct CrystalPoint {
    IVec h;   // cocharacter coordinates of the torus block
    IVec xi;  // word coordinates

    bool operator==(const CrystalPoint& o) const { return h == o.h && xi == o.xi; }
    bool operator!=(const CrystalPoint& o) const { return !(*this == o); }
    bool operator<(const CrystalPoint& o) const { return h != o.h ? h < o.h : xi < o.xi; }
};

inline QVec crystal_coords(const CrystalPoint& p) {
    QVec x;
    x.reserve(p.h.size() + p.xi.size());
    for (long long v : p.h) x.push_back(Rat(v));
    for (long long v : p.xi) x.push_back(Rat(v));
    return x;
}

// Pairings of a cocharacter, given in cocharacter-basis coordinates, with
// the simple roots.
inline QVec coweight_root_pairings(const RootDatum& dat, const QVec& c) {
    return to_qmat(dat.cochar_lattice.transpose()).apply(c);
}

inline QVec coweight_root_pairings(const RootDatum& dat, const IVec& c) {
    return coweight_root_pairings(dat, to_qvec(c));
}

// Simple coroot written in the cocharacter basis of the datum.
inline IVec coroot_in_cochar_basis(const RootDatum& dat, int i) {
    QVec sol = qmat_solve(to_qmat(dat.cochar_lattice.transpose()), to_qvec(dat.simple_coroot(i)));
    if (!qvec_is_integral(sol)) throw LatticeError("simple coroot outside the cocharacter lattice");
    return to_ivec(sol);
}

// Torus block of a cone point. Throws when the point is not in the cone.
inline IVec hw_trop(const std::vector<LinIneq>& cone, const CrystalPoint& p) {
    if (!cone_contains(cone, crystal_coords(p))) throw NotInCone("point outside the cone");
    return p.h;
}

inline QVec hw_trop(const std::vector<LinIneq>& cone, const QVec& x, std::size_t rank) {
    if (!cone_contains(cone, x)) throw NotInCone("point outside the cone");
    return QVec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(rank));
}

// One crystal operator step at a simple index. Each position carrying the
// letter is scored by its own coordinate plus the Cartan pairing of all
// earlier coordinates against the chosen simple root; lowering bumps the
// first minimizing position, raising drops the last one. This scoring makes
// the two operators mutually inverse wherever both stay inside the cone.
// The result is empty when the step leaves the cone.
inline std::optional<CrystalPoint> crystal_apply(const RootDatum& dat, const DoubleWord& dw,
                                                 const std::vector<LinIneq>& cone,
                                                 const CrystalPoint& pt, int i, bool raising) {
    std::size_t n = dw.size();
    if (pt.xi.size() != n || pt.h.size() != static_cast<std::size_t>(dat.rank()))
        throw VariableContextError("crystal point shape mismatch");
    if (!cone_contains(cone, crystal_coords(pt))) throw NotInCone("point outside the cone");
    long long run = 0;
    bool have = false;
    long long best = 0;
    std::size_t pick = 0;
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t il = static_cast<std::size_t>(std::abs(dw.letters[l]));
        if (static_cast<int>(il) == i) {
            long long val = run + pt.xi[l];
            if (!have || (raising ? val <= best : val < best)) {
                best = val;
                pick = l;
                have = true;
            }
        }
        run += dat.A()(il - 1, static_cast<std::size_t>(i - 1)) * pt.xi[l];
    }
    if (!have) return std::nullopt;
    CrystalPoint out = pt;
    out.xi[pick] += raising ? -1 : 1;
    if (!cone_contains(cone, crystal_coords(out))) return std::nullopt;
    return out;
}

struct CrystalStats {
    IVec hw;  // cocharacter coordinates
    IVec wt;  // cocharacter coordinates
    std::vector<long long> eps, phi;
};

inline CrystalStats crystal_stats(const RootDatum& dat, const DoubleWord& dw,
                                  const std::vector<LinIneq>& cone, const CrystalPoint& pt) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    CrystalStats st;
    st.hw = hw_trop(cone, pt);
    QVec wt = to_qvec(pt.h);
    for (std::size_t l = 0; l < dw.size(); ++l) {
        IVec coroot = coroot_in_cochar_basis(dat, std::abs(dw.letters[l]));
        wt = vec_sub(wt, vec_scale(Rat(pt.xi[l]), to_qvec(coroot)));
    }
    if (!qvec_is_integral(wt)) throw LatticeError("weight left the cocharacter lattice");
    st.wt = to_ivec(wt);
    QVec pair = coweight_root_pairings(dat, wt);
    for (int i = 1; i <= static_cast<int>(r); ++i) {
        long long e = 0;
        CrystalPoint cur = pt;
        while (auto nx = crystal_apply(dat, dw, cone, cur, i, true)) {
            cur = *nx;
            ++e;
            if (e > 1000000) throw MathError("raising chain does not terminate");
        }
        st.eps.push_back(e);
        if (!is_integer(pair[static_cast<std::size_t>(i - 1)]))
            throw LatticeError("weight pairs fractionally with a simple root");
        st.phi.push_back(e + to_ll(rat_num(pair[static_cast<std::size_t>(i - 1)])));
    }
    return st;
}

// Integer points of the cone over a fixed torus block, in ascending
// lexicographic order of the word coordinates.
inline std::vector<CrystalPoint> fiber_enumerate(const RootDatum& dat, const DoubleWord& dw,
                                                 const std::vector<LinIneq>& cone,
                                                 const IVec& lambda_vee) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    std::size_t n = dw.size();
    if (lambda_vee.size() != r) throw VariableContextError("torus block has the wrong size");
    std::vector<LinIneq> sys;
    sys.reserve(cone.size());
    for (const LinIneq& q : cone) {
        LinIneq s;
        s.a.assign(q.a.begin() + static_cast<std::ptrdiff_t>(r), q.a.end());
        s.b = q.b;
        for (std::size_t j = 0; j < r; ++j)
            if (q.a[j] != 0) s.b += q.a[j] * Rat(lambda_vee[j]);
        s.strict = q.strict;
        sys.push_back(std::move(s));
    }
    LatticeEnumerator en(std::move(sys), n);
    std::vector<CrystalPoint> out;
    en.enumerate([&](const std::vector<Int>& p) {
        CrystalPoint cp;
        cp.h = lambda_vee;
        cp.xi.reserve(n);
        for (const Int& v : p) cp.xi.push_back(to_ll(v));
        out.push_back(std::move(cp));
    });
    return out;
}

// ---------------------------------------------------------------------------
// Comparison with the dual datum.

// Piecewise-linear comparison onto the dual chart: the torus block goes
// through the symmetrized pairing matrix and each word coordinate scales by
// the symmetrizer of its letter.
inline PLMap comparison_map(const RootDatum& dat, const DoubleWord& dw) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    std::size_t n = dw.size();
    std::size_t nv = r + n;
    std::vector<TropDiff> comps;
    comps.reserve(nv);
    for (std::size_t j = 0; j < r; ++j) {
        TropForm f;
        f.a.assign(nv, Rat(0));
        for (std::size_t l = 0; l < r; ++l) f.a[l] = dat.psi_matrix(j, l);
        comps.push_back(TropDiff{TropPoly::single(nv, f), TropPoly::zero_form(nv)});
    }
    for (std::size_t k = 0; k < n; ++k) {
        TropForm f;
        f.a.assign(nv, Rat(0));
        f.a[r + k] = Rat(dat.d(std::abs(dw.letters[k])));
        comps.push_back(TropDiff{TropPoly::single(nv, f), TropPoly::zero_form(nv)});
    }
    return PLMap(nv, std::move(comps));
}

inline CrystalPoint comparison_apply(const RootDatum& dat, const DoubleWord& dw,
                                     const CrystalPoint& pt) {
    CrystalPoint out;
    out.h = to_ivec(psi_apply(dat, to_qvec(pt.h)));
    out.xi.reserve(pt.xi.size());
    for (std::size_t k = 0; k < pt.xi.size(); ++k)
        out.xi.push_back(pt.xi[k] * dat.d(std::abs(dw.letters[k])));
    return out;
}

struct ConeComparisonReport {
    unsigned long long samples = 0, inside = 0, integral_checked = 0;
    unsigned long long membership_failures = 0, integrality_failures = 0;

    bool ok() const {
        return samples > 0 && inside > 0 && membership_failures == 0 && integrality_failures == 0;
    }
};

// Samples the comparison over a box of small rationals: cone membership must
// be preserved both ways, and integer points must land on integer points.
// Every other sample is drawn integral so the lattice check sees real cases.
inline ConeComparisonReport verify_cone_comparison(const GroupModel& model,
                                                   const GroupModel& dual_model,
                                                   const std::vector<int>& letters,
                                                   std::size_t nsamples, unsigned long long seed) {
    DoubleWord dw = make_double_word(model.datum, letters);
    DoubleWord dual_dw = make_double_word(dual_model.datum, letters);
    std::vector<LinIneq> cone = bk_cone(model, dw);
    std::vector<LinIneq> dual_cone = bk_cone(dual_model, dual_dw);
    PLMap map = comparison_map(model.datum, dw);
    std::size_t nv = static_cast<std::size_t>(model.datum.rank()) + dw.size();
    std::mt19937_64 rng(seed);
    ConeComparisonReport rep;
    for (std::size_t s = 0; s < nsamples; ++s) {
        bool integral = (s % 2 == 0);
        QVec x;
        x.reserve(nv);
        for (std::size_t j = 0; j < nv; ++j) {
            long long den = integral ? 1 : 1 + static_cast<long long>(rng() % 3);
            long long num = static_cast<long long>(rng() % static_cast<unsigned long long>(20 * den + 1));
            x.push_back(rat(num, den));
        }
        ++rep.samples;
        bool in_cone = cone_contains(cone, x);
        QVec y = map.eval(x);
        bool in_dual = cone_contains(dual_cone, y);
        if (in_cone) ++rep.inside;
        if (in_cone != in_dual) ++rep.membership_failures;
        if (integral) {
            ++rep.integral_checked;
            if (!qvec_is_integral(y)) ++rep.integrality_failures;
        }
    }
    return rep;
}

struct TransitionComparisonReport {
    unsigned long long samples = 0, failures = 0;
    std::vector<QVec> counterexamples;  // first few failing sample points

    bool ok() const { return samples > 0 && failures == 0; }
};

// Compares the two routes into dual minor coordinates on integer samples:
// the comparison map followed by the dual chart transition must match the
// primal chart transition followed by the per-minor scaling.
inline TransitionComparisonReport verify_transition_comparison(const GroupModel& model,
                                                               const GroupModel& dual_model,
                                                               const std::vector<int>& letters,
                                                               std::size_t nsamples,
                                                               unsigned long long seed) {
    DoubleWord dw = make_double_word(model.datum, letters);
    DoubleWord dual_dw = make_double_word(dual_model.datum, letters);
    PLMap fwd = tropical_transition(model, dw);
    PLMap dual_fwd = tropical_transition(dual_model, dual_dw);
    PLMap cmp = comparison_map(model.datum, dw);
    std::vector<long long> scales = minor_scaling_exponents(model.datum, dw);
    std::size_t nv = static_cast<std::size_t>(model.datum.rank()) + dw.size();
    std::mt19937_64 rng(seed);
    TransitionComparisonReport rep;
    for (std::size_t s = 0; s < nsamples; ++s) {
        QVec x;
        x.reserve(nv);
        for (std::size_t j = 0; j < nv; ++j)
            x.push_back(Rat(static_cast<long long>(rng() % 41) - 20));
        ++rep.samples;
        QVec lhs = dual_fwd.eval(cmp.eval(x));
        QVec rhs = fwd.eval(x);
        for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = Rat(scales[k]) * rhs[k];
        if (lhs != rhs) {
            ++rep.failures;
            if (rep.counterexamples.size() < 5) rep.counterexamples.push_back(x);
        }
    }
    return rep;
}

struct CrystalScalingReport {
    unsigned long long points = 0, checks = 0, failures = 0;

    bool ok() const { return points > 0 && failures == 0; }
};

// Checks on every integer point of one fiber that the comparison intertwines
// each crystal operator with its symmetrizer-fold power on the dual side,
// with the empty result absorbing on both sides.
inline CrystalScalingReport verify_crystal_scaling(
    const RootDatum& dat, const RootDatum& dual_dat, const DoubleWord& dw, const DoubleWord& dual_dw,
    const std::vector<LinIneq>& cone, const std::vector<LinIneq>& dual_cone, const IVec& lambda_vee) {
    CrystalScalingReport rep;
    for (const CrystalPoint& pt : fiber_enumerate(dat, dw, cone, lambda_vee)) {
        ++rep.points;
        CrystalPoint img = comparison_apply(dat, dw, pt);
        for (int i = 1; i <= static_cast<int>(dat.rank()); ++i) {
            long long di = dat.d(i);
            for (bool raising : {true, false}) {
                ++rep.checks;
                std::optional<CrystalPoint> lhs;
                if (auto stepped = crystal_apply(dat, dw, cone, pt, i, raising))
                    lhs = comparison_apply(dat, dw, *stepped);
                std::optional<CrystalPoint> rhs = img;
                for (long long s = 0; s < di && rhs; ++s)
                    rhs = crystal_apply(dual_dat, dual_dw, dual_cone, *rhs, i, raising);
                bool same = lhs.has_value() == rhs.has_value() && (!lhs || *lhs == *rhs);
                if (!same) ++rep.failures;
            }
        }
    }
    return rep;
}

}  // namespace tropcell
