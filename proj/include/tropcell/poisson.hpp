#pragma once

// Constant Poisson data attached to the tropical cone of a factorization
// chart: the action-angle bracket table with its triangular factorization,
// symplectic leaf slices, Bohr-Sommerfeld lattices together with their
// transport to the dual chart, leading-order point counts against the Weyl
// dimension product, and an integrality criterion for quantizability.

#include "tropcell/potential.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tropcell {

// Raised when a certified structural property of the bracket data fails:
// the triangular factorization of the square block, the match between zero
// rows and non-repeating positions, or the constancy of the pinned minor
// coordinates along a leaf.
struct TheoremSymViolation : MathError {
    using MathError::MathError;
};

// Raised when a requested weight is not the image of a dominant integral
// cocharacter under the lattice comparison map.
struct NotQuantizable : MathError {
    using MathError::MathError;
};

// Raised when an operation requires a label with strictly positive pairings
// against all simple roots.
struct NotRegular : MathError {
    using MathError::MathError;
};

// Raised when a quantizability witness sits too close to a wall (or has an
// empty fiber), so the sampled fiber cannot decide the criterion.
struct InconclusiveWitness : MathError {
    using MathError::MathError;
};

// ---------------------------------------------------------------------------
// Bracket table.

// Bracket of the action coordinate at extended index k against the angle at
// word position p. Zero at or past the angle position; otherwise the defect
// between the pairing of the two fundamental weights and the pairing of
// their prefix translates.
inline Rat action_angle_bracket(const RootDatum& dat, const DoubleWord& dw, int k, int p) {
    if (p < 1 || p > static_cast<int>(dw.size())) throw MathError("angle index out of range");
    std::size_t i = static_cast<std::size_t>(std::abs(dw.letter_at(k)));
    std::size_t j = static_cast<std::size_t>(std::abs(dw.letter_at(p)));
    if (k >= p) return Rat(0);
    QMat form = dat.form_hstar();
    QVec wi = to_qvec(dat.fundamental_weight(static_cast<int>(i)));
    QVec wj = to_qvec(dat.fundamental_weight(static_cast<int>(j)));
    QVec ui = k < 0 ? wi : weyl(dat, left_prefix(dw, k)).on_hstar.apply(wi);
    QVec uj = weyl(dat, left_prefix(dw, p)).on_hstar.apply(wj);
    return vec_dot(wi, form.apply(wj)) - vec_dot(ui, form.apply(uj));
}

// ---------------------------------------------------------------------------
// Bracket block.

// Action-angle table of a word of the longest element together with the
// square block over the torus and exchangeable rows and its certified
// diagonal-times-unitriangular factorization.
struct BracketBlock {
    std::vector<int> table_rows;    // extended action indices, -r..-1 then 1..m
    QMat table;                     // (r+m) x m action-angle brackets
    std::vector<int> b_rows;        // torus and exchangeable indices by next occurrence
    QMat B;                         // square block over b_rows
    QMat D;                         // diagonal 1/d factors in word order
    QMat Bprime;                    // integral unitriangular factor, B = D Bprime
    std::vector<int> casimir_rows;  // word positions whose letter never repeats
};

inline BracketBlock build_bracket_block(const RootDatum& dat, const DoubleWord& dw) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    std::size_t m = dw.size();

    WeylWord abs;
    for (int l : dw.letters) {
        if (l >= 0) throw MathError("bracket block expects a word in the negative letters");
        abs.letters.push_back(-l);
    }
    require_reduced(dat, abs);
    if (m != longest_word(dat).letters.size())
        throw MathError("word does not factor the longest element");

    BracketBlock bl;
    for (int k = -static_cast<int>(r); k <= -1; ++k) bl.table_rows.push_back(k);
    for (int k = 1; k <= static_cast<int>(m); ++k) bl.table_rows.push_back(k);
    bl.table = QMat(r + m, m);
    for (std::size_t row = 0; row < bl.table_rows.size(); ++row)
        for (int p = 1; p <= static_cast<int>(m); ++p)
            bl.table(row, static_cast<std::size_t>(p - 1)) =
                action_angle_bracket(dat, dw, bl.table_rows[row], p);

    for (int k = -static_cast<int>(r); k <= -1; ++k) bl.b_rows.push_back(k);
    for (int k : exchangeable_positions(dw)) bl.b_rows.push_back(k);
    if (bl.b_rows.size() != m)
        throw TheoremSymViolation("square block needs as many rows as angles");
    std::sort(bl.b_rows.begin(), bl.b_rows.end(), [&](int a, int b) {
        return next_same_letter(dw, a) < next_same_letter(dw, b);
    });
    for (std::size_t j = 0; j < m; ++j)
        if (next_same_letter(dw, bl.b_rows[j]) != static_cast<int>(j + 1))
            throw TheoremSymViolation("next-occurrence map is not a bijection onto the word");

    bl.B = QMat(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t row = static_cast<std::size_t>(
            std::find(bl.table_rows.begin(), bl.table_rows.end(), bl.b_rows[j]) -
            bl.table_rows.begin());
        for (std::size_t p = 0; p < m; ++p) bl.B(j, p) = bl.table(row, p);
    }
    bl.D = QMat(m, m);
    bl.Bprime = QMat(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        Rat dj = Rat(dat.d(std::abs(dw.letters[j])));
        bl.D(j, j) = Rat(1) / dj;
        for (std::size_t p = 0; p < m; ++p) bl.Bprime(j, p) = dj * bl.B(j, p);
    }
    if (!qmat_is_integral(bl.Bprime))
        throw TheoremSymViolation("unitriangular factor is not integral");
    for (std::size_t j = 0; j < m; ++j) {
        if (bl.Bprime(j, j) != 1)
            throw TheoremSymViolation("unitriangular factor has a non-unit diagonal");
        for (std::size_t p = 0; p < m; ++p) {
            if (p < j && bl.Bprime(j, p) != 0)
                throw TheoremSymViolation("unitriangular factor is not upper triangular");
            if (bl.Bprime(j, p) < 0)
                throw TheoremSymViolation("unitriangular factor has a negative entry");
        }
    }
    Rat det_expected(1);
    for (std::size_t j = 0; j < m; ++j) det_expected *= bl.D(j, j);
    if (qmat_det(bl.B) != det_expected)
        throw TheoremSymViolation("square block determinant differs from the diagonal product");

    std::set<int> free_rows(bl.b_rows.begin(), bl.b_rows.end());
    for (int k = 1; k <= static_cast<int>(m); ++k)
        if (!free_rows.count(k)) bl.casimir_rows.push_back(k);
    for (std::size_t row = 0; row < bl.table_rows.size(); ++row) {
        bool zero = true;
        for (std::size_t p = 0; p < m; ++p)
            if (bl.table(row, p) != 0) {
                zero = false;
                break;
            }
        bool is_casimir = std::find(bl.casimir_rows.begin(), bl.casimir_rows.end(),
                                    bl.table_rows[row]) != bl.casimir_rows.end();
        if (zero != is_casimir)
            throw TheoremSymViolation("zero rows differ from the non-repeating positions");
    }
    return bl;
}

// ---------------------------------------------------------------------------
// Skeleton.

// Bracket block of a factorization chart together with the chart cone and
// the tropical passage to minor coordinates.
struct PTSkeleton {
    RootDatum datum;
    DoubleWord word;
    std::size_t angles = 0;          // number of angle coordinates (word length)
    std::vector<int> table_rows;     // extended action indices, -r..-1 then 1..m
    QMat table;                      // (r+m) x m action-angle brackets
    std::vector<int> b_rows;         // torus and exchangeable indices by next occurrence
    QMat B;                          // square block over b_rows
    QMat D;                          // diagonal 1/d factors in word order
    QMat Bprime;                     // integral unitriangular factor, B = D Bprime
    std::vector<int> casimir_rows;   // word positions whose letter never repeats
    std::vector<LinIneq> cone;       // chart cone over r+m coordinates
    PLMap transition;                // tropical passage to minor coordinates

    std::size_t rank() const { return static_cast<std::size_t>(datum.rank()); }

    // Position of an extended index in the transition component order.
    std::size_t comp_pos(int k) const {
        std::size_t r = rank();
        if (k < 0) {
            if (static_cast<std::size_t>(-k) > r) throw MathError("extended index out of range");
            return r - static_cast<std::size_t>(-k);
        }
        if (k < 1 || static_cast<std::size_t>(k) > angles)
            throw MathError("extended index out of range");
        return r + static_cast<std::size_t>(k) - 1;
    }
};

namespace detail {

// Substitutes a fixed torus block into the cone, leaving a system over the
// word coordinates.
inline std::vector<LinIneq> cone_slice(const std::vector<LinIneq>& cone, std::size_t r,
                                       const QVec& h) {
    std::vector<LinIneq> sys;
    sys.reserve(cone.size());
    for (const LinIneq& q : cone) {
        if (q.a.size() < r) throw MathError("cone row shorter than the torus block");
        LinIneq s;
        s.a.assign(q.a.begin() + static_cast<std::ptrdiff_t>(r), q.a.end());
        s.b = q.b;
        for (std::size_t j = 0; j < r; ++j)
            if (q.a[j] != 0) s.b += q.a[j] * h[j];
        s.strict = q.strict;
        sys.push_back(std::move(s));
    }
    return sys;
}

inline void append_box(std::vector<LinIneq>& sys, std::size_t nvars, long long box) {
    for (std::size_t j = 0; j < nvars; ++j) {
        LinIneq lo, hi;
        lo.a.assign(nvars, Rat(0));
        lo.a[j] = 1;
        lo.b = Rat(box);
        hi.a.assign(nvars, Rat(0));
        hi.a[j] = -1;
        hi.b = Rat(box);
        sys.push_back(std::move(lo));
        sys.push_back(std::move(hi));
    }
}

}  // namespace detail

inline PTSkeleton build_skeleton(const GroupModel& model, const DoubleWord& dw) {
    const RootDatum& dat = model.datum;
    std::size_t r = static_cast<std::size_t>(dat.rank());
    std::size_t m = dw.size();

    BracketBlock bl = build_bracket_block(dat, dw);
    PTSkeleton sk;
    sk.datum = dat;
    sk.word = dw;
    sk.angles = m;
    sk.table_rows = std::move(bl.table_rows);
    sk.table = std::move(bl.table);
    sk.b_rows = std::move(bl.b_rows);
    sk.B = std::move(bl.B);
    sk.D = std::move(bl.D);
    sk.Bprime = std::move(bl.Bprime);
    sk.casimir_rows = std::move(bl.casimir_rows);

    sk.cone = bk_cone(model, dw);
    sk.transition = tropical_transition(model, dw);

    // Zero bracket rows promise minors that are constant on every leaf; the
    // tropical components at those positions must be free of word
    // coordinates.
    for (int k : sk.casimir_rows) {
        const TropDiff& d = sk.transition.components()[sk.comp_pos(k)];
        auto word_free = [&](const TropPoly& t) {
            for (const TropForm& f : t.forms())
                for (std::size_t j = r; j < r + m; ++j)
                    if (f.a[j] != 0) return false;
            return true;
        };
        if (!word_free(d.num) || !word_free(d.den))
            throw TheoremSymViolation("pinned minor coordinate varies along a leaf");
    }
    return sk;
}

inline PTSkeleton build_skeleton(const RootDatum& dat, const DoubleWord& dw) {
    return build_skeleton(build_group_model(dat), dw);
}

// ---------------------------------------------------------------------------
// Symplectic leaf slices.

struct LeafDescription {
    IVec lambda_vee;                // leaf label in cocharacter coordinates
    bool regular = false;           // strictly positive root pairings
    QVec root_pairings;             // pairings against the simple roots
    std::vector<int> casimir_rows;  // pinned action indices
    QVec casimir_values;            // their values at the base point
    QVec base_sigma;                // minor coordinates of the base point
    std::vector<LinIneq> fiber;     // cone slice over the word coordinates
    std::size_t xi_dimension = 0;   // affine dimension of the slice
    std::size_t dimension = 0;      // leaf dimension, paired slice and angle directions
};

inline LeafDescription leaves(const PTSkeleton& sk, const IVec& lambda_vee) {
    const RootDatum& dat = sk.datum;
    std::size_t r = sk.rank();
    std::size_t m = sk.angles;
    if (lambda_vee.size() != r) throw MathError("leaf label has the wrong size");

    LeafDescription leaf;
    leaf.lambda_vee = lambda_vee;
    leaf.root_pairings = coweight_root_pairings(dat, lambda_vee);
    leaf.regular = true;
    for (const Rat& c : leaf.root_pairings) {
        if (c < 0) throw NotDominant("leaf label is not dominant");
        if (c == 0) leaf.regular = false;
    }

    QVec base_x = to_qvec(lambda_vee);
    base_x.resize(r + m, Rat(0));
    leaf.base_sigma = sk.transition.eval(base_x);
    leaf.casimir_rows = sk.casimir_rows;
    for (int k : sk.casimir_rows) leaf.casimir_values.push_back(leaf.base_sigma[sk.comp_pos(k)]);

    leaf.fiber = detail::cone_slice(sk.cone, r, to_qvec(lambda_vee));
    if (!feasible(leaf.fiber, m)) throw MathError("empty cone slice over a dominant label");

    std::vector<QVec> normals;
    for (const LinIneq& q : leaf.fiber) {
        if (q.strict) continue;
        LinIneq neg;
        neg.a.reserve(q.a.size());
        for (const Rat& c : q.a) neg.a.push_back(-c);
        neg.b = -q.b;
        neg.strict = false;
        if (entails(leaf.fiber, neg, m)) normals.push_back(q.a);
    }
    QMat nm(normals.size(), m);
    for (std::size_t i = 0; i < normals.size(); ++i)
        for (std::size_t j = 0; j < m; ++j) nm(i, j) = normals[i][j];
    leaf.xi_dimension = m - qmat_rank(nm);
    leaf.dimension = 2 * leaf.xi_dimension;
    return leaf;
}

// ---------------------------------------------------------------------------
// Bohr-Sommerfeld lattices.

struct BSLattice {
    IVec lambda_vee;                // leaf label in cocharacter coordinates
    QVec lambda;                    // its character image
    QVec base_point;                // chart coordinates of the extremal fiber point
    QVec base_sigma;                // minor coordinates of the base point
    QMat generators;                // displacement block over the paired action rows
    long long grid_den = 1;         // common denominator of the word spacings
    std::vector<QVec> points;       // chart coordinates, lexicographic
    std::vector<IVec> multipliers;  // word displacement in units of the spacing
};

// Points of the fiber over the label whose displacement from the base point
// lies in the integer span of the displacement block. The unitriangular
// factor is unimodular, so that span meets the word coordinates in the grid
// with spacing 1/d at each position.
inline BSLattice bs_lattice(const PTSkeleton& sk, const QVec& lambda_char, long long box) {
    const RootDatum& dat = sk.datum;
    std::size_t r = sk.rank();
    std::size_t m = sk.angles;
    if (lambda_char.size() != r) throw MathError("weight has the wrong size");
    if (box < 0) throw MathError("box bound must be nonnegative");

    QVec sol = qmat_solve(dat.psi_matrix, lambda_char);
    if (!qvec_is_integral(sol))
        throw NotQuantizable("weight is not the image of an integral cocharacter");
    IVec lambda_vee = to_ivec(sol);
    for (const Rat& c : coweight_root_pairings(dat, lambda_vee))
        if (c < 0) throw NotQuantizable("weight is not the image of a dominant cocharacter");

    BSLattice out;
    out.lambda_vee = lambda_vee;
    out.lambda = lambda_char;
    out.generators = sk.B;

    out.base_point = to_qvec(lambda_vee);
    out.base_point.resize(r + m, Rat(0));
    if (!cone_contains(sk.cone, out.base_point)) throw MathError("base point left the cone");
    out.base_sigma = sk.transition.eval(out.base_point);

    std::vector<LinIneq> fiber = detail::cone_slice(sk.cone, r, to_qvec(lambda_vee));

    // The base point must be the only fiber point whose weight equals the
    // label: adding the weight equations to the fiber has to pin every word
    // coordinate at zero.
    {
        std::vector<LinIneq> pinned = fiber;
        for (std::size_t i = 0; i < r; ++i) {
            LinIneq eq;
            eq.a.assign(m, Rat(0));
            for (std::size_t l = 0; l < m; ++l) {
                IVec coroot = coroot_in_cochar_basis(dat, std::abs(sk.word.letters[l]));
                eq.a[l] = Rat(coroot[i]);
            }
            LinIneq neg;
            neg.a.reserve(m);
            for (const Rat& c : eq.a) neg.a.push_back(-c);
            pinned.push_back(std::move(eq));
            pinned.push_back(std::move(neg));
        }
        for (std::size_t j = 0; j < m; ++j) {
            LinIneq lo, hi;
            lo.a.assign(m, Rat(0));
            lo.a[j] = -1;
            hi.a.assign(m, Rat(0));
            hi.a[j] = 1;
            if (!entails(pinned, lo, m) || !entails(pinned, hi, m))
                throw TheoremSymViolation("fiber point of extremal weight is not unique");
        }
    }

    std::vector<Int> dens;
    dens.reserve(m);
    long long g = 1;
    for (long long l : sk.word.letters) {
        long long dj = dat.d(static_cast<std::size_t>(std::abs(l)));
        dens.push_back(Int(dj));
        g = std::lcm(g, dj);
    }
    out.grid_den = g;

    detail::append_box(fiber, m, box);
    fiber = scale_variables(std::move(fiber), dens);
    std::vector<std::pair<QVec, IVec>> found;
    LatticeEnumerator(std::move(fiber), m).enumerate([&](const std::vector<Int>& u) {
        QVec x = to_qvec(lambda_vee);
        x.reserve(r + m);
        IVec c;
        c.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            x.push_back(Rat(u[j], dens[j]));
            c.push_back(to_ll(u[j]));
        }
        found.emplace_back(std::move(x), std::move(c));
    });
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [x, c] : found) {
        out.points.push_back(std::move(x));
        out.multipliers.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Duality of Bohr-Sommerfeld lattices.

struct DualityReport {
    QVec lambda;                          // weight on the primal side
    IVec lambda_vee;                      // its cocharacter preimage
    std::size_t primal_count = 0;         // lattice points in the box
    std::size_t dual_count = 0;           // integral points of the dual fiber
    std::vector<QVec> nonintegral_images; // images off the dual lattice
    std::vector<IVec> missing;            // dual points with no preimage
    std::vector<IVec> extra;              // images outside the dual fiber

    bool ok() const {
        return nonintegral_images.empty() && missing.empty() && extra.empty();
    }
};

// Transports the point lattice through the comparison map, which scales the
// torus block by the twist matrix and each word coordinate by its root
// normalizer, and compares the image with the integer points of the dual
// fiber as sets.
inline DualityReport verify_bs_duality(const PTSkeleton& sk, const std::vector<LinIneq>& dual_cone,
                                       const QMat& psi, const QVec& lambda_char, long long box) {
    if (!qvec_is_integral(lambda_char))
        throw NotQuantizable("weight is not a character lattice point");
    BSLattice bs = bs_lattice(sk, lambda_char, box);

    DualityReport rep;
    rep.lambda = lambda_char;
    rep.lambda_vee = bs.lambda_vee;
    rep.primal_count = bs.points.size();

    std::size_t r = sk.rank();
    std::size_t m = sk.angles;
    RootDatum dual = langlands_dual(sk.datum);
    std::set<IVec> dual_points;
    for (const CrystalPoint& p : fiber_enumerate(dual, sk.word, dual_cone, to_ivec(lambda_char))) {
        IVec v = p.h;
        v.insert(v.end(), p.xi.begin(), p.xi.end());
        dual_points.insert(std::move(v));
    }
    rep.dual_count = dual_points.size();

    std::set<IVec> images;
    for (const QVec& x : bs.points) {
        QVec y = psi.apply(QVec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(r)));
        for (std::size_t j = 0; j < m; ++j) {
            Rat dj(sk.datum.d(static_cast<std::size_t>(std::abs(sk.word.letters[j]))));
            y.push_back(dj * x[r + j]);
        }
        if (!qvec_is_integral(y)) {
            rep.nonintegral_images.push_back(y);
            continue;
        }
        images.insert(to_ivec(y));
    }
    std::set_difference(dual_points.begin(), dual_points.end(), images.begin(), images.end(),
                        std::back_inserter(rep.missing));
    std::set_difference(images.begin(), images.end(), dual_points.begin(), dual_points.end(),
                        std::back_inserter(rep.extra));
    return rep;
}

// ---------------------------------------------------------------------------
// Volume comparison.

struct VolumeRow {
    long long scale = 1;            // dilation factor
    unsigned long long count = 0;   // lattice points in the dilated fiber
    Rat expected;                   // Weyl product times scale to the dimension
    Rat ratio;                      // count over expected
};

struct VolumeTable {
    IVec lambda_vee;
    QVec lambda;
    Rat weyl_product;               // product of pairing quotients over positive roots
    std::vector<VolumeRow> rows;
};

inline VolumeTable volume(const PTSkeleton& sk, const IVec& lambda_vee, long long n_max) {
    const RootDatum& dat = sk.datum;
    std::size_t r = sk.rank();
    std::size_t m = sk.angles;
    if (lambda_vee.size() != r) throw MathError("label has the wrong size");
    if (n_max < 1) throw MathError("dilation bound must be positive");
    for (const Rat& c : coweight_root_pairings(dat, lambda_vee))
        if (c <= 0) throw NotRegular("label is not regular dominant");

    VolumeTable table;
    table.lambda_vee = lambda_vee;
    table.lambda = psi_apply(dat, to_qvec(lambda_vee));

    QVec lambda_omega(r, Rat(0));
    for (std::size_t b = 0; b < r; ++b)
        for (std::size_t j = 0; j < r; ++j)
            lambda_omega[j] += table.lambda[b] * Rat(dat.char_lattice(b, j));
    QMat form = dat.form_hstar();
    QVec rho_omega = to_qvec(dat.rho());
    table.weyl_product = Rat(1);
    for (const PositiveRoot& root : positive_roots(dat)) {
        QVec alpha = to_qvec(root.root_omega);
        table.weyl_product *= vec_dot(lambda_omega, form.apply(alpha)) /
                              vec_dot(rho_omega, form.apply(alpha));
    }

    RootDatum dual = langlands_dual(dat);
    GroupModel dual_model = build_group_model(dual);
    std::vector<LinIneq> dual_cone = bk_cone(dual_model, sk.word);

    std::vector<long long> scales;
    for (long long s = 1; s < n_max; s *= 2) scales.push_back(s);
    scales.push_back(n_max);

    for (long long s : scales) {
        VolumeRow row;
        row.scale = s;
        QVec mu = vec_scale(Rat(s), table.lambda);
        std::vector<LinIneq> sys = detail::cone_slice(dual_cone, r, mu);
        row.count = LatticeEnumerator(std::move(sys), m).count();
        Rat power(1);
        for (std::size_t j = 0; j < m; ++j) power *= Rat(s);
        row.expected = table.weyl_product * power;
        row.ratio = Rat(Int(row.count)) / row.expected;
        table.rows.push_back(std::move(row));
    }
    return table;
}

// Dimension comparison between a dominant weight shifted off the walls and
// its cocharacter label on the dual side, scaled by the product of the root
// normalizers.
struct CorollaryVolRow {
    IVec lambda_vee;
    Rat lhs;            // dimension on the primal side
    Rat rhs;            // dimension on the dual side
    Int root_factor;    // product of d_alpha over the positive roots
    bool ok = false;
};

inline std::vector<CorollaryVolRow> corollary_vol_check(const RootDatum& dat,
                                                        const std::vector<IVec>& labels) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    Int factor(1);
    for (const PositiveRoot& root : positive_roots(dat)) factor *= Int(root.d_alpha);
    RootDatum dual = langlands_dual(dat);

    std::vector<CorollaryVolRow> rows;
    for (const IVec& lambda_vee : labels) {
        if (lambda_vee.size() != r) throw MathError("label has the wrong size");
        CorollaryVolRow row;
        row.lambda_vee = lambda_vee;
        row.root_factor = factor;

        QVec lambda_char = psi_apply(dat, to_qvec(lambda_vee));
        QVec lambda_omega(r, Rat(0));
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t j = 0; j < r; ++j)
                lambda_omega[j] += lambda_char[b] * Rat(dat.char_lattice(b, j));
        QVec ones(r, Rat(1));
        row.lhs = weyl_dim(dat, vec_sub(lambda_omega, ones));
        row.rhs = weyl_dim(dual, vec_sub(coweight_root_pairings(dat, lambda_vee), ones));
        row.ok = row.lhs == Rat(factor) * row.rhs;
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Quantizability.

// Cone with a constant bracket: lattice points live on a fixed grid, a linear
// projection labels the leaves, and the displacement block measures fiber
// displacements through a linear tangent projection.
struct TropPoissonVariety {
    std::vector<LinIneq> cone;  // over nvars coordinates
    std::size_t nvars = 0;
    std::size_t angles = 0;     // paired angle directions
    QMat hw;                    // linear projection to the leaf labels
    QMat label_form;            // pairings deciding how far a label is from the walls
    QMat bracket;               // displacement block on the fiber tangents
    QMat tangent;               // projection of a fiber displacement onto its coordinates
    long long grid_den = 1;     // lattice points sit on the 1/grid_den grid
};

inline TropPoissonVariety to_trop_variety(const PTSkeleton& sk) {
    std::size_t r = sk.rank();
    std::size_t m = sk.angles;
    TropPoissonVariety v;
    v.cone = sk.cone;
    v.nvars = r + m;
    v.angles = m;
    v.hw = QMat(r, r + m);
    for (std::size_t i = 0; i < r; ++i) v.hw(i, i) = Rat(1);
    v.label_form = to_qmat(sk.datum.cochar_lattice.transpose());
    v.bracket = sk.B;
    v.tangent = QMat(m, r + m);
    for (std::size_t j = 0; j < m; ++j) v.tangent(j, r + j) = Rat(1);
    v.grid_den = 1;
    return v;
}

// Decides whether every grid point of the witness fiber differs from a fixed
// one by an integer combination of the bracket columns. The witness must
// pair with every label form at or above the given bound, so the fiber is
// far enough from the walls to represent all leaves.
inline bool quantizability_check(const TropPoissonVariety& v, const IVec& witness,
                                 long long min_coeff = 1, long long box = 64) {
    if (witness.size() != v.hw.rows()) throw MathError("witness has the wrong size");
    for (const Rat& c : v.label_form.apply(to_qvec(witness)))
        if (c < Rat(min_coeff))
            throw InconclusiveWitness("witness pairs below the requested wall distance");

    std::vector<LinIneq> sys = v.cone;
    for (std::size_t i = 0; i < v.hw.rows(); ++i) {
        LinIneq eq_lo, eq_hi;
        eq_lo.a = v.hw.row(i);
        eq_lo.b = -Rat(witness[i]);
        eq_hi.a.reserve(eq_lo.a.size());
        for (const Rat& c : eq_lo.a) eq_hi.a.push_back(-c);
        eq_hi.b = Rat(witness[i]);
        sys.push_back(std::move(eq_lo));
        sys.push_back(std::move(eq_hi));
    }
    detail::append_box(sys, v.nvars, box);
    sys = scale_variables(std::move(sys), std::vector<Int>(v.nvars, Int(v.grid_den)));

    std::vector<QVec> points;
    LatticeEnumerator(std::move(sys), v.nvars).enumerate([&](const std::vector<Int>& u) {
        QVec x;
        x.reserve(v.nvars);
        for (const Int& c : u) x.push_back(Rat(c, Int(v.grid_den)));
        points.push_back(std::move(x));
    });
    if (points.empty()) throw InconclusiveWitness("witness fiber has no grid points");

    QMat b_inv = qmat_inverse(v.bracket);
    const QVec& base = points.front();
    for (const QVec& x : points) {
        QVec delta = v.tangent.apply(vec_sub(x, base));
        if (!qvec_is_integral(b_inv.apply(delta))) return false;
    }
    return true;
}

}  // namespace tropcell
