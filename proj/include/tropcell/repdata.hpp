#pragma once
// Exact matrix models for the groups handled by this library. Each
// supported Cartan type carries one representation per fundamental weight,
// given by rational generator matrices in a weight-ordered basis: the
// highest weight vector comes first, every raising generator is strictly
// upper triangular and every lowering generator is strictly lower
// triangular. Exterior powers of a defining representation are built from
// the derivation action on ordered wedge monomials.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "rootdata.hpp"

namespace tropcell {

struct UnsupportedWeight : MathError {
    using MathError::MathError;
};

struct RepData {
    std::size_t fund_index = 0;  // 1-based index of the highest weight among the fundamentals
    std::size_t dim = 0;
    std::vector<QMat> E;         // raising generator per simple letter, entry i-1 for letter i
    std::vector<QMat> F;         // lowering generator per simple letter
    std::vector<IVec> weights;   // weight of each basis vector in fundamental-weight coordinates
};

namespace detail {

inline QMat unit_matrix_entry(std::size_t dim, std::size_t row, std::size_t col, const Rat& c) {
    QMat m(dim, dim);
    m(row, col) = c;
    return m;
}

}  // namespace detail

// Checks the structural contract every registered representation obeys:
// weight-graded generators, strict triangularity, sl2 commutators against
// the recorded weights, and the highest weight vector in the first slot.
inline void validate_rep(const RootDatum& dat, const RepData& rep) {
    const std::size_t r = dat.rank();
    if (rep.fund_index < 1 || rep.fund_index > r) throw MathError("fundamental index out of range");
    if (rep.E.size() != r || rep.F.size() != r) throw MathError("generator list size mismatch");
    if (rep.weights.size() != rep.dim) throw MathError("weight list size mismatch");
    for (const IVec& w : rep.weights)
        if (w.size() != r) throw MathError("weight coordinate size mismatch");
    if (rep.weights[0] != dat.fundamental_weight(rep.fund_index))
        throw MathError("first basis vector is not the highest weight vector");
    for (std::size_t i = 0; i < r; ++i) {
        const QMat& e = rep.E[i];
        const QMat& f = rep.F[i];
        if (e.rows() != rep.dim || e.cols() != rep.dim || f.rows() != rep.dim || f.cols() != rep.dim)
            throw MathError("generator shape mismatch");
        IVec alpha = dat.simple_root(i + 1);
        for (std::size_t b = 0; b < rep.dim; ++b)
            for (std::size_t c = 0; c < rep.dim; ++c) {
                if (e(b, c) != 0) {
                    if (b >= c) throw MathError("raising generator is not strictly upper triangular");
                    if (vec_sub(rep.weights[b], rep.weights[c]) != alpha)
                        throw MathError("raising generator breaks the weight grading");
                }
                if (f(b, c) != 0) {
                    if (b <= c) throw MathError("lowering generator is not strictly lower triangular");
                    if (vec_sub(rep.weights[c], rep.weights[b]) != alpha)
                        throw MathError("lowering generator breaks the weight grading");
                }
            }
        QMat comm = e * f - f * e;
        for (std::size_t b = 0; b < rep.dim; ++b)
            for (std::size_t c = 0; c < rep.dim; ++c) {
                Rat expect = (b == c) ? Rat(rep.weights[b][i]) : Rat(0);
                if (comm(b, c) != expect) throw MathError("sl2 commutator mismatch");
            }
        for (std::size_t j = 0; j < r; ++j) {
            if (j == i) continue;
            QMat cross = rep.E[i] * rep.F[j] - rep.F[j] * rep.E[i];
            for (std::size_t b = 0; b < rep.dim; ++b)
                for (std::size_t c = 0; c < rep.dim; ++c)
                    if (cross(b, c) != 0) throw MathError("mixed commutator mismatch");
        }
    }
}

// Exterior power of a representation: basis vectors are the size-k subsets
// of the base basis in lexicographic order, generators act as derivations,
// weights add. Signs come from sorting the wedge factors.
inline RepData exterior_power(const RepData& base, std::size_t k, std::size_t fund_index) {
    if (k < 1 || k > base.dim) throw MathError("exterior power degree out of range");
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> cur;
    auto gen = [&](auto&& self, std::size_t next) -> void {
        if (cur.size() == k) {
            subsets.push_back(cur);
            return;
        }
        for (std::size_t i = next; i < base.dim; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    gen(gen, 0);
    std::sort(subsets.begin(), subsets.end());

    auto subset_index = [&](const std::vector<std::size_t>& s) {
        auto it = std::lower_bound(subsets.begin(), subsets.end(), s);
        return static_cast<std::size_t>(it - subsets.begin());
    };

    RepData out;
    out.fund_index = fund_index;
    out.dim = subsets.size();
    const std::size_t r = base.E.size();
    out.weights.reserve(out.dim);
    for (const auto& s : subsets) {
        IVec w(base.weights[0].size(), 0);
        for (std::size_t b : s) w = vec_add(w, base.weights[b]);
        out.weights.push_back(w);
    }

    auto derive = [&](const QMat& gmat) {
        QMat m(out.dim, out.dim);
        for (std::size_t col = 0; col < out.dim; ++col) {
            const auto& s = subsets[col];
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t a = 0; a < base.dim; ++a) {
                    const Rat& c = gmat(a, s[j]);
                    if (c == 0) continue;
                    if (std::find(s.begin(), s.end(), a) != s.end()) continue;
                    std::vector<std::size_t> t = s;
                    t[j] = a;
                    int sign = 1;
                    for (std::size_t p = 0; p + 1 < k; ++p)
                        for (std::size_t q = 0; q + 1 < k - p; ++q)
                            if (t[q] > t[q + 1]) {
                                std::swap(t[q], t[q + 1]);
                                sign = -sign;
                            }
                    m(subset_index(t), col) += c * sign;
                }
        }
        return m;
    };
    for (std::size_t i = 0; i < r; ++i) {
        out.E.push_back(derive(base.E[i]));
        out.F.push_back(derive(base.F[i]));
    }
    return out;
}

struct GroupModel {
    RootDatum datum;
    std::vector<RepData> reps;  // one per fundamental index, position i-1 for index i

    const RepData& rep(std::size_t fund_index) const {
        for (const RepData& r : reps)
            if (r.fund_index == fund_index) return r;
        throw UnsupportedWeight("no representation registered for fundamental index " +
                                std::to_string(fund_index));
    }
};

namespace detail {

// Defining representation of type A rank r: the standard basis of column
// vectors with E_i and F_i the adjacent elementary matrices.
inline RepData type_a_defining(std::size_t rank) {
    RepData rep;
    rep.fund_index = 1;
    rep.dim = rank + 1;
    for (std::size_t i = 0; i < rank; ++i) {
        rep.E.push_back(unit_matrix_entry(rep.dim, i, i + 1, Rat(1)));
        rep.F.push_back(unit_matrix_entry(rep.dim, i + 1, i, Rat(1)));
    }
    for (std::size_t b = 0; b < rep.dim; ++b) {
        IVec w(rank, 0);
        if (b < rank) w[b] += 1;
        if (b > 0) w[b - 1] -= 1;
        rep.weights.push_back(w);
    }
    return rep;
}

// Five-dimensional representation of the rank-2 odd orthogonal group on the
// space preserved by the bilinear form with ones on the antidiagonal.
inline RepData b2_vector() {
    RepData rep;
    rep.fund_index = 1;
    rep.dim = 5;
    QMat e1 = unit_matrix_entry(5, 0, 1, Rat(1)) - unit_matrix_entry(5, 3, 4, Rat(1));
    QMat f1 = unit_matrix_entry(5, 1, 0, Rat(1)) - unit_matrix_entry(5, 4, 3, Rat(1));
    QMat e2 = (unit_matrix_entry(5, 1, 2, Rat(1)) - unit_matrix_entry(5, 2, 3, Rat(1))) * Rat(2);
    QMat f2 = unit_matrix_entry(5, 2, 1, Rat(1)) - unit_matrix_entry(5, 3, 2, Rat(1));
    rep.E = {e1, e2};
    rep.F = {f1, f2};
    rep.weights = {{1, 0}, {-1, 2}, {0, 0}, {1, -2}, {-1, 0}};
    return rep;
}

// Four-dimensional spin representation of the same group.
inline RepData b2_spin() {
    RepData rep;
    rep.fund_index = 2;
    rep.dim = 4;
    QMat e1 = unit_matrix_entry(4, 1, 2, Rat(1));
    QMat f1 = unit_matrix_entry(4, 2, 1, Rat(1));
    QMat e2 = unit_matrix_entry(4, 0, 1, Rat(1)) + unit_matrix_entry(4, 2, 3, Rat(1));
    QMat f2 = unit_matrix_entry(4, 1, 0, Rat(1)) + unit_matrix_entry(4, 3, 2, Rat(1));
    rep.E = {e1, e2};
    rep.F = {f1, f2};
    rep.weights = {{0, 1}, {1, -1}, {-1, 1}, {0, -1}};
    return rep;
}

// Defining four-dimensional representation of the rank-2 symplectic group.
inline RepData c2_defining() {
    RepData rep;
    rep.fund_index = 1;
    rep.dim = 4;
    QMat e1 = unit_matrix_entry(4, 0, 1, Rat(1)) - unit_matrix_entry(4, 2, 3, Rat(1));
    QMat f1 = unit_matrix_entry(4, 1, 0, Rat(1)) - unit_matrix_entry(4, 3, 2, Rat(1));
    QMat e2 = unit_matrix_entry(4, 1, 2, Rat(1));
    QMat f2 = unit_matrix_entry(4, 2, 1, Rat(1));
    rep.E = {e1, e2};
    rep.F = {f1, f2};
    rep.weights = {{1, 0}, {-1, 1}, {1, -1}, {-1, 0}};
    return rep;
}

}  // namespace detail

// Builds the matrix model for a supported datum. The torus of the chosen
// isogeny only enters later, when symbolic elements are rendered in a
// representation; the generator matrices themselves are isogeny independent.
inline GroupModel build_group_model(const RootDatum& dat) {
    GroupModel model;
    model.datum = dat;
    const std::size_t r = dat.rank();
    if (dat.type == "A" && r >= 1 && r <= 3) {
        RepData def = detail::type_a_defining(r);
        model.reps.push_back(def);
        for (std::size_t k = 2; k <= r; ++k) model.reps.push_back(exterior_power(def, k, k));
    } else if (dat.type == "B" && r == 2) {
        model.reps.push_back(detail::b2_vector());
        model.reps.push_back(detail::b2_spin());
    } else if (dat.type == "C" && r == 2) {
        RepData def = detail::c2_defining();
        model.reps.push_back(def);
        model.reps.push_back(exterior_power(def, 2, 2));
    } else {
        throw UnsupportedType("no matrix model for type " + dat.type + " rank " +
                              std::to_string(r));
    }
    for (const RepData& rep : model.reps) validate_rep(dat, rep);
    return model;
}

}  // namespace tropcell
