#pragma once

// Seeds of skew-symmetrizable cluster structures: matrix and chart mutation,
// Langlands-dual seeds, torus comparison maps and the tropical commuting
// square relating mutation on a seed with mutation on its dual.

#include "tropcell/matrix.hpp"
#include "tropcell/posrational.hpp"
#include "tropcell/rootdata.hpp"
#include "tropcell/tropical.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace tropcell {

struct NotExchangeable : MathError {
    explicit NotExchangeable(const std::string& what) : MathError(what) {}
};

// A seed (I, J, M): ordered index labels I, exchangeable subset J, and an
// integer exchange matrix over the positions of I, skew-symmetrized by the
// positive weights d_i in the sense M_ij d_j = -M_ji d_i.
struct Seed {
    std::vector<int> index_set;            // ordered labels I
    std::vector<int> exchangeable;         // J as a sublist of I
    IMat matrix;                           // M, indexed by positions of I
    std::vector<long long> skew_symmetrizer;  // d_i per position
    long long d = 1;                       // common multiple of the d_i

    bool operator==(const Seed& o) const {
        return index_set == o.index_set && exchangeable == o.exchangeable &&
               matrix == o.matrix && skew_symmetrizer == o.skew_symmetrizer && d == o.d;
    }
    bool operator!=(const Seed& o) const { return !(*this == o); }

    std::size_t size() const { return index_set.size(); }

    std::size_t position(int label) const {
        for (std::size_t p = 0; p < index_set.size(); ++p)
            if (index_set[p] == label) return p;
        throw MathError("label is not in the seed index set");
    }

    bool is_exchangeable(int label) const {
        return std::find(exchangeable.begin(), exchangeable.end(), label) != exchangeable.end();
    }
};

inline void validate_seed(const Seed& seed) {
    std::size_t n = seed.size();
    if (seed.matrix.rows() != n || seed.matrix.cols() != n)
        throw MathError("seed matrix shape mismatch");
    if (seed.skew_symmetrizer.size() != n)
        throw MathError("seed skew-symmetrizer shape mismatch");
    for (int label : seed.exchangeable) seed.position(label);
    for (std::size_t i = 0; i < n; ++i) {
        if (seed.skew_symmetrizer[i] <= 0 || seed.d % seed.skew_symmetrizer[i] != 0)
            throw MathError("seed skew-symmetrizer entry does not divide the common multiple");
        for (std::size_t j = 0; j < n; ++j)
            if (seed.matrix(i, j) * seed.skew_symmetrizer[j] !=
                -seed.matrix(j, i) * seed.skew_symmetrizer[i])
                throw MathError("seed matrix is not skew-symmetrized by the given weights");
    }
}

// Matrix mutation at a 0-based position: sign flip on row and column k,
// M_ij + (|M_ik| M_kj + M_ik |M_kj|) / 2 elsewhere.
inline IMat mutate_matrix(const IMat& m, std::size_t k) {
    if (m.rows() != m.cols() || k >= m.rows()) throw MathError("mutation index out of range");
    std::size_t n = m.rows();
    IMat out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k) {
                out(i, j) = -m(i, j);
            } else {
                long long cross = std::llabs(m(i, k)) * m(k, j) + m(i, k) * std::llabs(m(k, j));
                out(i, j) = m(i, j) + cross / 2;
            }
        }
    return out;
}

inline Seed mutate_seed(const Seed& seed, int label) {
    if (!seed.is_exchangeable(label))
        throw NotExchangeable("seed index is not exchangeable: " + std::to_string(label));
    Seed out = seed;
    out.matrix = mutate_matrix(seed.matrix, seed.position(label));
    return out;
}

// Chart transition of the mutation at an exchangeable label: the tuple of new
// chart coordinates as subtraction-free functions of the old ones. Only the
// mutated coordinate moves:
//   a_k' = ( prod_{M_jk > 0} a_j^{M_jk} + prod_{M_jk < 0} a_j^{-M_jk} ) / a_k.
// The same formula read inside the mutated seed gives the reverse transition,
// so the map is an involution under substitution.
inline std::vector<PosRational> mutate_chart(const Seed& seed, int label) {
    if (!seed.is_exchangeable(label))
        throw NotExchangeable("seed index is not exchangeable: " + std::to_string(label));
    std::size_t n = seed.size();
    std::size_t k = seed.position(label);
    std::vector<PosRational> transition;
    transition.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i != k) {
            transition.push_back(PosRational::variable(n, i));
            continue;
        }
        LaurentPoly::Exps pos(n, 0), neg(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            long long c = seed.matrix(j, k);
            if (c > 0) pos[j] = static_cast<int>(c);
            if (c < 0) neg[j] = static_cast<int>(-c);
        }
        LaurentPoly sum = LaurentPoly::monomial(n, pos, Rat(1)) + LaurentPoly::monomial(n, neg, Rat(1));
        transition.push_back(PosRational::from_poly(sum) / PosRational::variable(n, k));
    }
    return transition;
}

// Langlands-dual seed (I, J, -M^T) with weights d / d_i.
inline Seed dual_seed(const Seed& seed) {
    Seed out = seed;
    out.matrix = -seed.matrix.transpose();
    for (std::size_t i = 0; i < seed.size(); ++i)
        out.skew_symmetrizer[i] = seed.d / seed.skew_symmetrizer[i];
    Int l = 1;
    for (long long di : out.skew_symmetrizer) l = int_lcm(l, Int(di));
    out.d = to_ll(l);
    return out;
}

// Torus comparison map of a seed: the monomial map a_i -> a_i^{d_i}.
inline std::vector<PosRational> comparison_on_seed(const Seed& seed) {
    std::vector<PosRational> comps;
    comps.reserve(seed.size());
    for (std::size_t i = 0; i < seed.size(); ++i)
        comps.push_back(PosRational::variable(seed.size(), i).pow(seed.skew_symmetrizer[i]));
    return comps;
}

struct MutationPath {
    Seed start;
    std::vector<int> directions;  // labels in J, applied left to right
};

// Composes the chart transitions along a direction path; returns the final
// seed and the tuple expressing the final chart coordinates in the starting
// chart coordinates.
inline std::pair<Seed, std::vector<PosRational>> path_transition(const Seed& start,
                                                                 const std::vector<int>& directions) {
    Seed current = start;
    std::size_t n = start.size();
    std::vector<PosRational> total;
    total.reserve(n);
    for (std::size_t i = 0; i < n; ++i) total.push_back(PosRational::variable(n, i));
    for (int label : directions) {
        std::vector<PosRational> step = mutate_chart(current, label);
        for (auto& comp : step) comp = comp.subst(total);
        total = std::move(step);
        current = mutate_seed(current, label);
    }
    return {current, total};
}

// Breadth-first search for a mutation path turning one seed into another.
// Both seeds must share index set, exchangeable set and weights; matrices are
// compared exactly. Returns an empty optional when no path of length at most
// max_depth exists.
inline std::optional<MutationPath> find_mutation_path(const Seed& from, const Seed& to,
                                                      int max_depth) {
    if (from.index_set != to.index_set || from.exchangeable != to.exchangeable ||
        from.skew_symmetrizer != to.skew_symmetrizer)
        throw MathError("mutation path search requires seeds over the same index data");

    auto key_of = [](const IMat& m) {
        std::vector<long long> k;
        k.reserve(m.rows() * m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
        return k;
    };

    std::map<std::vector<long long>, std::vector<int>> visited;
    visited[key_of(from.matrix)] = {};
    std::vector<IMat> frontier{from.matrix};
    if (from.matrix == to.matrix) return MutationPath{from, {}};

    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<IMat> next;
        for (const IMat& m : frontier) {
            const std::vector<int>& path_here = visited[key_of(m)];
            for (int label : from.exchangeable) {
                IMat mutated = mutate_matrix(m, from.position(label));
                auto key = key_of(mutated);
                if (visited.count(key)) continue;
                std::vector<int> path = path_here;
                path.push_back(label);
                if (mutated == to.matrix) return MutationPath{from, path};
                visited.emplace(std::move(key), std::move(path));
                next.push_back(std::move(mutated));
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return std::nullopt;
}

// Tropical commuting square: mutating then comparing agrees tropically with
// comparing then mutating on the dual side. Checked pointwise on the samples.
inline bool verify_commuting_square(const Seed& seed, const std::vector<int>& directions,
                                    const std::vector<QVec>& samples) {
    auto [primal_end, primal] = path_transition(seed, directions);
    auto [dual_end, dual] = path_transition(dual_seed(seed), directions);
    (void)dual_end;

    std::vector<PosRational> lhs;
    lhs.reserve(primal.size());
    for (std::size_t i = 0; i < primal.size(); ++i)
        lhs.push_back(primal[i].pow(primal_end.skew_symmetrizer[i]));

    std::vector<PosRational> start_comparison = comparison_on_seed(seed);
    std::vector<PosRational> rhs;
    rhs.reserve(dual.size());
    for (const PosRational& comp : dual) rhs.push_back(comp.subst(start_comparison));

    return pl_equal_on(tropicalize_map(lhs), tropicalize_map(rhs), samples);
}

// A seed decorated by a torus factor of rank r: chart variables are the r
// torus coordinates followed by the seed coordinates. psi_H is the integer
// matrix of the torus comparison in the lattice bases.
struct DecoratedSeed {
    int torus_rank = 0;
    Seed seed;
    QMat psi_H;
};

// Comparison map of a decorated seed: monomial map with exponent matrix
// psi_H on the torus block and a_i -> a_i^{d_i} on the seed block.
inline std::vector<PosRational> comparison_on_decorated(const DecoratedSeed& dec) {
    if (!qmat_is_integral(dec.psi_H))
        throw LatticeError("torus comparison matrix is not integral");
    std::size_t r = static_cast<std::size_t>(dec.torus_rank);
    std::size_t n = r + dec.seed.size();
    std::vector<PosRational> comps;
    comps.reserve(n);
    for (std::size_t j = 0; j < r; ++j) {
        LaurentPoly::Exps exps(n, 0);
        for (std::size_t i = 0; i < r; ++i) exps[i] = static_cast<int>(to_ll(rat_num(dec.psi_H(j, i))));
        comps.push_back(PosRational::from_poly(LaurentPoly::monomial(n, exps, Rat(1))));
    }
    for (std::size_t i = 0; i < dec.seed.size(); ++i)
        comps.push_back(PosRational::variable(n, r + i).pow(dec.seed.skew_symmetrizer[i]));
    return comps;
}

}  // namespace tropcell
