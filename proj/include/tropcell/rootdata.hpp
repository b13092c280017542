#pragma once

// Exact root-datum arithmetic for types A (rank <= 3), B2 and C2.
//
// Coordinates: weight-space vectors are stored in the fundamental-weight
// basis (omega-coords) and coweight-space vectors in the fundamental-coweight
// basis (omega-vee-coords), so lattice membership is an integrality test.
// Character and cocharacter lattices are given by integer row bases in those
// coordinates. The twist map psi sends the cocharacter lattice into the
// character lattice whenever the isogeny admits it; its matrix is kept in the
// lattice bases so integrality of psi images is again a plain integer test.

#include "tropcell/matrix.hpp"
#include "tropcell/rational.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace tropcell {

struct UnsupportedType : MathError {
    explicit UnsupportedType(const std::string& what) : MathError(what) {}
};

struct NotReduced : MathError {
    explicit NotReduced(const std::string& what) : MathError(what) {}
};

struct NotDominant : MathError {
    explicit NotDominant(const std::string& what) : MathError(what) {}
};

using IVec = std::vector<long long>;
using QVec = std::vector<Rat>;

inline QVec to_qvec(const IVec& v) {
    QVec q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return q;
}

inline bool qvec_is_integral(const QVec& v) {
    for (const Rat& x : v)
        if (!is_integer(x)) return false;
    return true;
}

inline IVec to_ivec(const QVec& v) {
    if (!qvec_is_integral(v)) throw MathError("vector has non-integral entries");
    IVec z(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) z[i] = to_ll(rat_num(v[i]));
    return z;
}

template <class T>
std::vector<T> vec_add(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw MathError("vector sum shape mismatch");
    std::vector<T> s = a;
    for (std::size_t i = 0; i < b.size(); ++i) s[i] += b[i];
    return s;
}

template <class T>
std::vector<T> vec_sub(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw MathError("vector difference shape mismatch");
    std::vector<T> s = a;
    for (std::size_t i = 0; i < b.size(); ++i) s[i] -= b[i];
    return s;
}

template <class T>
std::vector<T> vec_scale(const T& c, const std::vector<T>& a) {
    std::vector<T> s = a;
    for (auto& v : s) v *= c;
    return s;
}

template <class T, class U>
auto vec_dot(const std::vector<T>& a, const std::vector<U>& b) -> decltype(T(0) * b[0]) {
    if (a.size() != b.size()) throw MathError("dot product shape mismatch");
    decltype(T(0) * b[0]) s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct CartanDatum {
    int rank = 0;
    IMat cartan;                       // a_ij with a_ii = 2, off-diagonal <= 0
    std::vector<long long> symmetrizer;  // d_i, smallest positive integers with a_ij d_j = a_ji d_i
    long long lcm_d = 1;
};

enum class Isogeny { simply_connected, adjoint };

inline std::string isogeny_name(Isogeny iso) {
    return iso == Isogeny::simply_connected ? "simply_connected" : "adjoint";
}

inline Isogeny isogeny_parse(const std::string& name) {
    if (name == "simply_connected" || name == "sc") return Isogeny::simply_connected;
    if (name == "adjoint" || name == "adj") return Isogeny::adjoint;
    throw UnsupportedType("unknown isogeny: " + name);
}

namespace detail {

// Smallest positive integer d_i with a_ij d_j = a_ji d_i, found by propagating
// the ratio constraints along edges of the Coxeter graph and clearing
// denominators per connected component.
inline std::vector<long long> derive_symmetrizer(const IMat& A) {
    std::size_t r = A.rows();
    std::vector<Rat> val(r, Rat(0));
    std::vector<bool> seen(r, false);
    for (std::size_t start = 0; start < r; ++start) {
        if (seen[start]) continue;
        std::vector<std::size_t> queue{start};
        std::vector<std::size_t> component;
        val[start] = Rat(1);
        seen[start] = true;
        while (!queue.empty()) {
            std::size_t i = queue.back();
            queue.pop_back();
            component.push_back(i);
            for (std::size_t j = 0; j < r; ++j) {
                if (i == j || A(i, j) == 0) continue;
                if (A(j, i) == 0) throw MathError("cartan matrix with one-sided edge");
                Rat dj = val[i] * rat(A(j, i)) / rat(A(i, j));
                if (seen[j]) {
                    if (val[j] != dj) throw MathError("cartan matrix admits no symmetrizer");
                } else {
                    val[j] = dj;
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        Int den_lcm = 1;
        for (std::size_t i : component) den_lcm = int_lcm(den_lcm, rat_den(val[i]));
        Int num_gcd = 0;
        for (std::size_t i : component) num_gcd = int_gcd(num_gcd, rat_num(val[i] * Rat(den_lcm)));
        for (std::size_t i : component) val[i] = val[i] * Rat(den_lcm) / Rat(num_gcd);
    }
    std::vector<long long> d(r);
    for (std::size_t i = 0; i < r; ++i) {
        if (!is_integer(val[i]) || val[i] <= 0) throw MathError("cartan matrix admits no symmetrizer");
        d[i] = to_ll(rat_num(val[i]));
    }
    return d;
}

inline void validate_cartan(const CartanDatum& c) {
    std::size_t r = static_cast<std::size_t>(c.rank);
    if (c.cartan.rows() != r || c.cartan.cols() != r) throw MathError("cartan matrix shape mismatch");
    for (std::size_t i = 0; i < r; ++i) {
        if (c.cartan(i, i) != 2) throw MathError("cartan diagonal entry must be 2");
        for (std::size_t j = 0; j < r; ++j) {
            if (i != j && c.cartan(i, j) > 0) throw MathError("off-diagonal cartan entry must be <= 0");
            if (c.cartan(i, j) * c.symmetrizer[j] != c.cartan(j, i) * c.symmetrizer[i])
                throw MathError("symmetrizer does not symmetrize the cartan matrix");
        }
        if (c.symmetrizer[i] <= 0 || c.lcm_d % c.symmetrizer[i] != 0)
            throw MathError("symmetrizer entry does not divide the common multiple");
    }
    QMat AD(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) AD(i, j) = rat(c.cartan(i, j) * c.symmetrizer[j]);
    for (std::size_t k = 1; k <= r; ++k) {
        QMat lead(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) lead(i, j) = AD(i, j);
        if (qmat_det(lead) <= 0) throw MathError("symmetrized cartan matrix is not positive definite");
    }
}

}  // namespace detail

inline CartanDatum make_cartan(const IMat& A) {
    CartanDatum c;
    c.rank = static_cast<int>(A.rows());
    c.cartan = A;
    c.symmetrizer = detail::derive_symmetrizer(A);
    Int l = 1;
    for (long long di : c.symmetrizer) l = int_lcm(l, Int(di));
    c.lcm_d = to_ll(l);
    detail::validate_cartan(c);
    return c;
}

// Root datum of a connected semisimple group with the given character lattice.
//
// char_lattice rows span X^*(H) in omega-coords, cochar_lattice rows span
// X_*(H) in omega-vee-coords, and the two are dual under the canonical
// pairing. psi_matrix maps cocharacter-basis coordinates to character-basis
// coordinates; it is integral exactly when psi preserves the lattices, which
// fails for some quotient groups reached through dualization.
struct RootDatum {
    CartanDatum cartan;
    std::string type;     // "A", "B" or "C"
    Isogeny isogeny = Isogeny::simply_connected;
    IMat char_lattice;    // rows: basis of X^*(H) in omega-coords
    IMat cochar_lattice;  // rows: basis of X_*(H) in omega-vee-coords
    QMat psi_matrix;      // cocharacter-basis coords -> character-basis coords
    bool psi_integral = true;

    int rank() const { return cartan.rank; }
    const IMat& A() const { return cartan.cartan; }
    long long d(int i) const { return cartan.symmetrizer[static_cast<std::size_t>(i - 1)]; }
    long long lcm_d() const { return cartan.lcm_d; }

    // Simple root alpha_i in omega-coords (column i of the Cartan matrix).
    IVec simple_root(int i) const { return A().col(static_cast<std::size_t>(i - 1)); }
    // Simple coroot alpha_i-vee in omega-vee-coords (row i of the Cartan matrix).
    IVec simple_coroot(int i) const { return A().row(static_cast<std::size_t>(i - 1)); }
    IVec fundamental_weight(int i) const {
        IVec e(static_cast<std::size_t>(rank()), 0);
        e[static_cast<std::size_t>(i - 1)] = 1;
        return e;
    }
    IVec fundamental_coweight(int i) const { return fundamental_weight(i); }
    IVec rho() const { return IVec(static_cast<std::size_t>(rank()), 1); }
    IVec rho_vee() const { return rho(); }

    // Gram matrix of the bilinear form on the weight space in omega-coords,
    // normalized by (alpha_i, alpha_j) = a_ij / d_i.
    QMat form_hstar() const {
        QMat ainv_t = qmat_inverse(to_qmat(A().transpose()));
        QMat g(ainv_t.rows(), ainv_t.cols());
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j)
                g(i, j) = ainv_t(i, j) / rat(cartan.symmetrizer[j]);
        return g;
    }

    // Gram matrix on the coweight space in omega-vee-coords, normalized by
    // (alpha_i-vee, alpha_j-vee) = a_ij d_j.
    QMat form_h() const {
        QMat ainv_t = qmat_inverse(to_qmat(A().transpose()));
        QMat g(ainv_t.rows(), ainv_t.cols());
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j)
                g(i, j) = rat(cartan.symmetrizer[i]) * ainv_t(i, j);
        return g;
    }
};

inline RootDatum build_datum(const std::string& type, int rank, Isogeny isogeny) {
    IMat A;
    if (type == "A" && rank >= 1 && rank <= 3) {
        std::size_t n = static_cast<std::size_t>(rank);
        A = IMat(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            A(i, i) = 2;
            if (i + 1 < n) {
                A(i, i + 1) = -1;
                A(i + 1, i) = -1;
            }
        }
    } else if (type == "B" && rank == 2) {
        A = IMat{{2, -1}, {-2, 2}};
    } else if (type == "C" && rank == 2) {
        A = IMat{{2, -2}, {-1, 2}};
    } else {
        throw UnsupportedType("unsupported type/rank: " + type + std::to_string(rank));
    }

    RootDatum dat;
    dat.cartan = make_cartan(A);
    dat.type = type;
    dat.isogeny = isogeny;
    std::size_t r = static_cast<std::size_t>(rank);
    if (isogeny == Isogeny::simply_connected) {
        dat.char_lattice = IMat::identity(r);
        IMat coroots(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) coroots(i, j) = A(i, j);
        dat.cochar_lattice = coroots;
    } else {
        dat.char_lattice = A.transpose();
        dat.cochar_lattice = IMat::identity(r);
    }

    // psi acts as diag(d) from omega-vee-coords to omega-coords; conjugating
    // into the lattice bases gives Ch^{-T} diag(d) Cc^T.
    QMat chinv_t = qmat_inverse(to_qmat(dat.char_lattice.transpose()));
    QMat dcc(r, r);
    const IMat cct = dat.cochar_lattice.transpose();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) dcc(i, j) = rat(dat.cartan.symmetrizer[i] * cct(i, j));
    dat.psi_matrix = chinv_t * dcc;
    dat.psi_integral = qmat_is_integral(dat.psi_matrix);
    if (!dat.psi_integral)
        throw SymmetrizerMismatch("twist map does not preserve the " + isogeny_name(isogeny) +
                                  " lattices for type " + type + std::to_string(rank));
    return dat;
}

namespace detail {

inline bool lattice_subset(const IMat& sub, const IMat& sup) {
    QMat x = to_qmat(sub) * qmat_inverse(to_qmat(sup));
    return qmat_is_integral(x);
}

inline bool lattice_equal(const IMat& a, const IMat& b) {
    return lattice_subset(a, b) && lattice_subset(b, a);
}

}  // namespace detail

// The dual datum swaps character and cocharacter lattices, transposes the
// Cartan matrix and replaces each d_i by d / d_i. The dual twist map can fail
// to preserve the swapped lattices (PSL2 is the basic case); the datum is
// still returned, with psi_integral cleared, and psi_apply rejects points
// whose image is not integral.
inline RootDatum langlands_dual(const RootDatum& dat) {
    RootDatum dual;
    std::size_t r = static_cast<std::size_t>(dat.rank());
    IMat At = dat.A().transpose();
    dual.cartan.rank = dat.rank();
    dual.cartan.cartan = At;
    dual.cartan.symmetrizer.resize(r);
    for (std::size_t i = 0; i < r; ++i)
        dual.cartan.symmetrizer[i] = dat.lcm_d() / dat.cartan.symmetrizer[i];
    Int l = 1;
    for (long long di : dual.cartan.symmetrizer) l = int_lcm(l, Int(di));
    dual.cartan.lcm_d = to_ll(l);
    detail::validate_cartan(dual.cartan);

    if (dat.type == "A") dual.type = "A";
    else if (dat.type == "B") dual.type = "C";
    else if (dat.type == "C") dual.type = "B";
    else throw UnsupportedType("unsupported type: " + dat.type);

    dual.char_lattice = dat.cochar_lattice;
    dual.cochar_lattice = dat.char_lattice;

    Rat chdet = qmat_det(to_qmat(dual.char_lattice));
    if (chdet == 1 || chdet == -1) {
        dual.isogeny = Isogeny::simply_connected;
    } else if (detail::lattice_equal(dual.char_lattice, At.transpose())) {
        dual.isogeny = Isogeny::adjoint;
    } else {
        throw UnsupportedType("dual character lattice is neither full nor root lattice");
    }

    QMat chinv_t = qmat_inverse(to_qmat(dual.char_lattice.transpose()));
    QMat dcc(r, r);
    const IMat cct = dual.cochar_lattice.transpose();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) dcc(i, j) = rat(dual.cartan.symmetrizer[i] * cct(i, j));
    dual.psi_matrix = chinv_t * dcc;
    dual.psi_integral = qmat_is_integral(dual.psi_matrix);
    return dual;
}

// Applies psi to a cocharacter given in cocharacter-basis coordinates and
// returns character-basis coordinates. Both the input and the image must be
// lattice points.
inline QVec psi_apply(const RootDatum& dat, const QVec& covector) {
    if (covector.size() != static_cast<std::size_t>(dat.rank()))
        throw MathError("psi input has wrong dimension");
    if (!qvec_is_integral(covector))
        throw LatticeError("psi input is outside the cocharacter lattice");
    QVec image = dat.psi_matrix.apply(covector);
    if (!qvec_is_integral(image))
        throw LatticeError("psi image is outside the character lattice");
    return image;
}

struct WeylWord {
    std::vector<int> letters;  // simple-reflection indices in [1, rank]
};

namespace detail {

inline void check_letters(const RootDatum& dat, const WeylWord& w) {
    for (int i : w.letters)
        if (i < 1 || i > dat.rank()) throw MathError("weyl word letter out of range");
}

// Simple reflection on alpha-coords of the weight space:
// s_i(alpha_j) = alpha_j - a_ij alpha_i.
inline IMat reflection_alpha(const IMat& A, int i) {
    std::size_t r = A.rows();
    std::size_t k = static_cast<std::size_t>(i - 1);
    IMat t = IMat::identity(r);
    for (std::size_t j = 0; j < r; ++j) t(k, j) -= A(k, j);
    return t;
}

inline std::vector<IVec> positive_root_closure(const IMat& A) {
    std::set<IVec> roots;
    std::vector<IVec> queue;
    std::size_t r = A.rows();
    for (std::size_t i = 0; i < r; ++i) {
        IVec e(r, 0);
        e[i] = 1;
        roots.insert(e);
        queue.push_back(e);
    }
    std::vector<IMat> refl;
    for (int i = 1; i <= static_cast<int>(r); ++i) refl.push_back(reflection_alpha(A, i));
    while (!queue.empty()) {
        IVec c = queue.back();
        queue.pop_back();
        for (const IMat& t : refl) {
            IVec img = t.apply(c);
            bool positive = true;
            for (long long v : img) positive &= (v >= 0);
            if (positive && roots.insert(img).second) queue.push_back(img);
        }
    }
    return std::vector<IVec>(roots.begin(), roots.end());
}

inline IMat word_matrix_alpha(const RootDatum& dat, const WeylWord& w) {
    IMat m = IMat::identity(static_cast<std::size_t>(dat.rank()));
    for (int i : w.letters) m = m * reflection_alpha(dat.A(), i);
    return m;
}

inline long long element_length(const IMat& A, const IMat& action_alpha) {
    long long len = 0;
    for (const IVec& root : positive_root_closure(A)) {
        IVec img = action_alpha.apply(root);
        bool negative = true;
        for (long long v : img) negative &= (v <= 0);
        if (negative) ++len;
    }
    return len;
}

}  // namespace detail

// Action matrices of a word of simple reflections, as products taken left to
// right: on_hstar acts on omega-coords of the weight space, on_h on
// omega-vee-coords of the coweight space.
struct WeylAction {
    QMat on_hstar;
    QMat on_h;
};

inline QMat simple_reflection_hstar(const RootDatum& dat, int i) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    std::size_t k = static_cast<std::size_t>(i - 1);
    QMat s = QMat::identity(r);
    for (std::size_t j = 0; j < r; ++j) s(j, k) -= rat(dat.A()(j, k));
    return s;
}

inline QMat simple_reflection_h(const RootDatum& dat, int i) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    std::size_t k = static_cast<std::size_t>(i - 1);
    QMat s = QMat::identity(r);
    for (std::size_t j = 0; j < r; ++j) s(j, k) -= rat(dat.A()(k, j));
    return s;
}

inline WeylAction weyl(const RootDatum& dat, const WeylWord& w) {
    detail::check_letters(dat, w);
    std::size_t r = static_cast<std::size_t>(dat.rank());
    WeylAction act{QMat::identity(r), QMat::identity(r)};
    for (int i : w.letters) {
        act.on_hstar = act.on_hstar * simple_reflection_hstar(dat, i);
        act.on_h = act.on_h * simple_reflection_h(dat, i);
    }
    return act;
}

inline long long weyl_length(const RootDatum& dat, const WeylWord& w) {
    detail::check_letters(dat, w);
    return detail::element_length(dat.A(), detail::word_matrix_alpha(dat, w));
}

inline bool is_reduced(const RootDatum& dat, const WeylWord& w) {
    return weyl_length(dat, w) == static_cast<long long>(w.letters.size());
}

inline void require_reduced(const RootDatum& dat, const WeylWord& w) {
    if (!is_reduced(dat, w)) throw NotReduced("weyl word is not reduced");
}

// Deterministic reduced word for the longest element: repeatedly reflect the
// dominant vector rho through the smallest simple index whose coordinate is
// still positive.
inline WeylWord longest_word(const RootDatum& dat) {
    std::size_t r = static_cast<std::size_t>(dat.rank());
    IVec lambda(r, 1);
    WeylWord w;
    for (;;) {
        std::size_t k = r;
        for (std::size_t i = 0; i < r; ++i)
            if (lambda[i] > 0) {
                k = i;
                break;
            }
        if (k == r) break;
        long long c = lambda[k];
        for (std::size_t j = 0; j < r; ++j) lambda[j] -= c * dat.A()(j, k);
        w.letters.push_back(static_cast<int>(k + 1));
    }
    return w;
}

// All reduced words of the longest element, in lexicographic order.
inline std::vector<WeylWord> reduced_words_of_w0(const RootDatum& dat) {
    const IMat& A = dat.A();
    std::size_t r = A.rows();
    std::vector<IMat> refl;
    for (int i = 1; i <= static_cast<int>(r); ++i) refl.push_back(detail::reflection_alpha(A, i));

    std::map<std::vector<long long>, std::vector<std::vector<int>>> memo;
    auto key_of = [r](const IMat& m) {
        std::vector<long long> k;
        k.reserve(r * r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) k.push_back(m(i, j));
        return k;
    };

    std::vector<std::vector<int>> empty_word{{}};
    auto solve = [&](auto&& self, const IMat& m, long long len) -> const std::vector<std::vector<int>>& {
        if (len == 0) return empty_word;
        auto key = key_of(m);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<std::vector<int>> words;
        for (std::size_t i = 0; i < r; ++i) {
            IMat rest = refl[i] * m;
            if (detail::element_length(A, rest) != len - 1) continue;
            for (const auto& tail : self(self, rest, len - 1)) {
                std::vector<int> word;
                word.reserve(tail.size() + 1);
                word.push_back(static_cast<int>(i + 1));
                word.insert(word.end(), tail.begin(), tail.end());
                words.push_back(std::move(word));
            }
        }
        return memo.emplace(std::move(key), std::move(words)).first->second;
    };

    WeylWord w0 = longest_word(dat);
    IMat m0 = detail::word_matrix_alpha(dat, w0);
    std::vector<WeylWord> result;
    for (const auto& letters : solve(solve, m0, static_cast<long long>(w0.letters.size())))
        result.push_back(WeylWord{letters});
    return result;
}

// Index i* with alpha_{i*} = -w0(alpha_i).
inline int dual_index(const RootDatum& dat, int i) {
    IMat m0 = detail::word_matrix_alpha(dat, longest_word(dat));
    std::size_t r = static_cast<std::size_t>(dat.rank());
    IVec e(r, 0);
    e[static_cast<std::size_t>(i - 1)] = 1;
    IVec img = m0.apply(e);
    for (std::size_t j = 0; j < r; ++j) {
        IVec cand(r, 0);
        cand[j] = -1;
        if (img == cand) return static_cast<int>(j + 1);
    }
    throw MathError("longest element does not permute the simple roots");
}

// One positive root transported along a reduced word of w0, with coordinates
// in all four standard bases and its squared-length normalizer d_alpha.
struct PositiveRoot {
    IVec root_alpha;       // alpha-coords
    IVec root_omega;       // omega-coords
    IVec coroot_alphavee;  // alpha-vee-coords
    IVec coroot_omegavee;  // omega-vee-coords
    long long d_alpha = 1;
};

// Positive roots enumerated as beta_j = s_{i_1} ... s_{i_{j-1}} (alpha_{i_j})
// along the canonical reduced word of w0; d_alpha equals d_{i_j}.
inline std::vector<PositiveRoot> positive_roots(const RootDatum& dat) {
    WeylWord w0 = longest_word(dat);
    std::size_t r = static_cast<std::size_t>(dat.rank());
    std::vector<PositiveRoot> roots;
    IMat prefix_alpha = IMat::identity(r);
    // Coroot transport uses the reflection action s_i(x) = x - <x, alpha_i> alpha_i-vee
    // written in alpha-vee-coords: subtract a_ji x_j from coordinate i.
    IMat prefix_alphavee = IMat::identity(r);
    for (std::size_t step = 0; step < w0.letters.size(); ++step) {
        int letter = w0.letters[step];
        std::size_t k = static_cast<std::size_t>(letter - 1);
        IVec e(r, 0);
        e[k] = 1;
        PositiveRoot root;
        root.root_alpha = prefix_alpha.apply(e);
        root.coroot_alphavee = prefix_alphavee.apply(e);
        root.root_omega = dat.A().apply(root.root_alpha);
        root.coroot_omegavee = dat.A().transpose().apply(root.coroot_alphavee);
        root.d_alpha = dat.d(letter);
        roots.push_back(std::move(root));

        prefix_alpha = prefix_alpha * detail::reflection_alpha(dat.A(), letter);
        prefix_alphavee = prefix_alphavee * detail::reflection_alpha(dat.A().transpose(), letter);
    }
    return roots;
}

inline bool is_dominant(const RootDatum& dat, const QVec& lambda) {
    if (lambda.size() != static_cast<std::size_t>(dat.rank()))
        throw MathError("weight has wrong dimension");
    for (const Rat& c : lambda)
        if (c < 0) return false;
    return true;
}

// Weyl dimension product over positive roots, exact in the rationals:
// prod (lambda + rho, alpha) / (rho, alpha), evaluated through coroot
// pairings so integral weights stay in integer arithmetic.
inline Rat weyl_dim(const RootDatum& dat, const QVec& lambda) {
    if (!is_dominant(dat, lambda)) throw NotDominant("weight is not dominant");
    QVec shifted = vec_add(lambda, to_qvec(dat.rho()));
    Rat result(1);
    for (const PositiveRoot& root : positive_roots(dat)) {
        Rat num = vec_dot(shifted, to_qvec(root.coroot_alphavee));
        Rat den(0);
        for (long long c : root.coroot_alphavee) den += Rat(c);
        result *= num / den;
    }
    return result;
}

// Checks the two Weyl denominator products: the pairing of rho-vee against
// all positive roots equals the pairing of all positive coroots against rho.
inline bool denominator_identity_check(const RootDatum& dat) {
    Int lhs = 1, rhs = 1;
    for (const PositiveRoot& root : positive_roots(dat)) {
        Int height = 0, coheight = 0;
        for (long long c : root.root_alpha) height += c;
        for (long long c : root.coroot_alphavee) coheight += c;
        lhs *= height;
        rhs *= coheight;
    }
    return lhs == rhs;
}

}  // namespace tropcell
