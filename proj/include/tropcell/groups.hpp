#pragma once
// Symbolic elements of a semisimple group, kept as words in one-parameter
// generators so that antiautomorphisms act on the generator level, together
// with their matrices in the registered representations. On top of that:
// generalized minors, triangular decomposition, double words with their
// exchange matrices, factorization charts and the transition from a
// factorization chart to the cluster chart of minors, both as exact
// subtraction-free expressions and tropically.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"
#include "matrix.hpp"
#include "polyhedra.hpp"
#include "posrational.hpp"
#include "repdata.hpp"
#include "rootdata.hpp"
#include "seed.hpp"
#include "tropical.hpp"

namespace tropcell {

struct NotDecomposable : MathError {
    using MathError::MathError;
};

// ---------------------------------------------------------------------------
// Quotients of Laurent polynomials. Factors of a triangular decomposition
// live here because they need not be subtraction free.

struct LaurentFrac {
    LaurentPoly num;
    LaurentPoly den;
};

inline LaurentFrac frac_make(LaurentPoly num, LaurentPoly den) {
    if (den.is_zero()) throw MathError("zero denominator");
    if (num.is_zero()) return LaurentFrac{LaurentPoly(num.nvars()), LaurentPoly::constant(den.nvars(), Rat(1))};
    LaurentPoly::Exps en = num.support_min();
    LaurentPoly::Exps ed = den.support_min();
    LaurentPoly::Exps common(en.size());
    for (std::size_t i = 0; i < en.size(); ++i) common[i] = -std::min(en[i], ed[i]);
    return LaurentFrac{num.shift(common), den.shift(common)};
}

inline LaurentFrac frac_from_poly(const LaurentPoly& p) {
    return LaurentFrac{p, LaurentPoly::constant(p.nvars(), Rat(1))};
}

inline LaurentFrac frac_mul(const LaurentFrac& a, const LaurentFrac& b) {
    return frac_make(a.num * b.num, a.den * b.den);
}

inline LaurentFrac frac_add(const LaurentFrac& a, const LaurentFrac& b) {
    return frac_make(a.num * b.den + b.num * a.den, a.den * b.den);
}

inline bool frac_equal(const LaurentFrac& a, const LaurentFrac& b) {
    return a.num * b.den == b.num * a.den;
}

inline Rat frac_eval(const LaurentFrac& a, const std::vector<Rat>& x) {
    Rat d = a.den.eval(x);
    if (d == 0) throw MathError("fraction denominator vanishes at the sample point");
    return a.num.eval(x) / d;
}

// ---------------------------------------------------------------------------
// Symbolic group elements.

struct GroupToken {
    enum class Kind { upper, lower, coweight, torus };
    Kind kind = Kind::upper;
    std::size_t letter = 0;  // 1-based simple letter; unused for torus tokens
    LaurentPoly arg;         // parameter of upper/lower, monomial argument of coweight
    bool inverted = false;   // torus tokens only
};

struct SymbolicGroupElement {
    std::size_t nvars = 0;
    std::vector<GroupToken> tokens;
};

inline SymbolicGroupElement group_mul(const SymbolicGroupElement& a, const SymbolicGroupElement& b) {
    if (a.nvars != b.nvars) throw VariableContextError("group element context mismatch");
    SymbolicGroupElement p = a;
    p.tokens.insert(p.tokens.end(), b.tokens.begin(), b.tokens.end());
    return p;
}

inline LaurentPoly monomial_inverse(const LaurentPoly& m) {
    if (m.terms().size() != 1) throw MathError("inverse of a non-monomial");
    const auto& [e, c] = *m.terms().begin();
    LaurentPoly::Exps inv(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
    return LaurentPoly::monomial(m.nvars(), inv, Rat(1) / c);
}

inline LaurentPoly monomial_power(const LaurentPoly& m, long long k) {
    if (m.terms().size() != 1) throw MathError("power of a non-monomial");
    const auto& [e, c] = *m.terms().begin();
    LaurentPoly::Exps pe(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) pe[i] = e[i] * static_cast<int>(k);
    return LaurentPoly::monomial(m.nvars(), pe, rat_pow(c, k));
}

// One-parameter generator for a signed letter: a raising generator for a
// positive letter and, for a negative letter, the lowering generator times
// the coweight one-parameter subgroup at the inverted parameter.
inline SymbolicGroupElement elementary(const RootDatum& dat, std::size_t nvars, long long letter,
                                       const LaurentPoly& t) {
    if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > dat.rank())
        throw MathError("letter out of range");
    if (t.nvars() != nvars) throw VariableContextError("parameter context mismatch");
    SymbolicGroupElement g;
    g.nvars = nvars;
    std::size_t i = static_cast<std::size_t>(std::abs(letter));
    if (letter > 0) {
        g.tokens.push_back(GroupToken{GroupToken::Kind::upper, i, t, false});
    } else {
        g.tokens.push_back(GroupToken{GroupToken::Kind::lower, i, t, false});
        g.tokens.push_back(GroupToken{GroupToken::Kind::coweight, i, monomial_inverse(t), false});
    }
    return g;
}

inline SymbolicGroupElement lower_elementary(const RootDatum& dat, std::size_t nvars,
                                             std::size_t letter, const LaurentPoly& t) {
    if (letter < 1 || letter > dat.rank()) throw MathError("letter out of range");
    SymbolicGroupElement g;
    g.nvars = nvars;
    g.tokens.push_back(GroupToken{GroupToken::Kind::lower, letter, t, false});
    return g;
}

inline SymbolicGroupElement coweight_torus(const RootDatum& dat, std::size_t nvars,
                                           std::size_t letter, const LaurentPoly& c) {
    if (letter < 1 || letter > dat.rank()) throw MathError("letter out of range");
    if (c.terms().size() != 1) throw MathError("coweight argument must be a monomial");
    SymbolicGroupElement g;
    g.nvars = nvars;
    g.tokens.push_back(GroupToken{GroupToken::Kind::coweight, letter, c, false});
    return g;
}

// A torus element whose coordinates in the cocharacter basis of the datum
// are the first rank variables of the chart.
inline SymbolicGroupElement generic_torus(const RootDatum& dat, std::size_t nvars) {
    if (nvars < dat.rank()) throw VariableContextError("chart too small for a torus block");
    SymbolicGroupElement g;
    g.nvars = nvars;
    g.tokens.push_back(GroupToken{GroupToken::Kind::torus, 0, LaurentPoly(), false});
    return g;
}

// Lift of a Weyl group element along a reduced word, letter by letter.
inline SymbolicGroupElement coxeter_lift(const RootDatum& dat, const WeylWord& w, std::size_t nvars) {
    require_reduced(dat, w);
    SymbolicGroupElement g;
    g.nvars = nvars;
    LaurentPoly one = LaurentPoly::constant(nvars, Rat(1));
    LaurentPoly minus_one = LaurentPoly::constant(nvars, Rat(-1));
    for (int i : w.letters) {
        std::size_t l = static_cast<std::size_t>(i);
        g.tokens.push_back(GroupToken{GroupToken::Kind::upper, l, minus_one, false});
        g.tokens.push_back(GroupToken{GroupToken::Kind::lower, l, one, false});
        g.tokens.push_back(GroupToken{GroupToken::Kind::upper, l, minus_one, false});
    }
    return g;
}

inline SymbolicGroupElement coxeter_lift_inverse(const RootDatum& dat, const WeylWord& w,
                                                 std::size_t nvars) {
    require_reduced(dat, w);
    SymbolicGroupElement g;
    g.nvars = nvars;
    LaurentPoly one = LaurentPoly::constant(nvars, Rat(1));
    LaurentPoly minus_one = LaurentPoly::constant(nvars, Rat(-1));
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        std::size_t l = static_cast<std::size_t>(*it);
        g.tokens.push_back(GroupToken{GroupToken::Kind::upper, l, one, false});
        g.tokens.push_back(GroupToken{GroupToken::Kind::lower, l, minus_one, false});
        g.tokens.push_back(GroupToken{GroupToken::Kind::upper, l, one, false});
    }
    return g;
}

enum class GroupInvolution { transpose, positive_inverse };

// The two antiautomorphisms used throughout: the transpose swaps raising
// and lowering generators and fixes the torus; the positive inverse fixes
// the unipotent generators and inverts the torus.
inline SymbolicGroupElement transpose_iota(const SymbolicGroupElement& g, GroupInvolution kind) {
    SymbolicGroupElement out;
    out.nvars = g.nvars;
    out.tokens.reserve(g.tokens.size());
    for (auto it = g.tokens.rbegin(); it != g.tokens.rend(); ++it) {
        GroupToken t = *it;
        if (kind == GroupInvolution::transpose) {
            if (t.kind == GroupToken::Kind::upper)
                t.kind = GroupToken::Kind::lower;
            else if (t.kind == GroupToken::Kind::lower)
                t.kind = GroupToken::Kind::upper;
        } else {
            if (t.kind == GroupToken::Kind::coweight)
                t.arg = monomial_inverse(t.arg);
            else if (t.kind == GroupToken::Kind::torus)
                t.inverted = !t.inverted;
        }
        out.tokens.push_back(std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rendering elements as matrices.

using LaurentMat = std::vector<std::vector<LaurentPoly>>;

inline LaurentMat laurent_identity(std::size_t dim, std::size_t nvars) {
    LaurentMat m(dim, std::vector<LaurentPoly>(dim, LaurentPoly(nvars)));
    for (std::size_t i = 0; i < dim; ++i) m[i][i] = LaurentPoly::constant(nvars, Rat(1));
    return m;
}

inline LaurentMat laurent_mat_mul(const LaurentMat& a, const LaurentMat& b) {
    std::size_t n = a.size();
    std::size_t nv = a[0][0].nvars();
    LaurentMat p(n, std::vector<LaurentPoly>(n, LaurentPoly(nv)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[k][j].is_zero()) continue;
                p[i][j] = p[i][j] + a[i][k] * b[k][j];
            }
        }
    return p;
}

inline QMat qmat_exp_nilpotent(const QMat& n) {
    QMat acc = QMat::identity(n.rows());
    QMat term = QMat::identity(n.rows());
    for (std::size_t k = 1;; ++k) {
        term = term * n * (Rat(1) / Rat(static_cast<long long>(k)));
        bool zero = true;
        for (std::size_t i = 0; i < term.rows() && zero; ++i)
            for (std::size_t j = 0; j < term.cols(); ++j)
                if (term(i, j) != 0) {
                    zero = false;
                    break;
                }
        if (zero) break;
        acc = acc + term;
        if (k > n.rows()) throw MathError("generator is not nilpotent");
    }
    return acc;
}

// Pairing exponents of a character against the cocharacter basis of the
// datum: the monomial a torus point raises to the given weight.
inline std::vector<Rat> torus_char_exponents(const RootDatum& dat, const std::vector<Rat>& mu_omega) {
    QMat a_inv = qmat_inverse(to_qmat(dat.A()));
    std::vector<Rat> in_coroots = a_inv.apply(mu_omega);
    return to_qmat(dat.cochar_lattice).apply(in_coroots);
}

inline std::vector<Rat> torus_char_exponents(const RootDatum& dat, const IVec& mu_omega) {
    return torus_char_exponents(dat, to_qvec(mu_omega));
}

namespace detail {

inline LaurentMat unipotent_token_matrix(const QMat& gen, const LaurentPoly& t, std::size_t nvars) {
    std::size_t dim = gen.rows();
    LaurentMat m = laurent_identity(dim, nvars);
    QMat power = gen;
    LaurentPoly tpow = t;
    Rat factorial(1);
    for (std::size_t k = 1;; ++k) {
        factorial *= Rat(static_cast<long long>(k));
        bool zero = true;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (power(i, j) != 0) {
                    zero = false;
                    m[i][j] = m[i][j] + tpow * (power(i, j) / factorial);
                }
        if (zero) break;
        power = power * gen;
        tpow = tpow * t;
        if (k > dim) throw MathError("generator is not nilpotent");
    }
    return m;
}

}  // namespace detail

// Matrix of a symbolic element in one registered representation. Generic
// torus tokens need every basis weight to pair integrally with the
// cocharacter basis of the chosen isogeny.
inline LaurentMat rep_matrix(const GroupModel& model, const RepData& rep,
                             const SymbolicGroupElement& g) {
    const RootDatum& dat = model.datum;
    LaurentMat acc = laurent_identity(rep.dim, g.nvars);
    for (const GroupToken& tok : g.tokens) {
        LaurentMat m;
        switch (tok.kind) {
            case GroupToken::Kind::upper:
                m = detail::unipotent_token_matrix(rep.E[tok.letter - 1], tok.arg, g.nvars);
                break;
            case GroupToken::Kind::lower:
                m = detail::unipotent_token_matrix(rep.F[tok.letter - 1], tok.arg, g.nvars);
                break;
            case GroupToken::Kind::coweight: {
                m = LaurentMat(rep.dim, std::vector<LaurentPoly>(rep.dim, LaurentPoly(g.nvars)));
                for (std::size_t b = 0; b < rep.dim; ++b)
                    m[b][b] = monomial_power(tok.arg, rep.weights[b][tok.letter - 1]);
                break;
            }
            case GroupToken::Kind::torus: {
                m = LaurentMat(rep.dim, std::vector<LaurentPoly>(rep.dim, LaurentPoly(g.nvars)));
                for (std::size_t b = 0; b < rep.dim; ++b) {
                    std::vector<Rat> exps = torus_char_exponents(dat, rep.weights[b]);
                    LaurentPoly::Exps e(g.nvars, 0);
                    for (std::size_t j = 0; j < exps.size(); ++j) {
                        if (!is_integer(exps[j]))
                            throw LatticeError("basis weight pairs fractionally with the torus");
                        long long v = to_ll(rat_num(exps[j]));
                        e[j] = static_cast<int>(tok.inverted ? -v : v);
                    }
                    m[b][b] = LaurentPoly::monomial(g.nvars, e, Rat(1));
                }
                break;
            }
        }
        acc = laurent_mat_mul(acc, m);
    }
    return acc;
}

inline QMat simple_reflection_matrix(const RepData& rep, std::size_t letter, bool inverse) {
    const QMat& e = rep.E[letter - 1];
    const QMat& f = rep.F[letter - 1];
    if (!inverse)
        return qmat_exp_nilpotent(-e) * qmat_exp_nilpotent(f) * qmat_exp_nilpotent(-e);
    return qmat_exp_nilpotent(e) * qmat_exp_nilpotent(-f) * qmat_exp_nilpotent(e);
}

inline QMat weyl_lift_matrix(const RootDatum& dat, const RepData& rep, const WeylWord& w) {
    require_reduced(dat, w);
    QMat acc = QMat::identity(rep.dim);
    for (int i : w.letters) acc = acc * simple_reflection_matrix(rep, static_cast<std::size_t>(i), false);
    return acc;
}

inline QMat weyl_lift_matrix_inverse(const RootDatum& dat, const RepData& rep, const WeylWord& w) {
    require_reduced(dat, w);
    QMat acc = QMat::identity(rep.dim);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        acc = acc * simple_reflection_matrix(rep, static_cast<std::size_t>(*it), true);
    return acc;
}

// ---------------------------------------------------------------------------
// Generalized minors.

// Minor attached to a pair of Weyl translates of one fundamental weight:
// the highest coefficient of the element conjugated by the chosen lifts.
// In a weight-ordered basis that is the bilinear pairing of the first row
// of the left lift inverse with the first column of the right lift.
inline LaurentPoly generalized_minor(const GroupModel& model, const SymbolicGroupElement& g,
                                     const WeylWord& u, const WeylWord& v, std::size_t fund_index) {
    const RepData& rep = model.rep(fund_index);
    QMat left = weyl_lift_matrix_inverse(model.datum, rep, u);
    QMat right = weyl_lift_matrix(model.datum, rep, v);
    LaurentMat m = rep_matrix(model, rep, g);
    LaurentPoly out(g.nvars);
    for (std::size_t b = 0; b < rep.dim; ++b) {
        if (left(0, b) == 0) continue;
        for (std::size_t c = 0; c < rep.dim; ++c) {
            if (right(c, 0) == 0 || m[b][c].is_zero()) continue;
            out = out + m[b][c] * (left(0, b) * right(c, 0));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Triangular decomposition.

struct GaussLDU {
    std::vector<std::vector<LaurentFrac>> lower;
    std::vector<LaurentFrac> diag;
    std::vector<std::vector<LaurentFrac>> upper;
};

namespace detail {

inline LaurentPoly submatrix_det(const LaurentMat& m, const std::vector<std::size_t>& rows,
                                 const std::vector<std::size_t>& cols) {
    LaurentMat sub(rows.size(), std::vector<LaurentPoly>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) sub[i][j] = m[rows[i]][cols[j]];
    return laurent_det(sub);
}

}  // namespace detail

// Decomposes a square matrix over Laurent polynomials as lower unipotent
// times diagonal times upper unipotent, with every factor a ratio of
// bordered minors. Fails when a leading principal minor vanishes
// identically.
inline GaussLDU gaussian_decompose(const LaurentMat& m) {
    std::size_t n = m.size();
    std::size_t nv = m[0][0].nvars();
    std::vector<LaurentPoly> principal(n + 1);
    principal[0] = LaurentPoly::constant(nv, Rat(1));
    std::vector<std::size_t> lead;
    for (std::size_t k = 1; k <= n; ++k) {
        lead.push_back(k - 1);
        principal[k] = detail::submatrix_det(m, lead, lead);
        if (principal[k].is_zero())
            throw NotDecomposable("leading principal minor " + std::to_string(k) + " vanishes");
    }
    GaussLDU out;
    LaurentFrac zero = frac_from_poly(LaurentPoly(nv));
    LaurentFrac one = frac_from_poly(LaurentPoly::constant(nv, Rat(1)));
    out.lower.assign(n, std::vector<LaurentFrac>(n, zero));
    out.upper.assign(n, std::vector<LaurentFrac>(n, zero));
    out.diag.assign(n, one);
    for (std::size_t k = 0; k < n; ++k) {
        out.lower[k][k] = one;
        out.upper[k][k] = one;
        out.diag[k] = frac_make(principal[k + 1], principal[k]);
        std::vector<std::size_t> base;
        for (std::size_t p = 0; p < k; ++p) base.push_back(p);
        for (std::size_t i = k + 1; i < n; ++i) {
            std::vector<std::size_t> rows = base;
            rows.push_back(i);
            std::vector<std::size_t> cols = base;
            cols.push_back(k);
            out.lower[i][k] = frac_make(detail::submatrix_det(m, rows, cols), principal[k + 1]);
            out.upper[k][i] = frac_make(detail::submatrix_det(m, cols, rows), principal[k + 1]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Double words.

struct DoubleWord {
    std::size_t rank = 0;
    std::vector<int> letters;  // nonzero signed letters, absolute value within the rank

    std::size_t size() const { return letters.size(); }

    // Signed letter at an index of the extended range [-rank,-1] or [1,n].
    int letter_at(int k) const {
        if (k < 0) {
            if (static_cast<std::size_t>(-k) > rank) throw MathError("word index out of range");
            return k;
        }
        if (k < 1 || static_cast<std::size_t>(k) > letters.size())
            throw MathError("word index out of range");
        return letters[static_cast<std::size_t>(k) - 1];
    }
};

// Validates a double word: the negative letters must read off a reduced
// word, and the positive letters must read off a reduced word from right
// to left.
inline DoubleWord make_double_word(const RootDatum& dat, const std::vector<int>& letters) {
    for (int l : letters)
        if (l == 0 || static_cast<std::size_t>(std::abs(l)) > dat.rank())
            throw MathError("letter out of range");
    WeylWord neg, pos_rev;
    for (int l : letters)
        if (l < 0) neg.letters.push_back(-l);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        if (*it > 0) pos_rev.letters.push_back(*it);
    require_reduced(dat, neg);
    require_reduced(dat, pos_rev);
    return DoubleWord{static_cast<std::size_t>(dat.rank()), letters};
}

// Next index carrying the same letter, or n+1 when there is none. Negative
// indices point at the first occurrence of their letter in the word.
inline int next_same_letter(const DoubleWord& dw, int k) {
    int n = static_cast<int>(dw.size());
    int target = std::abs(dw.letter_at(k));
    for (int l = (k < 0 ? 1 : k + 1); l <= n; ++l)
        if (std::abs(dw.letter_at(l)) == target) return l;
    return n + 1;
}

inline std::vector<int> exchangeable_positions(const DoubleWord& dw) {
    std::vector<int> out;
    int n = static_cast<int>(dw.size());
    for (int k = 1; k <= n; ++k)
        if (next_same_letter(dw, k) <= n) out.push_back(k);
    return out;
}

inline std::vector<int> seed_index_set(const DoubleWord& dw) {
    std::vector<int> out;
    for (int k = -static_cast<int>(dw.rank); k <= -1; ++k) out.push_back(k);
    std::vector<int> ex = exchangeable_positions(dw);
    out.insert(out.end(), ex.begin(), ex.end());
    return out;
}

// Prefix of the negative half and suffix of the positive half of the word,
// the Weyl elements flanking the minor at each index.
inline WeylWord left_prefix(const DoubleWord& dw, int k) {
    WeylWord w;
    for (int l = 1; l <= k && l <= static_cast<int>(dw.size()); ++l)
        if (dw.letter_at(l) < 0) w.letters.push_back(-dw.letter_at(l));
    return w;
}

inline WeylWord right_suffix(const DoubleWord& dw, int k) {
    WeylWord w;
    for (int l = static_cast<int>(dw.size()); l >= k + 1 && l >= 1; --l)
        if (dw.letter_at(l) > 0) w.letters.push_back(dw.letter_at(l));
    return w;
}

inline int sign_of(long long x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Exchange matrix of a double word over the seed index set.
inline IMat word_matrix(const RootDatum& dat, const DoubleWord& dw) {
    std::vector<int> idx = seed_index_set(dw);
    int n = static_cast<int>(dw.size());
    IMat m(idx.size(), idx.size(), 0);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) {
            int k = idx[a], l = idx[b];
            if (k == l) continue;
            int kp = next_same_letter(dw, k);
            int lp = next_same_letter(dw, l);
            int p = std::max(k, l);
            int q = std::min(kp, lp);
            int eps_kl = sign_of(k - l);
            int eps_ip = sign_of(dw.letter_at(p));
            long long val = 0;
            if (p == q) {
                val = -eps_kl * eps_ip;
            } else if (p < q && q <= n) {
                int eps_iq = sign_of(dw.letter_at(q));
                if (eps_ip * eps_iq * sign_of(k - l) * sign_of(kp - lp) > 0) {
                    std::size_t ik = static_cast<std::size_t>(std::abs(dw.letter_at(k)));
                    std::size_t il = static_cast<std::size_t>(std::abs(dw.letter_at(l)));
                    val = -eps_kl * eps_ip * dat.A()(ik - 1, il - 1);
                }
            }
            m(a, b) = val;
        }
    return m;
}

inline Seed word_seed(const RootDatum& dat, const DoubleWord& dw) {
    Seed s;
    s.index_set = seed_index_set(dw);
    s.exchangeable = exchangeable_positions(dw);
    s.matrix = word_matrix(dat, dw);
    for (int k : s.index_set) {
        std::size_t letter = static_cast<std::size_t>(std::abs(dw.letter_at(k)));
        s.skew_symmetrizer.push_back(dat.d(letter));
    }
    s.d = dat.lcm_d();
    validate_seed(s);
    return s;
}

inline DecoratedSeed word_decorated_seed(const RootDatum& dat, const DoubleWord& dw) {
    DecoratedSeed ds;
    ds.torus_rank = static_cast<int>(dat.rank());
    ds.seed = word_seed(dat, dw);
    ds.psi_H = dat.psi_matrix;
    return ds;
}

// ---------------------------------------------------------------------------
// Charts.

// Product of the one-parameter generators of the word, one chart variable
// per position; with a torus block the element is the generic torus times
// that product and the torus coordinates occupy the first rank variables.
inline SymbolicGroupElement chart_element(const GroupModel& model, const DoubleWord& dw,
                                          bool with_torus) {
    const RootDatum& dat = model.datum;
    std::size_t r = dat.rank();
    std::size_t n = dw.size();
    std::size_t nvars = with_torus ? r + n : n;
    std::size_t offset = with_torus ? r : 0;
    SymbolicGroupElement g;
    g.nvars = nvars;
    if (with_torus) g = generic_torus(dat, nvars);
    for (std::size_t k = 0; k < n; ++k) {
        LaurentPoly t = LaurentPoly::variable(nvars, offset + k);
        g = group_mul(g, elementary(dat, nvars, dw.letters[k], t));
    }
    return g;
}

inline SymbolicGroupElement factorization_chart(const GroupModel& model, const DoubleWord& dw) {
    return chart_element(model, dw, true);
}

// The minor at one extended index of the word, evaluated on a symbolic
// element.
inline LaurentPoly word_minor(const GroupModel& model, const DoubleWord& dw,
                              const SymbolicGroupElement& g, int k) {
    if (k < 0) {
        WeylWord u;
        WeylWord v = right_suffix(dw, 0);
        std::reverse(v.letters.begin(), v.letters.end());
        return generalized_minor(model, g, u, v, static_cast<std::size_t>(-k));
    }
    WeylWord u = left_prefix(dw, k);
    WeylWord v = right_suffix(dw, k);
    return generalized_minor(model, g, u, v, static_cast<std::size_t>(std::abs(dw.letter_at(k))));
}

// All minors of the word on the factorization chart, in extended index
// order: negatives ascending, then positions left to right. Each one is a
// subtraction-free expression in the chart variables.
inline std::vector<PosRational> chart_transition_to_cluster(const GroupModel& model,
                                                            const DoubleWord& dw) {
    SymbolicGroupElement g = factorization_chart(model, dw);
    std::vector<PosRational> out;
    int r = static_cast<int>(model.datum.rank());
    int n = static_cast<int>(dw.size());
    for (int k = -r; k <= n; ++k) {
        if (k == 0) continue;
        auto [sign, pr] = positivity_normalize(word_minor(model, dw, g, k));
        if (sign != 1) throw MathError("minor is negative on the positive chart");
        out.push_back(pr);
    }
    return out;
}

// Tropicalization of the same transition, assembled without rendering the
// generic torus in any representation: the torus contributes a linear form
// with the pairing coefficients of the minor weight, the rest is the
// tropicalized minor of the unipotent part. Works for every isogeny, at
// the price of rational coefficients on the torus block.
inline PLMap tropical_transition(const GroupModel& model, const DoubleWord& dw) {
    const RootDatum& dat = model.datum;
    std::size_t r = dat.rank();
    std::size_t n = dw.size();
    std::size_t nv = r + n;
    SymbolicGroupElement z = chart_element(model, dw, false);
    std::vector<TropDiff> comps;
    for (int k = -static_cast<int>(r); k <= static_cast<int>(n); ++k) {
        if (k == 0) continue;
        std::vector<Rat> mu;
        if (k < 0) {
            mu = to_qvec(dat.fundamental_weight(static_cast<std::size_t>(-k)));
        } else {
            WeylAction act = weyl(dat, left_prefix(dw, k));
            std::size_t i = static_cast<std::size_t>(std::abs(dw.letter_at(k)));
            mu = act.on_hstar.apply(to_qvec(dat.fundamental_weight(i)));
        }
        std::vector<Rat> hcoefs = torus_char_exponents(dat, mu);
        auto [sign, pr] = positivity_normalize(word_minor(model, dw, z, k));
        if (sign != 1) throw MathError("minor is negative on the positive chart");
        TropDiff zt = tropicalize(pr);
        auto embed = [&](const TropPoly& t, bool with_h) {
            std::vector<TropForm> forms;
            for (const TropForm& f : t.forms()) {
                TropForm g;
                g.a.assign(nv, Rat(0));
                if (with_h)
                    for (std::size_t j = 0; j < r; ++j) g.a[j] = hcoefs[j];
                for (std::size_t j = 0; j < n; ++j) g.a[r + j] = f.a[j];
                g.b = f.b;
                forms.push_back(std::move(g));
            }
            return TropPoly(nv, forms);
        };
        comps.push_back(TropDiff{embed(zt.num, true), embed(zt.den, false)});
    }
    return PLMap(nv, std::move(comps));
}

// Scaling exponents of the comparison map in minor coordinates, one per
// extended index in transition order.
inline std::vector<long long> minor_scaling_exponents(const RootDatum& dat, const DoubleWord& dw) {
    std::vector<long long> out;
    for (int k = -static_cast<int>(dat.rank()); k <= static_cast<int>(dw.size()); ++k) {
        if (k == 0) continue;
        out.push_back(dat.d(static_cast<std::size_t>(std::abs(dw.letter_at(k)))));
    }
    return out;
}

}  // namespace tropcell
