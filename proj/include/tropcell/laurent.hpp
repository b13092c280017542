#pragma once

// Exact Laurent polynomials over the rationals in a fixed number of named
// variables. Exponents may be negative; coefficients are arbitrary-precision
// rationals. Terms are kept in a sorted map so iteration order, printing and
// serialization are deterministic.

#include "tropcell/rational.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tropcell {

struct VariableContextError : MathError {
    explicit VariableContextError(const std::string& what) : MathError(what) {}
};

inline Rat rat_pow(const Rat& base, long long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw MathError("zero raised to a negative power");
        return Rat(0);
    }
    Rat b = base;
    long long n = e;
    if (n < 0) {
        b = Rat(1) / b;
        n = -n;
    }
    Rat acc(1);
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

class LaurentPoly {
public:
    using Exps = std::vector<int>;
    using TermMap = std::map<Exps, Rat>;

    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

    static LaurentPoly zero(std::size_t nvars) { return LaurentPoly(nvars); }

    static LaurentPoly constant(std::size_t nvars, const Rat& c) {
        LaurentPoly p(nvars);
        if (c != 0) p.terms_[Exps(nvars, 0)] = c;
        return p;
    }

    static LaurentPoly monomial(std::size_t nvars, const Exps& e, const Rat& c) {
        if (e.size() != nvars) throw VariableContextError("monomial exponent arity mismatch");
        LaurentPoly p(nvars);
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    static LaurentPoly variable(std::size_t nvars, std::size_t i, int exp = 1) {
        if (i >= nvars) throw VariableContextError("variable index out of range");
        Exps e(nvars, 0);
        e[i] = exp;
        return monomial(nvars, e, Rat(1));
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_monomial() const { return terms_.size() == 1; }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (int e : terms_.begin()->first)
            if (e != 0) return false;
        return true;
    }

    Rat constant_value() const {
        if (is_zero()) return Rat(0);
        if (!is_constant()) throw MathError("not a constant polynomial");
        return terms_.begin()->second;
    }

    bool operator==(const LaurentPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly operator+(const LaurentPoly& o) const {
        check_context(o);
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

    LaurentPoly operator*(const LaurentPoly& o) const {
        check_context(o);
        LaurentPoly r(nvars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                Exps e(nvars_);
                for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    LaurentPoly operator*(const Rat& c) const {
        LaurentPoly r(nvars_);
        if (c == 0) return r;
        r.terms_ = terms_;
        for (auto& [e, v] : r.terms_) v *= c;
        return r;
    }

    LaurentPoly pow(unsigned k) const {
        LaurentPoly acc = constant(nvars_, Rat(1));
        LaurentPoly b = *this;
        while (k > 0) {
            if (k & 1) acc = acc * b;
            b = b * b;
            k >>= 1;
        }
        return acc;
    }

    // Multiplies by the single monomial with exponent vector e.
    LaurentPoly shift(const Exps& e) const {
        if (e.size() != nvars_) throw VariableContextError("shift arity mismatch");
        LaurentPoly r(nvars_);
        for (const auto& [ea, c] : terms_) {
            Exps en(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) en[i] = ea[i] + e[i];
            r.terms_[en] = c;
        }
        return r;
    }

    Rat eval(const std::vector<Rat>& x) const {
        if (x.size() != nvars_) throw VariableContextError("evaluation arity mismatch");
        Rat acc(0);
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] != 0) t *= rat_pow(x[i], e[i]);
            acc += t;
        }
        return acc;
    }

    // Componentwise minimum of exponents over all terms (the monomial content
    // of the support); used to pull a common monomial factor out of fractions.
    Exps support_min() const {
        if (terms_.empty()) return Exps(nvars_, 0);
        Exps m = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] < m[i]) m[i] = e[i];
        return m;
    }

    const std::pair<const Exps, Rat>& leading_term() const {
        if (terms_.empty()) throw MathError("leading term of zero polynomial");
        return *terms_.begin();
    }

    std::string str(const std::vector<std::string>& names) const {
        if (names.size() != nvars_) throw VariableContextError("name list arity mismatch");
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rat a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool any_var = false;
            std::ostringstream mono;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (any_var) mono << "*";
                any_var = true;
                mono << names[i];
                if (e[i] != 1) mono << "^" << e[i];
            }
            if (!any_var) {
                os << rat_str(a);
            } else {
                if (a != 1) os << rat_str(a) << "*";
                os << mono.str();
            }
        }
        return os.str();
    }

private:
    void check_context(const LaurentPoly& o) const {
        if (nvars_ != o.nvars_) throw VariableContextError("variable context mismatch");
    }

    void add_term(const Exps& e, const Rat& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    std::size_t nvars_ = 0;
    TermMap terms_;
};

inline LaurentPoly operator*(const Rat& c, const LaurentPoly& p) { return p * c; }

// Determinant of a square matrix of Laurent polynomials by column expansion
// with memoization over row subsets. Division-free, exact, fine up to n = 8.
inline LaurentPoly laurent_det(const std::vector<std::vector<LaurentPoly>>& m) {
    std::size_t n = m.size();
    if (n == 0) throw MathError("determinant of empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw MathError("determinant of non-square matrix");
    if (n > 20) throw MathError("laurent_det supports matrices up to size 20");
    std::size_t nv = m[0][0].nvars();

    // minors[mask] = det of the submatrix on rows in mask, first popcount(mask) columns
    std::map<unsigned, LaurentPoly> minors;
    minors[0] = LaurentPoly::constant(nv, Rat(1));
    std::vector<unsigned> masks;
    for (unsigned mask = 1; mask < (1u << n); ++mask) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    for (unsigned mask : masks) {
        int col = __builtin_popcount(mask) - 1;
        LaurentPoly acc(nv);
        int parity = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (!(mask & (1u << r))) continue;
            const LaurentPoly& entry = m[r][col];
            if (!entry.is_zero()) {
                LaurentPoly contrib = minors[mask ^ (1u << r)] * entry;
                acc = ((parity + col) % 2 == 0) ? acc + contrib : acc - contrib;
            }
            ++parity;
        }
        minors[mask] = acc;
    }
    return minors[(1u << n) - 1];
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < p.nvars(); ++i) names.push_back("x" + std::to_string(i + 1));
    return os << p.str(names);
}

}  // namespace tropcell
