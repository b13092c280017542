#pragma once

// Min-plus shadows of subtraction-free expressions. A TropPoly is a finite
// set of affine forms whose pointwise minimum is the tropicalization of a
// positive Laurent polynomial; a TropDiff is the difference coming from a
// quotient; a PLMap is a tuple of those. Canonical form removal and exact
// piecewise-linear equality are decided with the Fourier-Motzkin engine.

#include "tropcell/polyhedra.hpp"
#include "tropcell/posrational.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tropcell {

// The affine form a·ξ + b.
struct TropForm {
    std::vector<Rat> a;
    Rat b{0};

    Rat eval(const std::vector<Rat>& x) const {
        Rat v = b;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0) v += a[i] * x[i];
        return v;
    }

    bool operator==(const TropForm& o) const { return a == o.a && b == o.b; }
    bool operator<(const TropForm& o) const { return a != o.a ? a < o.a : b < o.b; }
};

class TropPoly {
public:
    TropPoly() = default;
    TropPoly(std::size_t nvars, std::vector<TropForm> forms) : nvars_(nvars), forms_(std::move(forms)) {
        for (const TropForm& f : forms_)
            if (f.a.size() != nvars_) throw VariableContextError("tropical form arity mismatch");
        normalize();
    }

    static TropPoly single(std::size_t nvars, TropForm f) { return TropPoly(nvars, {std::move(f)}); }

    static TropPoly zero_form(std::size_t nvars) {
        TropForm f;
        f.a.assign(nvars, Rat(0));
        return single(nvars, f);
    }

    std::size_t nvars() const { return nvars_; }
    const std::vector<TropForm>& forms() const { return forms_; }
    bool empty() const { return forms_.empty(); }

    Rat eval(const std::vector<Rat>& x) const {
        if (forms_.empty()) throw MathError("evaluating an empty tropical polynomial");
        Rat m = forms_[0].eval(x);
        for (std::size_t i = 1; i < forms_.size(); ++i) {
            Rat v = forms_[i].eval(x);
            if (v < m) m = v;
        }
        return m;
    }

    // Tropical sum: min(this, other).
    TropPoly tmin(const TropPoly& o) const {
        check(o);
        std::vector<TropForm> all = forms_;
        all.insert(all.end(), o.forms_.begin(), o.forms_.end());
        return TropPoly(nvars_, std::move(all));
    }

    // Tropical product: pointwise addition (Minkowski sum of form sets).
    TropPoly tadd(const TropPoly& o) const {
        check(o);
        std::vector<TropForm> out;
        out.reserve(forms_.size() * o.forms_.size());
        for (const TropForm& f : forms_)
            for (const TropForm& g : o.forms_) {
                TropForm h;
                h.a.resize(nvars_);
                for (std::size_t i = 0; i < nvars_; ++i) h.a[i] = f.a[i] + g.a[i];
                h.b = f.b + g.b;
                out.push_back(std::move(h));
            }
        return TropPoly(nvars_, std::move(out));
    }

    bool operator==(const TropPoly& o) const { return nvars_ == o.nvars_ && forms_ == o.forms_; }
    bool operator!=(const TropPoly& o) const { return !(*this == o); }

private:
    void check(const TropPoly& o) const {
        if (nvars_ != o.nvars_) throw VariableContextError("tropical context mismatch");
    }

    void normalize() {
        std::sort(forms_.begin(), forms_.end());
        forms_.erase(std::unique(forms_.begin(), forms_.end()), forms_.end());
    }

    std::size_t nvars_ = 0;
    std::vector<TropForm> forms_;
};

// Removes every form that is >= the min of the remaining ones on all of ℝⁿ.
inline TropPoly trop_canonicalize(const TropPoly& t) {
    std::vector<TropForm> work = t.forms();
    std::size_t nv = t.nvars();
    for (std::size_t i = 0; i < work.size();) {
        if (work.size() == 1) break;
        // work[i] is redundant iff "all other forms are strictly above it
        // somewhere" never happens: the system {g - f > 0 for all g != f}
        // is infeasible.
        std::vector<LinIneq> sys;
        for (std::size_t k = 0; k < work.size(); ++k) {
            if (k == i) continue;
            LinIneq q;
            q.a.resize(nv);
            for (std::size_t v = 0; v < nv; ++v) q.a[v] = work[k].a[v] - work[i].a[v];
            q.b = work[k].b - work[i].b;
            q.strict = true;
            sys.push_back(std::move(q));
        }
        if (!feasible(std::move(sys), nv)) {
            work.erase(work.begin() + i);
        } else {
            ++i;
        }
    }
    return TropPoly(nv, std::move(work));
}

// min(A) <= min(B) everywhere, decided exactly.
inline bool trop_leq(const TropPoly& A, const TropPoly& B) {
    if (A.nvars() != B.nvars()) throw VariableContextError("tropical context mismatch");
    std::size_t nv = A.nvars();
    for (const TropForm& g : B.forms()) {
        // Need min(A) <= g everywhere: the system {f - g > 0 for all f in A}
        // must be infeasible.
        std::vector<LinIneq> sys;
        for (const TropForm& f : A.forms()) {
            LinIneq q;
            q.a.resize(nv);
            for (std::size_t v = 0; v < nv; ++v) q.a[v] = f.a[v] - g.a[v];
            q.b = f.b - g.b;
            q.strict = true;
            sys.push_back(std::move(q));
        }
        if (feasible(std::move(sys), nv)) return false;
    }
    return true;
}

inline bool trop_equal(const TropPoly& A, const TropPoly& B) {
    return trop_leq(A, B) && trop_leq(B, A);
}

struct TropDiff {
    TropPoly num, den;

    std::size_t nvars() const { return num.nvars(); }

    Rat eval(const std::vector<Rat>& x) const { return num.eval(x) - den.eval(x); }

    // Exact equality as piecewise-linear functions:
    // num1 - den1 = num2 - den2 iff num1 + den2 = num2 + den1.
    bool equal_exact(const TropDiff& o) const {
        return trop_equal(num.tadd(o.den), o.num.tadd(den));
    }
};

inline TropPoly tropicalize_poly(const LaurentPoly& p) {
    if (p.is_zero()) throw MathError("tropicalization of zero");
    std::vector<TropForm> forms;
    for (const auto& [e, c] : p.terms()) {
        TropForm f;
        f.a.reserve(e.size());
        for (int v : e) f.a.push_back(Rat(v));
        f.b = 0;
        forms.push_back(std::move(f));
    }
    return TropPoly(p.nvars(), std::move(forms));
}

inline TropDiff tropicalize(const PosRational& f) {
    return TropDiff{tropicalize_poly(f.num()), tropicalize_poly(f.den())};
}

class PLMap {
public:
    PLMap() = default;
    PLMap(std::size_t arity, std::vector<TropDiff> comps) : arity_(arity), comps_(std::move(comps)) {
        for (const TropDiff& d : comps_)
            if (d.nvars() != arity_) throw VariableContextError("piecewise-linear component arity mismatch");
    }

    static PLMap identity(std::size_t n) {
        std::vector<TropDiff> comps;
        for (std::size_t i = 0; i < n; ++i) {
            TropForm f;
            f.a.assign(n, Rat(0));
            f.a[i] = 1;
            comps.push_back(TropDiff{TropPoly::single(n, f), TropPoly::zero_form(n)});
        }
        return PLMap(n, std::move(comps));
    }

    std::size_t arity() const { return arity_; }
    std::size_t coarity() const { return comps_.size(); }
    const std::vector<TropDiff>& components() const { return comps_; }

    std::vector<Rat> eval(const std::vector<Rat>& x) const {
        if (x.size() != arity_) throw VariableContextError("piecewise-linear evaluation arity mismatch");
        std::vector<Rat> y;
        y.reserve(comps_.size());
        for (const TropDiff& d : comps_) y.push_back(d.eval(x));
        return y;
    }

    bool equal_exact(const PLMap& o) const {
        if (arity_ != o.arity_ || comps_.size() != o.comps_.size()) return false;
        for (std::size_t i = 0; i < comps_.size(); ++i)
            if (!comps_[i].equal_exact(o.comps_[i])) return false;
        return true;
    }

private:
    std::size_t arity_ = 0;
    std::vector<TropDiff> comps_;
};

inline PLMap tropicalize_map(const std::vector<PosRational>& comps) {
    if (comps.empty()) return PLMap();
    std::vector<TropDiff> out;
    out.reserve(comps.size());
    for (const PosRational& f : comps) out.push_back(tropicalize(f));
    return PLMap(comps[0].nvars(), std::move(out));
}

inline std::vector<Rat> pl_eval(const PLMap& m, const std::vector<Rat>& x) { return m.eval(x); }

template <class SampleSet>
bool pl_equal_on(const PLMap& m1, const PLMap& m2, const SampleSet& samples) {
    if (m1.arity() != m2.arity() || m1.coarity() != m2.coarity())
        throw VariableContextError("piecewise-linear map shape mismatch");
    for (const auto& x : samples)
        if (m1.eval(x) != m2.eval(x)) return false;
    return true;
}

inline std::string trop_form_str(const TropForm& f, const std::vector<std::string>& names) {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < f.a.size(); ++i) {
        if (f.a[i] == 0) continue;
        Rat c = f.a[i];
        if (!any) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (c < 0) c = -c;
        if (c != 1) os << rat_str(c) << "*";
        os << names[i];
        any = true;
    }
    if (f.b != 0 || !any) {
        Rat c = f.b;
        if (!any) {
            os << rat_str(c);
        } else {
            os << (c < 0 ? " - " : " + ") << rat_str(c < 0 ? -c : c);
        }
    }
    return os.str();
}

inline std::string trop_poly_str(const TropPoly& t, const std::vector<std::string>& names) {
    if (t.forms().size() == 1) return trop_form_str(t.forms()[0], names);
    std::ostringstream os;
    os << "min(";
    for (std::size_t i = 0; i < t.forms().size(); ++i)
        os << (i ? ", " : "") << trop_form_str(t.forms()[i], names);
    os << ")";
    return os.str();
}

inline std::string trop_diff_str(const TropDiff& d, const std::vector<std::string>& names) {
    bool den_zero = d.den.forms().size() == 1 && d.den.forms()[0].b == 0 &&
                    std::all_of(d.den.forms()[0].a.begin(), d.den.forms()[0].a.end(),
                                [](const Rat& c) { return c == 0; });
    if (den_zero) return trop_poly_str(d.num, names);
    std::string den = trop_poly_str(d.den, names);
    if (den.find(' ') != std::string::npos && den.rfind("min(", 0) != 0) den = "(" + den + ")";
    return trop_poly_str(d.num, names) + " - " + den;
}

}  // namespace tropcell
