#pragma once

// Exact linear-inequality systems over the rationals: Fourier-Motzkin
// elimination with strict/non-strict flags, feasibility, entailment, and
// integer point enumeration for bounded polyhedra. Everything is exact;
// systems here are tiny (at most rank + word length variables).

#include "tropcell/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace tropcell {

// The row a·x + b >= 0, or a·x + b > 0 when strict.
struct LinIneq {
    std::vector<Rat> a;
    Rat b{0};
    bool strict = false;

    Rat eval(const std::vector<Rat>& x) const {
        Rat v = b;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0) v += a[i] * x[i];
        return v;
    }

    bool satisfied(const std::vector<Rat>& x) const {
        Rat v = eval(x);
        return strict ? v > 0 : v >= 0;
    }
};

// Scales a row by the positive rational making all entries coprime integers.
inline void ineq_canonicalize(LinIneq& q) {
    Int l(1);
    for (const Rat& c : q.a) l = int_lcm(l, rat_den(c));
    l = int_lcm(l, rat_den(q.b));
    Int g(0);
    auto acc = [&](const Rat& c) {
        Int n = rat_num(c) * (l / rat_den(c));
        g = int_gcd(g, boost::multiprecision::abs(n));
    };
    for (const Rat& c : q.a) acc(c);
    acc(q.b);
    if (g == 0) g = 1;
    Rat scale(l, g);
    if (scale != 1) {
        for (Rat& c : q.a) c *= scale;
        q.b *= scale;
    }
}

// Deduplicates rows with a common direction, keeping the tightest; drops rows
// that hold identically. Rows that are identically false are kept so
// infeasibility stays visible.
inline std::vector<LinIneq> ineq_prune(const std::vector<LinIneq>& sys) {
    std::map<std::vector<Rat>, LinIneq> best;
    std::vector<LinIneq> kept_false;
    for (LinIneq q : sys) {
        ineq_canonicalize(q);
        bool all_zero = std::all_of(q.a.begin(), q.a.end(), [](const Rat& c) { return c == 0; });
        if (all_zero) {
            bool holds = q.strict ? q.b > 0 : q.b >= 0;
            if (!holds) kept_false.push_back(q);
            continue;
        }
        auto it = best.find(q.a);
        if (it == best.end()) {
            best.emplace(q.a, q);
        } else {
            LinIneq& cur = it->second;
            if (q.b < cur.b || (q.b == cur.b && q.strict && !cur.strict)) cur = q;
        }
    }
    std::vector<LinIneq> out = kept_false;
    for (auto& [dir, q] : best) out.push_back(q);
    return out;
}

// Eliminates variable j; the result mentions j with coefficient zero and is
// feasible exactly when the input is (for some value of x_j).
inline std::vector<LinIneq> fm_eliminate(const std::vector<LinIneq>& sys, std::size_t j) {
    std::vector<LinIneq> out;
    std::vector<const LinIneq*> pos, neg;
    for (const LinIneq& q : sys) {
        if (q.a[j] > 0)
            pos.push_back(&q);
        else if (q.a[j] < 0)
            neg.push_back(&q);
        else
            out.push_back(q);
    }
    for (const LinIneq* p : pos)
        for (const LinIneq* n : neg) {
            LinIneq r;
            r.a.resize(p->a.size());
            Rat cp = -n->a[j];  // positive
            Rat cn = p->a[j];   // positive
            for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] = p->a[k] * cp + n->a[k] * cn;
            r.b = p->b * cp + n->b * cn;
            r.strict = p->strict || n->strict;
            out.push_back(r);
        }
    return ineq_prune(out);
}

inline bool feasible(std::vector<LinIneq> sys, std::size_t nvars) {
    sys = ineq_prune(sys);
    for (std::size_t j = 0; j < nvars; ++j) {
        for (const LinIneq& q : sys) {
            bool all_zero = std::all_of(q.a.begin(), q.a.end(), [](const Rat& c) { return c == 0; });
            if (all_zero && !(q.strict ? q.b > 0 : q.b >= 0)) return false;
        }
        sys = fm_eliminate(sys, j);
    }
    for (const LinIneq& q : sys)
        if (!(q.strict ? q.b > 0 : q.b >= 0)) return false;
    return true;
}

// Does the system force a·x + b >= 0 (or > 0) everywhere it holds?
inline bool entails(std::vector<LinIneq> sys, const LinIneq& target, std::size_t nvars) {
    LinIneq negation;
    negation.a.resize(target.a.size());
    for (std::size_t i = 0; i < target.a.size(); ++i) negation.a[i] = -target.a[i];
    negation.b = -target.b;
    negation.strict = !target.strict;
    sys.push_back(negation);
    return !feasible(std::move(sys), nvars);
}

// Substitute x_j = y_j / dens_j, producing a system in y for enumerating the
// grid (1/dens)ℤ^n as integer points.
inline std::vector<LinIneq> scale_variables(std::vector<LinIneq> sys, const std::vector<Int>& dens) {
    for (LinIneq& q : sys)
        for (std::size_t j = 0; j < q.a.size(); ++j)
            if (q.a[j] != 0) q.a[j] /= Rat(dens[j]);
    return sys;
}

// Integer points of a bounded polyhedron, enumerated by back-substitution
// through stored Fourier-Motzkin projections. Throws on unbounded input.
class LatticeEnumerator {
public:
    LatticeEnumerator(std::vector<LinIneq> sys, std::size_t nvars) : nvars_(nvars) {
        levels_.resize(nvars);
        if (nvars == 0) return;
        levels_[nvars - 1] = ineq_prune(std::move(sys));
        for (std::size_t j = nvars - 1; j > 0; --j)
            levels_[j - 1] = fm_eliminate(levels_[j], j);
        for (const LinIneq& q : levels_[0]) {
            bool all_zero = std::all_of(q.a.begin(), q.a.end(), [](const Rat& c) { return c == 0; });
            if (all_zero && !(q.strict ? q.b > 0 : q.b >= 0)) empty_ = true;
        }
    }

    // Calls visit(point) for every integer point; returns the count.
    unsigned long long enumerate(const std::function<void(const std::vector<Int>&)>& visit = nullptr) const {
        if (nvars_ == 0 || empty_) return 0;
        std::vector<Int> point(nvars_);
        unsigned long long count = 0;
        descend(0, point, count, visit);
        return count;
    }

    unsigned long long count() const { return enumerate(nullptr); }

private:
    void descend(std::size_t j, std::vector<Int>& point, unsigned long long& count,
                 const std::function<void(const std::vector<Int>&)>& visit) const {
        bool has_lo = false, has_hi = false;
        Int lo(0), hi(0);
        for (const LinIneq& q : levels_[j]) {
            if (q.a[j] == 0) continue;
            Rat prefix = q.b;
            for (std::size_t k = 0; k < j; ++k)
                if (q.a[k] != 0) prefix += q.a[k] * Rat(point[k]);
            Rat bound = -prefix / q.a[j];
            if (q.a[j] > 0) {
                Int c = rat_ceil(bound);
                if (q.strict && Rat(c) == bound) ++c;
                if (!has_lo || c > lo) lo = c, has_lo = true;
            } else {
                Int f = rat_floor(bound);
                if (q.strict && Rat(f) == bound) --f;
                if (!has_hi || f < hi) hi = f, has_hi = true;
            }
        }
        if (!has_lo || !has_hi) throw MathError("lattice enumeration over an unbounded direction");
        for (Int v = lo; v <= hi; ++v) {
            point[j] = v;
            if (j + 1 == nvars_) {
                ++count;
                if (visit) visit(point);
            } else {
                descend(j + 1, point, count, visit);
            }
        }
    }

    std::size_t nvars_ = 0;
    bool empty_ = false;
    std::vector<std::vector<LinIneq>> levels_;
};

}  // namespace tropcell
