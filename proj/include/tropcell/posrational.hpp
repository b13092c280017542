#pragma once

// Subtraction-free rational expressions: quotients of Laurent polynomials
// whose coefficients are all strictly positive. These are the expressions
// tropicalization is defined on, so the invariant is enforced at every
// constructor and closed under +, *, /, powers and substitution.

#include "tropcell/laurent.hpp"

#include <string>
#include <vector>

namespace tropcell {

struct NotSubtractionFree : MathError {
    explicit NotSubtractionFree(const std::string& what) : MathError(what) {}
};

inline bool all_coeffs_positive(const LaurentPoly& p) {
    for (const auto& [e, c] : p.terms())
        if (c <= 0) return false;
    return true;
}

class PosRational {
public:
    PosRational() = default;

    PosRational(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (num_.nvars() != den_.nvars())
            throw VariableContextError("numerator/denominator context mismatch");
        if (den_.is_zero()) throw MathError("zero denominator in subtraction-free expression");
        if (!all_coeffs_positive(num_) && !num_.is_zero())
            throw NotSubtractionFree("numerator has non-positive coefficients");
        if (!all_coeffs_positive(den_))
            throw NotSubtractionFree("denominator has non-positive coefficients");
        reduce_monomial_content();
    }

    static PosRational from_poly(const LaurentPoly& p) {
        return PosRational(p, LaurentPoly::constant(p.nvars(), Rat(1)));
    }

    static PosRational constant(std::size_t nvars, const Rat& c) {
        if (c < 0) throw NotSubtractionFree("negative constant");
        return from_poly(LaurentPoly::constant(nvars, c));
    }

    static PosRational variable(std::size_t nvars, std::size_t i, int exp = 1) {
        return from_poly(LaurentPoly::variable(nvars, i, exp));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }

    PosRational operator+(const PosRational& o) const {
        return PosRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    PosRational operator*(const PosRational& o) const {
        return PosRational(num_ * o.num_, den_ * o.den_);
    }

    PosRational operator/(const PosRational& o) const {
        if (o.is_zero()) throw MathError("division by zero expression");
        return PosRational(num_ * o.den_, den_ * o.num_);
    }

    PosRational pow(long long k) const {
        if (k == 0) return constant(nvars(), Rat(1));
        if (k < 0) {
            if (is_zero()) throw MathError("negative power of zero expression");
            return PosRational(den_, num_).pow(-k);
        }
        return PosRational(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
    }

    // Equality as rational functions, decided by cross multiplication.
    bool operator==(const PosRational& o) const {
        return num_ * o.den_ == o.num_ * den_;
    }
    bool operator!=(const PosRational& o) const { return !(*this == o); }

    Rat eval(const std::vector<Rat>& x) const {
        Rat d = den_.eval(x);
        if (d == 0) throw MathError("denominator vanishes at evaluation point");
        return num_.eval(x) / d;
    }

    // Substitutes args[i] for variable i. All args must share one variable
    // context; the result lives in that context.
    PosRational subst(const std::vector<PosRational>& args) const {
        if (args.size() != nvars()) throw VariableContextError("substitution arity mismatch");
        std::size_t out_nv = args.empty() ? 0 : args[0].nvars();
        for (const auto& a : args)
            if (a.nvars() != out_nv) throw VariableContextError("substitution argument context mismatch");
        PosRational n = subst_poly(num_, args, out_nv);
        PosRational d = subst_poly(den_, args, out_nv);
        return n / d;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (den_.is_constant() && den_.constant_value() == 1) return num_.str(names);
        return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
    }

private:
    static PosRational subst_poly(const LaurentPoly& p, const std::vector<PosRational>& args,
                                  std::size_t out_nv) {
        PosRational acc = PosRational::constant(out_nv, Rat(0));
        for (const auto& [e, c] : p.terms()) {
            PosRational term = PosRational::constant(out_nv, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) term = term * args[i].pow(e[i]);
            acc = acc + term;
        }
        return acc;
    }

    // Moves the denominator's monomial content into the Laurent numerator and
    // scales the leading denominator coefficient to 1, so monomial divisions
    // normalize to denominator 1. Exactness and positivity are unaffected.
    void reduce_monomial_content() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::constant(den_.nvars(), Rat(1));
            return;
        }
        auto md = den_.support_min();
        LaurentPoly::Exps shift(num_.nvars());
        bool nontrivial = false;
        for (std::size_t i = 0; i < shift.size(); ++i) {
            shift[i] = -md[i];
            nontrivial |= (shift[i] != 0);
        }
        if (nontrivial) {
            num_ = num_.shift(shift);
            den_ = den_.shift(shift);
        }
        Rat lead = den_.leading_term().second;
        if (lead != 1) {
            Rat inv = Rat(1) / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    LaurentPoly num_ = LaurentPoly::constant(0, Rat(0));
    LaurentPoly den_ = LaurentPoly::constant(0, Rat(1));
};

// Certifies that a Laurent polynomial is subtraction-free up to a global
// sign. Returns (+1 or -1, the positive form as a PosRational).
inline std::pair<int, PosRational> positivity_normalize(const LaurentPoly& p) {
    if (p.is_zero()) return {+1, PosRational::from_poly(p)};
    bool any_pos = false, any_neg = false;
    for (const auto& [e, c] : p.terms()) {
        if (c > 0) any_pos = true;
        if (c < 0) any_neg = true;
    }
    if (any_pos && any_neg)
        throw NotSubtractionFree("mixed coefficient signs after cancellation");
    if (any_neg) return {-1, PosRational::from_poly(-p)};
    return {+1, PosRational::from_poly(p)};
}

}  // namespace tropcell
