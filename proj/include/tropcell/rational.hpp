#pragma once

// Exact arithmetic scalar types used throughout the library.
//
// All coefficient arithmetic is done over arbitrary-precision rationals so
// that cone comparisons, lattice conditions and minor evaluations are exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tropcell {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct MathError : std::runtime_error {
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a lattice-level operation lands outside the lattice,
// e.g. applying a rational comparison map to a point whose image is
// not integral in the target cocharacter lattice.
struct LatticeError : MathError {
    explicit LatticeError(const std::string& what) : MathError(what) {}
};

// Raised by root-datum construction when the requested isogeny type has no
// integral symmetrizing identification between weight and coweight lattices.
struct SymmetrizerMismatch : MathError {
    explicit SymmetrizerMismatch(const std::string& what) : MathError(what) {}
};

inline Rat rat(long long num, long long den = 1) {
    if (den == 0) throw MathError("rational with zero denominator");
    return Rat(Int(num), Int(den));
}

inline bool is_integer(const Rat& q) {
    return boost::multiprecision::denominator(q) == 1;
}

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Floor of an exact rational as an arbitrary-precision integer.
inline Int rat_floor(const Rat& q) {
    Int n = rat_num(q), d = rat_den(q);
    Int quo = n / d;
    if (n % d != 0 && n < 0) --quo;
    return quo;
}

inline Int rat_ceil(const Rat& q) {
    Int n = rat_num(q), d = rat_den(q);
    Int quo = n / d;
    if (n % d != 0 && n > 0) ++quo;
    return quo;
}

inline long long to_ll(const Int& n) {
    return n.convert_to<long long>();
}

// Parses "p/q" or "p"; accepts optional leading '-'.
inline Rat rat_parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int n(text.substr(0, slash));
        Int d(text.substr(slash + 1));
        if (d == 0) throw MathError("rational with zero denominator: " + text);
        return Rat(n, d);
    } catch (const std::exception&) {
        throw MathError("cannot parse rational: " + text);
    }
}

inline std::string rat_str(const Rat& q) {
    if (is_integer(q)) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

// Nearest double, for report formatting only.
inline double rat_double(const Rat& q) {
    return q.convert_to<double>();
}

inline Int int_gcd(Int a, Int b) {
    return boost::multiprecision::gcd(a, b);
}

inline Int int_lcm(Int a, Int b) {
    return boost::multiprecision::lcm(a, b);
}

}  // namespace tropcell
