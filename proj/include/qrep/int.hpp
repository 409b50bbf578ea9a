#pragma once
// Shared arbitrary-precision integer type and small helpers used across modules.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qrep {

using Int = boost::multiprecision::cpp_int;

// Thrown when two independent computation routes disagree or an internal
// invariant breaks. Never thrown for bad user input.
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

// canonical residue in [0, m), m > 0
inline Int mod_floor(const Int& a, const Int& m) {
    if (m <= 0) throw std::domain_error("mod_floor: modulus must be positive");
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// a mod 4 in {0,1,2,3} for possibly negative a
inline int mod4(const Int& a) { return static_cast<int>(mod_floor(a, 4)); }

inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative input");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = boost::multiprecision::sqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

inline Int powmod(const Int& base, const Int& exp, const Int& m) {
    if (exp < 0) throw std::domain_error("powmod: negative exponent");
    return boost::multiprecision::powm(mod_floor(base, m), exp, m);
}

inline Int int_pow(Int b, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

struct ExtGcd {
    Int g, x, y; // g = a*x + b*y
};

inline ExtGcd ext_gcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    return {a, x0, y0};
}

inline Int inv_mod(const Int& a, const Int& m) {
    ExtGcd e = ext_gcd(mod_floor(a, m), m);
    if (e.g != 1) throw std::domain_error("inv_mod: not invertible");
    return mod_floor(e.x, m);
}

// Solve x = r1 (mod m1), x = r2 (mod m2); empty if inconsistent.
// Returns the residue mod lcm(m1, m2).
inline std::optional<std::pair<Int, Int>> crt_pair(const Int& r1, const Int& m1,
                                                   const Int& r2, const Int& m2) {
    ExtGcd e = ext_gcd(m1, m2);
    Int d = e.g;
    if ((r2 - r1) % d != 0) return std::nullopt;
    Int lcm = m1 / d * m2;
    Int k = mod_floor((r2 - r1) / d * e.x, m2 / d);
    Int x = mod_floor(r1 + m1 * k, lcm);
    return std::make_pair(x, lcm);
}

inline std::string to_string(const Int& n) { return n.str(); }

} // namespace qrep
