#pragma once
// Elementary number theory: factorization, primality, residue symbols,
// modular square roots, valuations.

#include "qrep/int.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace qrep {

struct Factorization {
    int sign = 1;                              // -1 for negative input
    std::vector<std::pair<Int, int>> factors;  // (prime, exponent), primes ascending

    Int reconstruct() const {
        Int r = sign;
        for (const auto& [p, e] : factors) r *= int_pow(p, static_cast<unsigned>(e));
        return r;
    }
};

// Deterministic Miller-Rabin. The fixed witness set is proven exact below
// 3.3e24, which covers every input this project ever feeds it; beyond that
// the usual strong-probable-prime semantics apply.
inline bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

// Brent's cycle variant of Pollard rho. n odd composite, not a prime power
// of a small prime. Deterministic: the polynomial increment steps on failure.
inline Int pollard_brent(const Int& n) {
    if (n % 2 == 0) return 2;
    for (Int c = 1; ; ++c) {
        Int x = 2, y = 2, d = 1;
        Int ys = y;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            for (unsigned long k = 0; k < r && d == 1; k += batch) {
                Int q = 1;
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                d = gcd(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            // backtrack one step at a time
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                d = gcd(abs(x - ys), n);
            }
        }
        if (d != n) return d;
        // cycle degenerated for this c; try the next increment
    }
}

inline void split_factor(const Int& n, std::map<Int, int>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) { out[n] += 1; return; }
    Int d = pollard_brent(n);
    split_factor(d, out);
    split_factor(n / d, out);
}

} // namespace detail

inline Factorization factorize(const Int& n) {
    if (n == 0) throw std::domain_error("factorize: zero has no factorization");
    Factorization out;
    Int m = n;
    if (m < 0) { out.sign = -1; m = -m; }
    std::map<Int, int> acc;
    for (Int d : {Int(2), Int(3), Int(5)}) {
        while (m % d == 0) { acc[d] += 1; m /= d; }
    }
    // wheel mod 30 over the remaining small candidates
    static const int wheel[8] = {1, 7, 11, 13, 17, 19, 23, 29};
    const Int small_bound = 1000000;
    for (Int base = 0; base <= small_bound && m > 1; base += 30) {
        for (int w : wheel) {
            Int d = base + w;
            if (d < 7) continue;
            if (d > small_bound || d * d > m) break;
            while (m % d == 0) { acc[d] += 1; m /= d; }
        }
        if (base * base > m) break;
    }
    if (m > 1) {
        Int r = isqrt(m);
        if (r <= small_bound && r * r == m) { // square of a small prime already past the wheel
            acc[r] += 2;
        } else {
            detail::split_factor(m, acc);
        }
    }
    out.factors.assign(acc.begin(), acc.end());
    return out;
}

// Jacobi symbol (a/m), m odd positive.
inline int jacobi(Int a, Int m) {
    if (m <= 0 || m % 2 == 0) throw std::domain_error("jacobi: modulus must be odd and positive");
    a = mod_floor(a, m);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a >>= 1;
            int r = static_cast<int>(m % 8);
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) t = -t;
        a %= m;
    }
    return m == 1 ? t : 0;
}

// Kronecker symbol (a/2).
inline int kronecker_at_2(const Int& a) {
    if (a % 2 == 0) return 0;
    int r = static_cast<int>(mod_floor(a, 8));
    return (r == 1 || r == 7) ? 1 : -1;
}

// Quartic residue symbol a^((p-1)/4) mod p in {+1,-1}. Requires p prime,
// p = 1 mod 4, and (a/p) = 1 so the result is a genuine fourth-power test.
inline int quartic_symbol(const Int& a, const Int& p) {
    if (!is_probable_prime(p) || mod_floor(p, 4) != 1)
        throw std::domain_error("quartic_symbol: p must be a prime congruent to 1 mod 4");
    if (jacobi(a, p) != 1)
        throw std::domain_error("quartic_symbol: a must be a quadratic residue mod p");
    Int r = powmod(a, (p - 1) / 4, p);
    if (r == 1) return 1;
    if (r == p - 1) return -1;
    throw internal_error("quartic_symbol: power is not a fourth root of unity");
}

// Square roots of a mod an odd prime p. Returns {r, p-r} with r <= p-r,
// {0,0} when a = 0, nothing when a is a non-residue.
inline std::optional<std::pair<Int, Int>> sqrt_mod(Int a, const Int& p) {
    if (!is_probable_prime(p) || p == 2)
        throw std::domain_error("sqrt_mod: p must be an odd prime");
    a = mod_floor(a, p);
    if (a == 0) return std::make_pair(Int(0), Int(0));
    if (jacobi(a, p) != 1) return std::nullopt;
    Int r;
    if (p % 4 == 3) {
        r = powmod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        Int q = p - 1;
        int s = 0;
        while (q % 2 == 0) { q >>= 1; ++s; }
        Int z = 2;
        while (jacobi(z, p) != -1) ++z;
        Int m = s, c = powmod(z, q, p), t = powmod(a, q, p), rr = powmod(a, (q + 1) / 2, p);
        while (t != 1) {
            Int tt = t;
            int i = 0;
            while (tt != 1) { tt = tt * tt % p; ++i; }
            Int b = powmod(c, int_pow(2, static_cast<unsigned>(m.convert_to<int>() - i - 1)), p);
            rr = rr * b % p;
            c = b * b % p;
            t = t * c % p;
            m = i;
        }
        r = rr;
    }
    Int r2 = p - r;
    if (r > r2) std::swap(r, r2);
    return std::make_pair(r, r2);
}

// v_p(n) for n != 0.
inline int valuation(Int n, const Int& p) {
    if (n == 0) throw std::domain_error("valuation: undefined at zero");
    if (p < 2) throw std::domain_error("valuation: p must be at least 2");
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

} // namespace qrep
