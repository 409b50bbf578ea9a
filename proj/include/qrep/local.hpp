#pragma once
// Solvability of a x^2 + b y^2 = n over Z_p for each place of Q, with
// checkable witnesses mod p^k.

#include "qrep/arith.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qrep {

struct Place {
    bool infinite;
    Int p;
    static Place infinity() { return {true, 0}; }
    static Place prime(Int q) { return {false, std::move(q)}; }
    bool operator==(const Place& o) const { return infinite == o.infinite && p == o.p; }
    std::string str() const { return infinite ? "infinity" : p.str(); }
};

enum class LocalMethod { closed_form, enumeration, real_sign };

inline const char* to_string(LocalMethod m) {
    switch (m) {
        case LocalMethod::closed_form: return "closed_form";
        case LocalMethod::enumeration: return "enumeration";
        case LocalMethod::real_sign: return "real_sign";
    }
    return "?";
}

struct WitnessMod {
    Int x, y, modulus;
};

struct LocalVerdict {
    Place place;
    bool solvable;
    LocalMethod method;
    std::optional<WitnessMod> witness;
};

namespace detail {

// valuation of z taken mod p^k, saturating at k
inline int vcap(const Int& z, const Int& p, int k) {
    Int r = mod_floor(z, int_pow(p, k));
    if (r == 0) return k;
    return valuation(r, p);
}

} // namespace detail

// (x0, y0, p^k) is usable when the congruence holds and k >= 2t+1 for
// t = min(v_p(2a x0), v_p(2b y0)); then a Newton step converges in Z_p.
inline bool witness_is_sound(const Int& a, const Int& b, const Int& n, const Int& p,
                             const WitnessMod& w) {
    Int m = w.modulus;
    int k = 0;
    while (m > 1) {
        if (m % p != 0) return false;
        m /= p;
        ++k;
    }
    if (k == 0) return false;
    if (mod_floor(a * w.x * w.x + b * w.y * w.y - n, w.modulus) != 0) return false;
    int t = std::min(detail::vcap(2 * a * w.x, p, k), detail::vcap(2 * b * w.y, p, k));
    return k >= 2 * t + 1;
}

namespace detail {

inline void require_nonzero(const Int& a, const Int& b, const Int& n) {
    if (a == 0 || b == 0) throw std::domain_error("coefficients must be nonzero");
    if (n == 0) throw std::domain_error("target must be nonzero");
}

// Complete Z_p decision by residue enumeration. Points with a unit coordinate
// keep that coordinate a unit at every depth, so min(v_p(2ax), v_p(2by)) stays
// at most v_p(4ab) and certification happens by depth 2 v_p(4ab) + 1. Points
// with x = y = 0 mod p exist only when p^2 | n and are exactly the p-scalings
// of solutions for n/p^2, handled by recursion.
inline std::optional<WitnessMod> generic_search(const Int& a, const Int& b, const Int& n,
                                                const Int& p) {
    if (mod_floor(n, p * p) == 0) {
        if (auto sub = generic_search(a, b, n / (p * p), p))
            return WitnessMod{sub->x * p, sub->y * p, sub->modulus * p * p};
    }

    const int VA = valuation(4 * a * b, p);
    const int DA = 2 * VA + 1;

    std::function<std::optional<WitnessMod>(const Int&, const Int&, int)> dfs =
        [&](const Int& x, const Int& y, int k) -> std::optional<WitnessMod> {
        int t = std::min(vcap(2 * a * x, p, k), vcap(2 * b * y, p, k));
        if (k >= 2 * t + 1) return WitnessMod{x, y, int_pow(p, k)};
        if (k >= DA) throw internal_error("generic_search: uncertified point at full depth");
        Int pk = int_pow(p, k);
        Int g = mod_floor((a * x * x + b * y * y - n) / pk, p);
        Int u = mod_floor(2 * a * x, p), w = mod_floor(2 * b * y, p);
        if (w != 0) {
            Int winv = inv_mod(w, p);
            for (Int i = 0; i < p; ++i) {
                Int j = mod_floor(-(g + u * i) * winv, p);
                if (auto r = dfs(x + i * pk, y + j * pk, k + 1)) return r;
            }
        } else if (u != 0) {
            Int i = mod_floor(-g * inv_mod(u, p), p);
            for (Int j = 0; j < p; ++j)
                if (auto r = dfs(x + i * pk, y + j * pk, k + 1)) return r;
        } else if (g == 0) {
            for (Int i = 0; i < p; ++i)
                for (Int j = 0; j < p; ++j)
                    if (auto r = dfs(x + i * pk, y + j * pk, k + 1)) return r;
        }
        return std::nullopt;
    };

    // roots mod p with a unit coordinate, in lexicographic order
    if (p <= 65536) {
        long long pl = static_cast<long long>(p);
        long long al = static_cast<long long>(mod_floor(a, p));
        long long bl = static_cast<long long>(mod_floor(b, p));
        long long nl = static_cast<long long>(mod_floor(n, p));
        std::vector<std::vector<long long>> ys_by_value(pl);
        for (long long y = 0; y < pl; ++y) ys_by_value[bl * y % pl * y % pl].push_back(y);
        for (long long x = 0; x < pl; ++x) {
            long long need = (nl - al * x % pl * x % pl + pl) % pl;
            for (long long y : ys_by_value[need]) {
                if (x == 0 && y == 0) continue;
                if (auto r = dfs(Int(x), Int(y), 1)) return r;
            }
        }
    } else {
        for (Int x = 0; x < p; ++x) {
            for (Int y = 0; y < p; ++y) {
                if (x == 0 && y == 0) continue;
                if (mod_floor(a * x * x + b * y * y - n, p) != 0) continue;
                if (auto r = dfs(x, y, 1)) return r;
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

inline LocalVerdict local_at_infinity(const Int& a, const Int& b, const Int& n) {
    detail::require_nonzero(a, b, n);
    bool ok;
    if (a > 0 && b > 0) ok = n > 0;
    else if (a < 0 && b < 0) ok = n < 0;
    else ok = true;
    return {Place::infinity(), ok, LocalMethod::real_sign, std::nullopt};
}

inline LocalVerdict local_at_odd_prime(const Int& a, const Int& b, const Int& n, const Int& p) {
    detail::require_nonzero(a, b, n);
    if (p == 2 || !is_probable_prime(p)) throw std::domain_error("need an odd prime");
    if (mod_floor(a, p) == 0 || mod_floor(b, p) == 0)
        throw std::domain_error("p divides 2ab: dispatch to the generic enumeration");

    int v = valuation(n, p);
    bool isotropic = jacobi(mod_floor(-a * b, p), p) == 1;
    LocalVerdict out{Place::prime(p), v % 2 == 0 || isotropic, LocalMethod::closed_form,
                     std::nullopt};
    if (!out.solvable) return out;

    if (isotropic) {
        // t0^2 = -b/a mod p turns the form into a difference of squares
        Int ainv = inv_mod(mod_floor(a, p), p);
        auto root = sqrt_mod(mod_floor(-b * ainv, p), p);
        if (!root) throw internal_error("local_at_odd_prime: missing isotropy root");
        Int t0 = root->first;
        Int m = mod_floor(n * ainv, p);
        Int inv2 = inv_mod(2, p);
        Int x = mod_floor((m + 1) * inv2, p);
        Int y = mod_floor((m - 1) * inv2 * inv_mod(t0, p), p);
        out.witness = WitnessMod{x, y, p};
    } else {
        // v even: strip p^v, represent the unit part mod p, rescale by p^(v/2)
        Int nred = n / int_pow(p, v);
        Int n1 = mod_floor(nred, p);
        Int binv = inv_mod(mod_floor(b, p), p);
        for (Int x1 = 0; x1 < p; ++x1) {
            Int r = mod_floor((n1 - a * x1 * x1) * binv, p);
            Int y1;
            if (r == 0) y1 = 0;
            else if (jacobi(r, p) == 1) y1 = sqrt_mod(r, p)->first;
            else continue;
            Int pk = int_pow(p, v / 2);
            out.witness = WitnessMod{x1 * pk, y1 * pk, int_pow(p, v + 1)};
            break;
        }
    }
    if (!out.witness || !witness_is_sound(a, b, n, p, *out.witness))
        throw internal_error("local_at_odd_prime: constructed witness is unsound");
    return out;
}

inline LocalVerdict local_generic(const Int& a, const Int& b, const Int& n, const Int& p) {
    detail::require_nonzero(a, b, n);
    if (!is_probable_prime(p)) throw std::domain_error("place must be prime");
    auto w = detail::generic_search(a, b, n, p);
    LocalVerdict out{Place::prime(p), w.has_value(), LocalMethod::enumeration, w};
    if (w && !witness_is_sound(a, b, n, p, *w))
        throw internal_error("local_generic: found witness is unsound");
    return out;
}

struct LocalSurvey {
    bool solvable = true;
    std::vector<LocalVerdict> verdicts;
};

inline LocalSurvey local_everywhere(const Int& a, const Int& b, const Int& n) {
    detail::require_nonzero(a, b, n);
    Int d = -a * b;
    if (d >= 0 && is_square(d)) throw std::domain_error("-ab must not be a square");

    LocalSurvey out;
    out.verdicts.push_back(local_at_infinity(a, b, n));
    if (!out.verdicts.back().solvable) {
        out.solvable = false; // definite form, wrong sign: no finite work needed
        return out;
    }
    std::vector<Int> primes;
    for (auto& [p, e] : factorize(2 * a * b * n).factors) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const Int& p : primes) {
        bool generic = (p == 2) || mod_floor(a, p) == 0 || mod_floor(b, p) == 0;
        out.verdicts.push_back(generic ? local_generic(a, b, n, p)
                                       : local_at_odd_prime(a, b, n, p));
        out.solvable = out.solvable && out.verdicts.back().solvable;
    }
    return out;
}

} // namespace qrep
