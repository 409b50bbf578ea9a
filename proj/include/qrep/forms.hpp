#pragma once
// Positive definite binary quadratic forms: reduction, Dirichlet composition,
// class groups, genus structure, and representation of primes and integers.

#include "qrep/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <mutex>
#include <optional>
#include <vector>

namespace qrep {

struct QuadForm {
    Int a, b, c;

    Int disc() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    std::string str() const {
        return "(" + a.str() + "," + b.str() + "," + c.str() + ")";
    }
};

inline bool is_positive_definite(const QuadForm& f) { return f.a > 0 && f.disc() < 0; }

inline bool is_primitive(const QuadForm& f) { return gcd(gcd(f.a, f.b), f.c) == 1; }

inline bool is_reduced(const QuadForm& f) {
    if (!is_positive_definite(f)) return false;
    Int ab = abs(f.b);
    if (!(ab <= f.a && f.a <= f.c)) return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

inline void validate_disc(const Int& D) {
    if (D >= 0) throw std::domain_error("discriminant must be negative");
    int r = mod4(D);
    if (r != 0 && r != 1) throw std::domain_error("discriminant must be 0 or 1 mod 4");
}

inline QuadForm principal_form(const Int& D) {
    validate_disc(D);
    if (mod4(D) == 0) return {1, 0, -D / 4};
    return {1, 1, (1 - D) / 4};
}

inline QuadForm reduce(QuadForm f) {
    if (!is_positive_definite(f))
        throw std::domain_error("reduce: form must be positive definite");
    if (!is_primitive(f))
        throw std::domain_error("reduce: form must be primitive");
    const Int D = f.disc();
    for (;;) {
        // normalize b into (-a, a]
        Int b = mod_floor(f.b + f.a, 2 * f.a) - f.a;
        f = {f.a, b, (b * b - D) / (4 * f.a)};
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if ((f.a == f.c || abs(f.b) == f.a) && f.b < 0) f.b = -f.b;
    return f;
}

// All primitive reduced forms of discriminant D, ordered by (a asc, b desc).
inline std::vector<QuadForm> reduced_forms(const Int& D) {
    validate_disc(D);
    std::vector<QuadForm> out;
    for (Int a = 1; 4 * a * a <= -D + a * a /* a <= sqrt(|D|/3) */; ++a) {
        if (3 * a * a > -D) break;
        for (Int b = -a + 1; b <= a; ++b) {
            if (mod_floor(b - D, 2) != 0) continue; // b = D mod 2
            Int num = b * b - D;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            QuadForm f{a, b, c};
            if (!is_primitive(f)) continue;
            if ((abs(b) == a || a == c) && b < 0) continue; // boundary: keep b >= 0 only
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b > y.b;
    });
    return out;
}

inline int class_number(const Int& D) { return static_cast<int>(reduced_forms(D).size()); }

namespace detail {

// Equivalent form to g with leading coefficient coprime to m, found by
// representing a value coprime to m and completing the change of basis.
inline QuadForm equiv_with_coprime_lead(const QuadForm& g, const Int& m) {
    Int x = 1, y = 0;
    if (abs(m) > 1) {
        Int R = 1;
        std::vector<Int> primes;
        for (auto& [p, e] : factorize(m).factors) primes.push_back(p);
        Int xr = 0, yr = 0;
        // per prime choose (x,y) in {(1,0),(0,1),(1,1)} avoiding g = 0 mod p
        Int xacc = 0, yacc = 0, mod = 1;
        for (const Int& p : primes) {
            Int xp, yp;
            if (g.a % p != 0) { xp = 1; yp = 0; }
            else if (g.c % p != 0) { xp = 0; yp = 1; }
            else { xp = 1; yp = 1; } // primitivity: p cannot divide a, b and c
            auto cx = crt_pair(xacc, mod, xp, p);
            auto cy = crt_pair(yacc, mod, yp, p);
            xacc = cx->first;
            yacc = cy->first;
            mod *= p;
        }
        x = xacc; y = yacc;
        if (x == 0 && y == 0) x = 1; // cannot happen, but keep gcd sane
        while (gcd(x, y) != 1) x += mod; // g's value stays coprime to m mod each p
    }
    Int val = g.a * x * x + g.b * x * y + g.c * y * y;
    if (gcd(val, m) != 1) throw internal_error("equiv_with_coprime_lead: construction failed");
    ExtGcd e = ext_gcd(x, y); // x*e.x + y*e.y = 1
    // matrix [[x, -e.y],[y, e.x]], det = x*e.x + y*e.y = 1
    Int al = x, be = -e.y, ga = y, de = e.x;
    Int a2 = val;
    Int b2 = 2 * (g.a * al * be + g.c * ga * de) + g.b * (al * de + be * ga);
    Int c2 = g.a * be * be + g.b * be * de + g.c * de * de;
    return {a2, b2, c2};
}

} // namespace detail

// Dirichlet composition: bring g to a united form sharing the middle
// coefficient with f, multiply, reduce.
inline QuadForm compose(const QuadForm& f, const QuadForm& g) {
    if (f.disc() != g.disc()) throw std::domain_error("compose: discriminants differ");
    if (!is_positive_definite(f) || !is_positive_definite(g))
        throw std::domain_error("compose: forms must be positive definite");
    if (!is_primitive(f) || !is_primitive(g))
        throw std::domain_error("compose: forms must be primitive");
    const Int D = f.disc();
    QuadForm h = detail::equiv_with_coprime_lead(g, f.a);
    auto crt = crt_pair(f.b, 2 * f.a, h.b, 2 * h.a);
    if (!crt) throw internal_error("compose: united middle coefficient does not exist");
    Int B = crt->first;
    Int A = f.a * h.a;
    Int C = (B * B - D) / (4 * A);
    return reduce({A, B, C});
}

inline QuadForm form_pow(QuadForm f, Int e) {
    const Int D = f.disc();
    QuadForm acc = principal_form(D);
    if (e < 0) { f = {f.a, -f.b, f.c}; e = -e; } // inverse class
    f = reduce(f);
    while (e > 0) {
        if (e % 2 == 1) acc = compose(acc, f);
        f = compose(f, f);
        e /= 2;
    }
    return acc;
}

inline int class_order(const QuadForm& f) {
    QuadForm r = reduce(f);
    const QuadForm e = principal_form(f.disc());
    int k = 1;
    QuadForm acc = r;
    while (!(acc == e)) {
        acc = compose(acc, r);
        ++k;
        if (k > 10000) throw internal_error("class_order: runaway order");
    }
    return k;
}

struct FormClassGroup {
    Int disc;
    std::vector<QuadForm> reps;
    std::vector<int> orders; // per rep
    int genus_count = 1;
    int exponent = 1;
};

inline const FormClassGroup& form_class_group(const Int& D) {
    static std::map<Int, FormClassGroup> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(D);
    if (it != cache.end()) return it->second;
    FormClassGroup g;
    g.disc = D;
    g.reps = reduced_forms(D);
    std::vector<QuadForm> squares;
    for (const auto& f : g.reps) {
        int o = class_order(f);
        g.orders.push_back(o);
        g.exponent = std::lcm(g.exponent, o);
        squares.push_back(compose(f, f));
    }
    std::sort(squares.begin(), squares.end());
    squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
    g.genus_count = static_cast<int>(g.reps.size() / squares.size());
    return cache.emplace(D, std::move(g)).first->second;
}

inline bool is_one_class_per_genus(const Int& D) {
    return form_class_group(D).exponent <= 2;
}

// Some (x, y) with f(x,y) = n, or nothing (complete search: for each y with
// |D| y^2 <= 4an the remaining x is pinned by a square test).
inline std::optional<std::pair<Int, Int>> represents(const QuadForm& f, const Int& n) {
    if (!is_positive_definite(f)) throw std::domain_error("represents: form must be positive definite");
    if (n < 0) return std::nullopt;
    if (n == 0) return std::make_pair(Int(0), Int(0));
    const Int absD = -f.disc();
    for (Int y = 0; absD * y * y <= 4 * f.a * n; ++y) {
        Int s = 4 * f.a * n - absD * y * y;
        Int r;
        if (!is_square(s, &r)) continue;
        for (const Int& yy : {Int(y), Int(-y)}) {
            for (const Int& rr : {Int(r), Int(-r)}) {
                Int num = -f.b * yy + rr;
                if (num % (2 * f.a) != 0) continue;
                return std::make_pair(num / (2 * f.a), yy);
            }
            if (y == 0) break;
        }
    }
    return std::nullopt;
}

enum class PrimeSplit { split, inert, ramified };

struct PrimeClass {
    PrimeSplit kind;
    std::vector<QuadForm> reps; // representing class pair (split) or single class (ramified)
};

inline PrimeClass class_of_prime(const Int& p, const Int& D) {
    validate_disc(D);
    if (!is_probable_prime(p)) throw std::domain_error("class_of_prime: p must be prime");
    int s = (p == 2) ? kronecker_at_2(D) : jacobi(D, p);
    PrimeClass out;
    if (s == -1) { out.kind = PrimeSplit::inert; return out; }
    out.kind = (s == 0) ? PrimeSplit::ramified : PrimeSplit::split;
    for (const auto& f : form_class_group(D).reps)
        if (represents(f, p)) out.reps.push_back(f);
    if (out.kind == PrimeSplit::ramified) {
        if (out.reps.size() > 1)
            throw internal_error("class_of_prime: ramified prime represented by several classes");
        return out; // may legitimately be empty for primes dividing the conductor
    }
    if (out.reps.empty() || out.reps.size() > 2)
        throw internal_error("class_of_prime: split prime must land in a class pair");
    return out;
}

} // namespace qrep
