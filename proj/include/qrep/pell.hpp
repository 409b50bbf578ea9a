#pragma once
// Continued fractions of sqrt(N), Pell-like equations x^2 - N y^2 = m, and
// witness construction for x0^2 + q*y0^2 = -1 over Z[sqrt(-p)].

#include "qrep/quadfield.hpp"

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace qrep {

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CFExpansion {
    Int N;
    Int a0;
    std::vector<Int> period;
};

inline CFExpansion cf_sqrt(const Int& N) {
    if (N <= 1) throw std::domain_error("cf_sqrt: need N > 1");
    Int a0;
    if (is_square(N, &a0)) throw std::domain_error("cf_sqrt: N is a perfect square");
    a0 = isqrt(N);
    CFExpansion cf{N, a0, {}};
    Int m = 0, d = 1, a = a0;
    do {
        m = d * a - m;
        d = (N - m * m) / d;
        a = (a0 + m) / d;
        cf.period.push_back(a);
    } while (a != 2 * a0);
    return cf;
}

struct PellSolution {
    Int x, y, N, m;
};

inline PellSolution checked_pell(Int x, Int y, const Int& N, const Int& m) {
    if (x < 0) x = -x;
    if (y < 0) y = -y;
    if (x * x - N * y * y != m) throw internal_error("pell solution fails its equation");
    return {x, y, N, m};
}

namespace detail {

// p/q convergents of sqrt(N), count terms; callback gets (k, p_k, q_k).
template <typename F>
inline void walk_convergents(const CFExpansion& cf, size_t count, F&& visit) {
    Int pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
    for (size_t k = 0; k < count; ++k) {
        Int ak = (k == 0) ? cf.a0 : cf.period[(k - 1) % cf.period.size()];
        Int pk = ak * pm1 + pm2;
        Int qk = ak * qm1 + qm2;
        visit(k, pk, qk);
        pm2 = pm1; pm1 = pk;
        qm2 = qm1; qm1 = qk;
    }
}

} // namespace detail

inline PellSolution fundamental_solution(const Int& N) {
    CFExpansion cf = cf_sqrt(N);
    size_t r = cf.period.size();
    size_t idx = (r % 2 == 0) ? r - 1 : 2 * r - 1;
    std::optional<PellSolution> out;
    detail::walk_convergents(cf, idx + 1, [&](size_t k, const Int& p, const Int& q) {
        if (k == idx) out = checked_pell(p, q, N, 1);
    });
    return *out;
}

inline std::optional<PellSolution> negative_pell(const Int& N) {
    CFExpansion cf = cf_sqrt(N);
    size_t r = cf.period.size();
    if (r % 2 == 0) return std::nullopt;
    std::optional<PellSolution> out;
    detail::walk_convergents(cf, r, [&](size_t k, const Int& p, const Int& q) {
        if (k == r - 1) out = checked_pell(p, q, N, -1);
    });
    return *out;
}

enum class SearchStatus { found, none_complete, budget_exhausted };

inline const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::none_complete: return "none_complete";
        case SearchStatus::budget_exhausted: return "budget_exhausted";
    }
    return "?";
}

struct PellLikeResult {
    SearchStatus status;
    std::optional<PellSolution> solution;
};

// x^2 - N y^2 = m. For m^2 < N every primitive solution sits on a convergent,
// so scanning two periods plus square-divisor rescaling is complete. Otherwise
// brute-force y up to the classical minimal-representative bound
// sqrt(|m| (t+1) / (2N)), truncated at the budget.
inline PellLikeResult solve_pell_like(const Int& N, const Int& m,
                                      const Int& budget = Int(10000000)) {
    if (m == 0) throw std::domain_error("solve_pell_like: m must be nonzero");
    if (abs(m) > budget) throw std::domain_error("solve_pell_like: |m| exceeds the search budget");
    CFExpansion cf = cf_sqrt(N); // validates N

    if (m * m < N) {
        // m/g^2 for every square divisor g^2 | m, mapped back to its g
        std::map<Int, Int> targets;
        Int g = 1;
        for (; g * g <= abs(m); ++g)
            if (m % (g * g) == 0) targets.emplace(m / (g * g), g);
        std::optional<PellSolution> hit;
        detail::walk_convergents(cf, 2 * cf.period.size(), [&](size_t, const Int& p, const Int& q) {
            if (hit) return;
            auto it = targets.find(p * p - N * q * q);
            if (it != targets.end()) hit = checked_pell(it->second * p, it->second * q, N, m);
        });
        if (hit) return {SearchStatus::found, hit};
        return {SearchStatus::none_complete, std::nullopt};
    }

    PellSolution fund = fundamental_solution(N);
    Int ybound = isqrt(abs(m) * (fund.x + 1) / (2 * N)) + 1;
    bool complete = ybound <= budget;
    Int ylim = complete ? ybound : budget;
    Int y = 0;
    if (m < 0) y = isqrt((-m) / N); // below this x^2 would be negative
    for (; y <= ylim; ++y) {
        Int xx = m + N * y * y;
        if (xx < 0) continue;
        Int x;
        if (is_square(xx, &x)) return {SearchStatus::found, checked_pell(x, y, N, m)};
    }
    return {complete ? SearchStatus::none_complete : SearchStatus::budget_exhausted, std::nullopt};
}

namespace detail {

// Minimal positive (X, y) with p X^2 - q y^2 = 1, or nothing. Walks the
// reduction cycle of the indefinite form (p, 0, -q) with the change of basis
// carried along; the form represents 1 iff some form in its cycle has leading
// coefficient 1. Complete, no search budget involved.
inline std::optional<std::pair<Int, Int>> solve_unit_split(const Int& p, const Int& q) {
    const Int Delta = 4 * p * q;
    const Int sq = isqrt(Delta);
    if (sq * sq == Delta) throw std::domain_error("solve_unit_split: pq must be nonsquare");

    auto reduced = [&](const Int& a, const Int& b) {
        if (b <= 0 || b * b >= Delta) return false;
        Int t = 2 * abs(a);
        return (t + b) * (t + b) > Delta && (t <= b || (t - b) * (t - b) < Delta);
    };

    Int a = p, b = 0, c = -q;
    Int m00 = 1, m01 = 0, m10 = 0, m11 = 1; // current form = (p,0,-q) composed with M
    std::optional<std::pair<Int, Int>> best;
    auto consider = [&]() {
        if (a != 1) return;
        Int X = abs(m00), y = abs(m10);
        if (!best || y < best->second) best = {X, y};
    };
    consider();

    std::set<std::pair<Int, Int>> seen;
    bool closed = false;
    for (int guard = 0; guard < 1000000 && !closed; ++guard) {
        if (reduced(a, b) && !seen.insert({a, b}).second) {
            closed = true; // full cycle walked
            break;
        }
        // rho step: b' = -b mod 2|c| in the window (w - 2|c|, w]
        Int twoc = 2 * abs(c);
        Int w = (abs(c) > sq) ? abs(c) : sq;
        Int bp = w - mod_floor(w + b, twoc);
        Int s = (bp + b) / (2 * c);
        Int ap = c, cp = (bp * bp - Delta) / (4 * c);
        // basis change by [[0,-1],[1,s]]
        Int newm00 = m01, newm10 = m11;
        Int newm01 = -m00 + s * m01, newm11 = -m10 + s * m11;
        m00 = newm00; m10 = newm10; m01 = newm01; m11 = newm11;
        a = ap; b = bp; c = cp;
        consider();
    }
    if (!closed) throw internal_error("solve_unit_split: reduction cycle did not close");
    if (!best) return std::nullopt;

    // pull back along the automorph while it shrinks
    PellSolution f = fundamental_solution(p * q);
    for (;;) {
        Int X2 = f.x * best->first - q * f.y * best->second;
        Int y2 = f.x * best->second - p * f.y * best->first;
        X2 = abs(X2); y2 = abs(y2);
        if (y2 < best->second && p * X2 * X2 - q * y2 * y2 == 1)
            best = {X2, y2};
        else
            break;
    }
    if (p * best->first * best->first - q * best->second * best->second != 1)
        throw internal_error("solve_unit_split: candidate fails its equation");
    return best;
}

} // namespace detail

// Hypotheses: p, q distinct primes, both 1 mod 4, and (p/q) = -1 or the
// quartic residue symbol (p/q)_4 = -1. Produces (x0, y0) in Z[sqrt(-p)] with
// x0^2 + q y0^2 = -1: either from x^2 - pq y^2 = -1 as (x, y sqrt(-p)), or
// from p X^2 - q y^2 = 1 as (X sqrt(-p), y).
inline std::pair<QuadInt, QuadInt> condition1_witness(const Int& p, const Int& q) {
    if (!is_probable_prime(p) || !is_probable_prime(q) || p == q)
        throw std::domain_error("condition1_witness: need distinct primes");
    if (mod4(p) != 1 || mod4(q) != 1)
        throw std::domain_error("condition1_witness: primes must be 1 mod 4");
    int leg = jacobi(p, q);
    if (leg != -1 && !(leg == 1 && quartic_symbol(p, q) == -1))
        throw std::domain_error("condition1_witness: residue hypothesis fails");

    const Int D = -p;
    std::optional<std::pair<QuadInt, QuadInt>> w;
    if (auto np = negative_pell(p * q)) {
        w = {qi_from_int(np->x, D), QuadInt(0, 2 * np->y, D)};
    } else if (auto us = detail::solve_unit_split(p, q)) {
        w = {QuadInt(0, 2 * us->first, D), qi_from_int(us->second, D)};
    }
    if (!w) throw internal_error("condition1_witness: both constructions exhausted");
    QuadInt lhs = add(mul(w->first, w->first),
                      mul(qi_from_int(q, D), mul(w->second, w->second)));
    if (lhs != qi_from_int(-1, D))
        throw internal_error("condition1_witness: witness fails its equation");
    return *w;
}

} // namespace qrep
