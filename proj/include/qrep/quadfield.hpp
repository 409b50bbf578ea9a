#pragma once
// Exact arithmetic in maximal orders of imaginary quadratic fields Q(sqrt(D)),
// D squarefree negative, plus a bounded two-variable representation search.

#include "qrep/arith.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <utility>

namespace qrep {

namespace detail {

inline void validate_field_disc(const Int& D) {
    static std::set<Int> ok;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (ok.count(D)) return;
    if (D >= 0) throw std::domain_error("field parameter must be negative");
    for (auto& [p, e] : factorize(D).factors)
        if (e > 1) throw std::domain_error("field parameter must be squarefree");
    ok.insert(D);
}

} // namespace detail

// Element (u + v*sqrt(D))/2 of the maximal order of Q(sqrt(D)).
// D = 1 mod 4: u and v share parity (half-integers allowed).
// Otherwise: u and v both even (the order is Z[sqrt(D)]).
class QuadInt {
public:
    QuadInt() : u_(0), v_(0), D_(-1) {}
    QuadInt(Int u, Int v, Int D) : u_(std::move(u)), v_(std::move(v)), D_(std::move(D)) {
        detail::validate_field_disc(D_);
        bool ok = (mod_floor(D_, 4) == 1) ? mod_floor(u_ - v_, 2) == 0
                                          : u_ % 2 == 0 && v_ % 2 == 0;
        if (!ok) throw std::domain_error("element is not in the maximal order");
    }

    const Int& u() const { return u_; }
    const Int& v() const { return v_; }
    const Int& D() const { return D_; }

    bool operator==(const QuadInt& o) const { return u_ == o.u_ && v_ == o.v_ && D_ == o.D_; }
    bool operator!=(const QuadInt& o) const { return !(*this == o); }

    bool is_rational() const { return v_ == 0; }

    std::string str() const {
        if (v_ == 0) return Int(u_ / 2).str();
        return "(" + u_.str() + (v_ < 0 ? "" : "+") + v_.str() + "*sqrt(" + D_.str() + "))/2";
    }

private:
    Int u_, v_, D_;
};

inline QuadInt qi_from_int(const Int& n, const Int& D) { return {2 * n, 0, D}; }

inline void require_same_field(const QuadInt& a, const QuadInt& b) {
    if (a.D() != b.D()) throw std::domain_error("mixed field parameters");
}

inline QuadInt add(const QuadInt& a, const QuadInt& b) {
    require_same_field(a, b);
    return {a.u() + b.u(), a.v() + b.v(), a.D()};
}

inline QuadInt sub(const QuadInt& a, const QuadInt& b) {
    require_same_field(a, b);
    return {a.u() - b.u(), a.v() - b.v(), a.D()};
}

inline QuadInt neg(const QuadInt& a) { return {-a.u(), -a.v(), a.D()}; }

inline QuadInt mul(const QuadInt& a, const QuadInt& b) {
    require_same_field(a, b);
    return {(a.u() * b.u() + a.D() * a.v() * b.v()) / 2, (a.u() * b.v() + a.v() * b.u()) / 2,
            a.D()};
}

inline QuadInt conj(const QuadInt& a) { return {a.u(), -a.v(), a.D()}; }

inline Int norm(const QuadInt& a) { return (a.u() * a.u() - a.D() * a.v() * a.v()) / 4; }

// Coordinates over the integral basis: m + k*w with w = (1+sqrt(D))/2 when
// D = 1 mod 4, w = sqrt(D) otherwise.
inline QuadInt qi_from_coords(const Int& m, const Int& k, const Int& D) {
    detail::validate_field_disc(D);
    if (mod_floor(D, 4) == 1) return {2 * m + k, k, D};
    return {2 * m, 2 * k, D};
}

inline std::pair<Int, Int> qi_coords(const QuadInt& a) {
    if (mod_floor(a.D(), 4) == 1) return {(a.u() - a.v()) / 2, a.v()};
    return {a.u() / 2, a.v() / 2};
}

namespace detail {

inline QuadInt normalize_sign(const QuadInt& a) {
    if (a.u() < 0 || (a.u() == 0 && a.v() < 0)) return neg(a);
    return a;
}

} // namespace detail

// Search for a*x^2 + b*y^2 = alpha with integral-basis coordinates of x and y
// in [-bound, bound]. Meet-in-the-middle over increasing max-norm shells, so
// the first hit has minimal shell and the result is deterministic. A miss
// only means "not found within bound", never nonexistence.
inline std::optional<std::pair<QuadInt, QuadInt>> oracle_search(const Int& a, const Int& b,
                                                                const QuadInt& alpha,
                                                                const Int& bound) {
    if (a <= 0 || b <= 0) throw std::domain_error("oracle_search: coefficients must be positive");
    if (bound < 1) throw std::domain_error("oracle_search: bound must be positive");
    const Int D = alpha.D();
    const QuadInt qa = qi_from_int(a, D), qb = qi_from_int(b, D);

    using Key = std::pair<Int, Int>;
    auto key = [](const QuadInt& z) { return Key{z.u(), z.v()}; };
    std::map<Key, QuadInt> xmap, ymap; // a*x^2 -> x, b*y^2 -> y
    std::vector<QuadInt> shell;

    auto finish = [&](const QuadInt& x, const QuadInt& y) {
        if (add(mul(qa, mul(x, x)), mul(qb, mul(y, y))) != alpha)
            throw internal_error("oracle_search: candidate fails the equation");
        return std::make_pair(detail::normalize_sign(x), detail::normalize_sign(y));
    };

    for (Int s = 0; s <= bound; ++s) {
        shell.clear();
        for (Int m = -s; m <= s; ++m) {
            if (abs(m) == s) {
                for (Int k = -s; k <= s; ++k) shell.push_back(qi_from_coords(m, k, D));
            } else {
                shell.push_back(qi_from_coords(m, -s, D));
                shell.push_back(qi_from_coords(m, s, D));
            }
        }
        for (const QuadInt& t : shell) {
            QuadInt t2 = mul(t, t);
            xmap.emplace(key(mul(qa, t2)), t);
            ymap.emplace(key(mul(qb, t2)), t);
        }
        for (const QuadInt& t : shell) {
            auto it = ymap.find(key(sub(alpha, mul(qa, mul(t, t)))));
            if (it != ymap.end()) return finish(t, it->second);
        }
        for (const QuadInt& t : shell) {
            auto it = xmap.find(key(sub(alpha, mul(qb, mul(t, t)))));
            if (it != xmap.end()) return finish(it->second, t);
        }
    }
    return std::nullopt;
}

} // namespace qrep
