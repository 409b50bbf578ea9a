#pragma once
// Ring class polynomials by complex multiplication and factorization degree
// patterns over prime fields.

#include "qrep/forms.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <map>
#include <mutex>

namespace qrep {

using Real = boost::multiprecision::mpfr_float;

struct ramified_pattern_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntPolynomial {
    std::vector<Int> coeffs; // constant term first

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool monic() const { return !coeffs.empty() && coeffs.back() == 1; }
    std::string str() const {
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (coeffs[i] == 0 && degree() > 0) continue;
            if (!s.empty()) s += coeffs[i] < 0 ? " - " : " + ";
            else if (coeffs[i] < 0) s += "-";
            Int c = abs(coeffs[i]);
            bool show = (c != 1 || i == 0);
            if (show) s += c.str();
            if (i > 0) s += show ? "*x" : "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }
};

struct Complex {
    Real re, im;
};

namespace detail {

// mpfr construction straight from a cpp_int expression template misconverts;
// the const ref forces a materialized integer first.
inline Real to_real(const Int& v) { return Real(v); }

inline Complex cadd(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex csub(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex cmul(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex cdiv(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Real cabs2(const Complex& a) { return a.re * a.re + a.im * a.im; }

inline Complex cpow_ui(Complex base, unsigned e) {
    Complex acc{Real(1), Real(0)};
    while (e) {
        if (e & 1) acc = cmul(acc, base);
        base = cmul(base, base);
        e >>= 1;
    }
    return acc;
}

struct PrecisionGuard {
    unsigned prev;
    explicit PrecisionGuard(unsigned digits10) : prev(Real::default_precision()) {
        Real::default_precision(digits10);
    }
    ~PrecisionGuard() { Real::default_precision(prev); }
};

inline unsigned bits_to_digits(long bits) {
    return static_cast<unsigned>(bits / 3.3219) + 8;
}

// Euler's product (q;q)_inf by the pentagonal-number series.
inline Complex euler_s(const Complex& q, long bits) {
    Real stop = ldexp(Real(1), static_cast<int>(-2 * (bits + 24)));
    Complex S{Real(1), Real(0)};
    Complex P = q; // q^(k(3k-1)/2)
    Complex Q = q; // q^k
    for (int k = 1; k < 100000; ++k) {
        Complex term = cadd(P, cmul(P, Q));
        S = (k % 2) ? csub(S, term) : cadd(S, term);
        Complex q3 = cmul(cmul(Q, Q), Q);
        P = cmul(P, cmul(q3, q));
        Q = cmul(Q, q);
        if (cabs2(P) < stop) return S;
    }
    throw internal_error("euler_s: series failed to converge");
}

} // namespace detail

// j(tau) through the eta quotient u = 2^12 q (S(q^2)/S(q))^24 = f2(tau)^24
// and j = (u + 16)^3 / u.
inline Complex j_invariant(const Complex& tau, long precision_bits) {
    if (!(tau.im > 0)) throw std::domain_error("j_invariant: tau must be in the upper half plane");
    if (precision_bits < 16) precision_bits = 16;
    detail::PrecisionGuard guard(detail::bits_to_digits(precision_bits + 32));
    Real two_pi = 8 * atan(Real(1));
    Real r = exp(-two_pi * Real(tau.im));
    Real ang = two_pi * Real(tau.re);
    Complex q{r * cos(ang), r * sin(ang)};
    Complex sq = detail::euler_s(q, precision_bits);
    Complex sq2 = detail::euler_s(detail::cmul(q, q), precision_bits);
    Complex ratio24 = detail::cpow_ui(detail::cdiv(sq2, sq), 24);
    Complex u = detail::cmul(Complex{Real(4096), Real(0)}, detail::cmul(q, ratio24));
    Complex t = detail::cadd(u, Complex{Real(16), Real(0)});
    return detail::cdiv(detail::cmul(detail::cmul(t, t), t), u);
}

namespace detail {

inline IntPolynomial class_polynomial_detail(const Int& D) {
    validate_disc(D);
    auto reps = reduced_forms(D);
    double sum_inv_a = 0;
    for (const auto& f : reps) sum_inv_a += 1.0 / f.a.convert_to<double>();
    double absD = (-D).convert_to<double>();
    long bits = static_cast<long>(3.14159265358979 * std::sqrt(absD) * sum_inv_a / 0.6931472) + 32;

    double worst = 0;
    for (int attempt = 0; attempt <= 4; ++attempt, bits *= 2) {
        PrecisionGuard guard(bits_to_digits(bits + 32));
        Real sqrt_absD = sqrt(to_real(-D));
        std::vector<Complex> poly{Complex{Real(1), Real(0)}};
        for (const auto& f : reps) {
            Real a2 = 2 * to_real(f.a);
            Complex tau{to_real(-f.b) / a2, sqrt_absD / a2};
            Complex j = j_invariant(tau, bits);
            std::vector<Complex> next(poly.size() + 1, Complex{Real(0), Real(0)});
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] = cadd(next[i + 1], poly[i]);
                next[i] = csub(next[i], cmul(j, poly[i]));
            }
            poly = std::move(next);
        }
        IntPolynomial out;
        worst = 0;
        bool ok = true;
        for (const auto& c : poly) {
            Real nearest = round(c.re);
            double resid = std::max(abs(Real(c.re - nearest)).convert_to<double>(),
                                    abs(c.im).convert_to<double>());
            worst = std::max(worst, resid);
            if (resid >= 1e-6) { ok = false; break; }
            out.coeffs.push_back(nearest.convert_to<Int>());
        }
        if (ok) {
            if (!out.monic() || out.degree() != static_cast<int>(reps.size()))
                throw internal_error("class_polynomial: product lost its shape");
            return out;
        }
    }
    throw internal_error("class_polynomial: residual " + std::to_string(worst) +
                         " after 4 precision doublings for D = " + D.str());
}

} // namespace detail

inline const IntPolynomial& class_polynomial(const Int& D) {
    static std::map<Int, IntPolynomial> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(D);
    if (it != cache.end()) return it->second;
    return cache.emplace(D, detail::class_polynomial_detail(D)).first->second;
}

struct FactorPattern {
    std::vector<int> degrees; // ascending, with multiplicity
    Int prime;
};

namespace polyp {

using Poly = std::vector<Int>; // constant first, coefficients in [0, p)

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly sub(const Poly& a, const Poly& b, const Int& p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        Int v = (i < a.size() ? a[i] : Int(0)) - (i < b.size() ? b[i] : Int(0));
        r[i] = mod_floor(v, p);
    }
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& c : r) c = mod_floor(c, p);
    trim(r);
    return r;
}

// remainder of a by b; b need not be monic
inline Poly rem(Poly a, const Poly& b, const Int& p) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    Int linv = inv_mod(b.back(), p);
    while (deg(a) >= deg(b)) {
        Int q = mod_floor(a.back() * linv, p);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] = mod_floor(a[i + shift] - q * b[i], p);
        trim(a);
    }
    return a;
}

inline Poly divexact(const Poly& a, const Poly& b, const Int& p) {
    Poly r = a, q(a.size() - b.size() + 1, 0);
    Int linv = inv_mod(b.back(), p);
    while (deg(r) >= deg(b)) {
        Int c = mod_floor(r.back() * linv, p);
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[i + shift] = mod_floor(r[i + shift] - c * b[i], p);
        trim(r);
    }
    if (!r.empty()) throw internal_error("polyp::divexact: nonzero remainder");
    return q;
}

inline Poly monic(Poly a, const Int& p) {
    if (a.empty()) return a;
    Int linv = inv_mod(a.back(), p);
    for (auto& c : a) c = mod_floor(c * linv, p);
    return a;
}

inline Poly gcd(Poly a, Poly b, const Int& p) {
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

inline Poly derivative(const Poly& a, const Int& p) {
    Poly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(mod_floor(a[i] * Int(i), p));
    trim(r);
    return r;
}

inline Poly powmod(Poly base, Int e, const Poly& f, const Int& p) {
    Poly acc{1};
    base = rem(std::move(base), f, p);
    while (e > 0) {
        if (e % 2 == 1) acc = rem(mul(acc, base, p), f, p);
        base = rem(mul(base, base, p), f, p);
        e /= 2;
    }
    return acc;
}

} // namespace polyp

// Multiset of irreducible factor degrees of f mod p by distinct-degree
// splitting; factors themselves are never materialized.
inline FactorPattern degree_pattern(const IntPolynomial& f, const Int& p) {
    if (!is_probable_prime(p)) throw std::domain_error("degree_pattern: modulus must be prime");
    if (f.coeffs.empty()) throw std::domain_error("degree_pattern: zero polynomial");
    if (mod_floor(f.coeffs.back(), p) == 0)
        throw std::domain_error("degree_pattern: p divides the leading coefficient");

    polyp::Poly fp;
    for (const Int& c : f.coeffs) fp.push_back(mod_floor(c, p));
    polyp::trim(fp);
    fp = polyp::monic(fp, p);
    if (polyp::deg(polyp::gcd(fp, polyp::derivative(fp, p), p)) > 0)
        throw ramified_pattern_error("degree_pattern: not squarefree mod " + p.str());

    FactorPattern out;
    out.prime = p;
    polyp::Poly x{0, 1};
    polyp::Poly h = x;
    for (int i = 1; polyp::deg(fp) > 0; ++i) {
        if (2 * i > polyp::deg(fp)) {
            out.degrees.push_back(polyp::deg(fp));
            break;
        }
        h = polyp::powmod(h, p, fp, p);
        polyp::Poly g = polyp::gcd(polyp::sub(h, x, p), fp, p);
        if (polyp::deg(g) > 0) {
            for (int c = 0; c < polyp::deg(g) / i; ++c) out.degrees.push_back(i);
            fp = polyp::divexact(fp, g, p);
            h = polyp::rem(h, fp, p);
        }
    }
    std::sort(out.degrees.begin(), out.degrees.end());
    int sum = 0;
    for (int d : out.degrees) sum += d;
    if (sum != f.degree()) throw internal_error("degree_pattern: degrees do not sum to deg f");
    return out;
}

// Order of Frobenius in a cyclic Galois group, read from the splitting type.
inline int frobenius_order(const FactorPattern& pattern, const Int& group_order) {
    if (pattern.degrees.empty()) throw std::domain_error("frobenius_order: empty pattern");
    int d = pattern.degrees.front();
    for (int e : pattern.degrees)
        if (e != d)
            throw std::domain_error("frobenius_order: unequal factor degrees (not Galois here)");
    if (mod_floor(group_order, d) != 0)
        throw std::domain_error("frobenius_order: degree does not divide the group order");
    return d;
}

} // namespace qrep
