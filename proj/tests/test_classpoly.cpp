#include <catch2/catch_amalgamated.hpp>

#include "qrep/classpoly.hpp"

using namespace qrep;

namespace {

Complex cx(double re, double im) { return Complex{Real(re), Real(im)}; }

double dist_to(const Complex& z, double target) {
    Real d = sqrt((z.re - target) * (z.re - target) + z.im * z.im);
    return d.convert_to<double>();
}

IntPolynomial poly(std::vector<Int> cs) { return IntPolynomial{std::move(cs)}; }

// |f(z)| / (1 + |z|)^deg at the given precision
double root_residual(const IntPolynomial& f, const Complex& z) {
    Complex acc{Real(0), Real(0)};
    for (int i = f.degree(); i >= 0; --i) {
        acc = detail::cmul(acc, z);
        acc.re += detail::to_real(f.coeffs[i]);
    }
    Real scale = 1 + sqrt(detail::cabs2(z));
    Real rel = sqrt(detail::cabs2(acc)) / pow(scale, f.degree());
    return rel.convert_to<double>();
}

} // namespace

TEST_CASE("modular j at classical points") {
    CHECK(dist_to(j_invariant(cx(0, 1), 128), 1728.0) < 1e-20);
    CHECK(dist_to(j_invariant(cx(0, 2), 128), 287496.0) < 1e-20);
    CHECK(dist_to(j_invariant(cx(0.5, std::sqrt(3) / 2), 128), 0.0) < 1e-20);
    // translation invariance j(tau + 1) = j(tau)
    CHECK(dist_to(j_invariant(cx(1, 1), 128), 1728.0) < 1e-20);

    CHECK_THROWS_AS(j_invariant(cx(0, 0), 64), std::domain_error);
    CHECK_THROWS_AS(j_invariant(cx(1, -2), 64), std::domain_error);
}

TEST_CASE("linear class polynomials") {
    CHECK(class_polynomial(-3).coeffs == std::vector<Int>{0, 1});
    CHECK(class_polynomial(-4).coeffs == std::vector<Int>{-1728, 1});
    CHECK(class_polynomial(-7).coeffs == std::vector<Int>{3375, 1});
    CHECK(class_polynomial(-8).coeffs == std::vector<Int>{-8000, 1});
    CHECK(class_polynomial(-11).coeffs == std::vector<Int>{32768, 1});
    CHECK(class_polynomial(-163).coeffs == std::vector<Int>{Int("262537412640768000"), 1});
}

TEST_CASE("degree two class polynomial") {
    // j(sqrt(-5)) = 632000 + 282880 sqrt(5) and its conjugate
    CHECK(class_polynomial(-20).coeffs == std::vector<Int>{-681472000, -1264000, 1});
}

TEST_CASE("class polynomial shape and root residuals") {
    for (const Int D : {Int(-4), Int(-20), Int(-56), Int(-84), Int(-120)}) {
        const IntPolynomial& H = class_polynomial(D);
        CHECK(H.monic());
        CHECK(H.degree() == class_number(D));
        detail::PrecisionGuard guard(detail::bits_to_digits(320));
        Real s = sqrt(detail::to_real(-D));
        for (const auto& f : reduced_forms(D)) {
            Real a2 = 2 * detail::to_real(f.a);
            Complex tau{detail::to_real(-f.b) / a2, s / a2};
            CHECK(root_residual(H, j_invariant(tau, 256)) < 1e-30);
        }
    }
    CHECK(&class_polynomial(-56) == &class_polynomial(-56)); // cached
    CHECK_THROWS_AS(class_polynomial(-5), std::domain_error);
    CHECK_THROWS_AS(class_polynomial(8), std::domain_error);
}

TEST_CASE("degree pattern pins") {
    IntPolynomial x2p1 = poly({1, 0, 1});
    auto pat = degree_pattern(x2p1, 5);
    CHECK(pat.degrees == std::vector<int>{1, 1});
    CHECK(pat.prime == 5);
    CHECK(degree_pattern(x2p1, 3).degrees == std::vector<int>{2});

    IntPolynomial quartic = poly({1, 1, 0, -1, 1}); // x^4 - x^3 + x + 1
    CHECK(degree_pattern(quartic, 5).degrees == std::vector<int>{4});

    CHECK(degree_pattern(poly({-2, 0, 0, 1}), 7).degrees == std::vector<int>{3});
    CHECK(degree_pattern(poly({-3, 1, -3, 1}), 7).degrees == std::vector<int>{1, 2});
    CHECK(degree_pattern(poly({0, 1}), 2).degrees == std::vector<int>{1});

    CHECK_THROWS_AS(degree_pattern(x2p1, 2), ramified_pattern_error);
    CHECK_THROWS_AS(degree_pattern(poly({1, 2, 1}), 5), ramified_pattern_error);
    CHECK_THROWS_AS(degree_pattern(poly({1, 0, 5}), 5), std::domain_error);
    CHECK_THROWS_AS(degree_pattern(x2p1, 6), std::domain_error);
    CHECK_THROWS_AS(degree_pattern(poly({}), 5), std::domain_error);
}

TEST_CASE("frobenius order from patterns") {
    CHECK(frobenius_order(FactorPattern{{1, 1, 1, 1}, 11}, 4) == 1);
    CHECK(frobenius_order(FactorPattern{{2, 2}, 11}, 4) == 2);
    CHECK(frobenius_order(FactorPattern{{4}, 11}, 4) == 4);
    CHECK(frobenius_order(FactorPattern{{1}, 11}, 1) == 1);
    CHECK_THROWS_AS(frobenius_order(FactorPattern{{1, 2}, 11}, 4), std::domain_error);
    CHECK_THROWS_AS(frobenius_order(FactorPattern{{3}, 11}, 4), std::domain_error);
    CHECK_THROWS_AS(frobenius_order(FactorPattern{{}, 11}, 4), std::domain_error);
}

TEST_CASE("splitting law matches the class group") {
    // For split p the factor degrees are h/d copies of the order d of the
    // representing class; in particular all linear iff p lands in the
    // principal class. Inert p instead reduce to supersingular j-invariants,
    // which live in GF(p^2), so their factors have degree at most 2 and can
    // be all linear without p being represented at all (D = -20, p = 11:
    // H = x(x-1) mod 11, roots 0 and 1728 = 1).
    for (const Int D : {Int(-20), Int(-56)}) {
        const IntPolynomial& H = class_polynomial(D);
        const QuadForm principal = principal_form(D);
        int split_seen = 0, inert_seen = 0, skipped = 0;
        for (Int p = 3; p < 5000; ++p) {
            if (!is_probable_prime(p) || mod_floor(D, p) == 0) continue;
            FactorPattern pat;
            try {
                pat = degree_pattern(H, p);
            } catch (const ramified_pattern_error&) {
                ++skipped; // p divides the discriminant of H
                continue;
            }
            PrimeClass pc = class_of_prime(p, D);
            if (pc.kind == PrimeSplit::split) {
                int d = class_order(pc.reps.front());
                CHECK(pat.degrees == std::vector<int>(H.degree() / d, d));
                bool all_ones = true;
                for (int e : pat.degrees) all_ones = all_ones && e == 1;
                CHECK(all_ones == (pc.reps.front() == principal));
                ++split_seen;
            } else {
                for (int e : pat.degrees) CHECK(e <= 2);
                ++inert_seen;
            }
        }
        CHECK(split_seen > 250);
        CHECK(inert_seen > 250);
        CHECK(skipped < 10);
    }
}

TEST_CASE("frobenius order agrees with composition order") {
    const IntPolynomial& H = class_polynomial(-56);
    int checked = 0;
    for (Int p = 3; p < 2000; ++p) {
        if (!is_probable_prime(p) || mod_floor(Int(-56), p) == 0) continue;
        PrimeClass pc = class_of_prime(p, -56);
        if (pc.kind != PrimeSplit::split) continue;
        FactorPattern pat;
        try {
            pat = degree_pattern(H, p);
        } catch (const ramified_pattern_error&) {
            continue;
        }
        CHECK(frobenius_order(pat, 4) == class_order(pc.reps.front()));
        ++checked;
    }
    CHECK(checked > 100);
}
