#include <catch2/catch_amalgamated.hpp>

#include "qrep/local.hpp"

#include <set>

using namespace qrep;

namespace {

// any solution of a x^2 + b y^2 = n mod p^K, checked exhaustively
bool exhaustive_mod(long long a, long long b, long long n, long long M) {
    std::vector<char> is_by2(M, 0);
    for (long long y = 0; y < M; ++y) {
        long long v = ((__int128)b * y % M * y % M + M) % M;
        is_by2[v] = 1;
    }
    for (long long x = 0; x < M; ++x) {
        long long need = ((n - (__int128)a * x % M * x % M) % M + M) % M;
        if (is_by2[need]) return true;
    }
    return false;
}

long long ipow(long long p, int k) {
    long long r = 1;
    while (k--) r *= p;
    return r;
}

} // namespace

TEST_CASE("infinity") {
    CHECK_FALSE(local_at_infinity(2, 7, -3).solvable);
    CHECK(local_at_infinity(2, 7, 5).solvable);
    CHECK(local_at_infinity(1, -2, -1).solvable);
    CHECK(local_at_infinity(-2, -7, -3).solvable);
    CHECK_FALSE(local_at_infinity(-2, -7, 3).solvable);
    auto v = local_at_infinity(2, 7, 5);
    CHECK(v.method == LocalMethod::real_sign);
    CHECK(v.place.infinite);
    CHECK_FALSE(v.witness.has_value());
    CHECK_THROWS_AS(local_at_infinity(0, 7, 5), std::domain_error);
    CHECK_THROWS_AS(local_at_infinity(2, 7, 0), std::domain_error);
}

TEST_CASE("odd primes away from the coefficients") {
    auto v1 = local_at_odd_prime(2, 7, 9, 3);
    CHECK(v1.solvable);
    CHECK(v1.method == LocalMethod::closed_form);
    REQUIRE(v1.witness.has_value());
    CHECK(witness_is_sound(2, 7, 9, 3, *v1.witness));

    auto v2 = local_at_odd_prime(2, 7, 5, 5);
    CHECK(v2.solvable);
    REQUIRE(v2.witness.has_value());
    CHECK(witness_is_sound(2, 7, 5, 5, *v2.witness));

    auto v3 = local_at_odd_prime(2, 7, 11, 11);
    CHECK_FALSE(v3.solvable);
    CHECK_FALSE(v3.witness.has_value());

    // anisotropic with even valuation: (-14/11) = -1, v_11(121) = 2
    auto v4 = local_at_odd_prime(2, 7, 121, 11);
    CHECK(v4.solvable);
    REQUIRE(v4.witness.has_value());
    CHECK(witness_is_sound(2, 7, 121, 11, *v4.witness));
    CHECK(v4.witness->modulus == Int(11) * 11 * 11);

    CHECK_THROWS_AS(local_at_odd_prime(2, 7, 9, 7), std::domain_error);
    CHECK_THROWS_AS(local_at_odd_prime(2, 7, 9, 2), std::domain_error);
    CHECK_THROWS_AS(local_at_odd_prime(2, 7, 0, 3), std::domain_error);
    CHECK_THROWS_AS(local_at_odd_prime(2, 7, 9, 15), std::domain_error);
}

TEST_CASE("generic enumeration pins") {
    auto v1 = local_generic(2, 7, 3, 2);
    CHECK_FALSE(v1.solvable);
    // frozen residue set mod 8
    std::set<long long> residues;
    for (long long x = 0; x < 8; ++x)
        for (long long y = 0; y < 8; ++y) residues.insert((2 * x * x + 7 * y * y) % 8);
    CHECK(residues == std::set<long long>{0, 1, 2, 4, 6, 7});

    auto v2 = local_generic(2, 7, 2, 2);
    CHECK(v2.solvable);
    CHECK(v2.method == LocalMethod::enumeration);
    REQUIRE(v2.witness.has_value());
    CHECK(v2.witness->x == 1);
    CHECK(v2.witness->y == 0);
    CHECK(witness_is_sound(2, 7, 2, 2, *v2.witness));

    auto v3 = local_generic(2, 7, 14, 7);
    CHECK(v3.solvable);
    REQUIRE(v3.witness.has_value());
    CHECK(witness_is_sound(2, 7, 14, 7, *v3.witness));

    auto v4 = local_generic(1, 5, 3, 2); // x^2 + 5y^2 mod 8 misses 3
    CHECK_FALSE(v4.solvable);

    CHECK_THROWS_AS(local_generic(2, 7, 0, 2), std::domain_error);
    CHECK_THROWS_AS(local_generic(2, 7, 5, 6), std::domain_error);
}

TEST_CASE("closed form agrees with enumeration on a grid") {
    const Int as[] = {1, 2, 3, 5, 7};
    for (const Int& a : as) {
        for (const Int& b : as) {
            for (const Int p : {Int(3), Int(5), Int(11), Int(13)}) {
                if (mod_floor(a, p) == 0 || mod_floor(b, p) == 0) continue;
                for (Int n = -60; n <= 60; ++n) {
                    if (n == 0) continue;
                    auto cf = local_at_odd_prime(a, b, n, p);
                    auto en = local_generic(a, b, n, p);
                    INFO("a=" << a.str() << " b=" << b.str() << " n=" << n.str()
                              << " p=" << p.str());
                    REQUIRE(cf.solvable == en.solvable);
                    if (cf.solvable) {
                        CHECK(witness_is_sound(a, b, n, p, *cf.witness));
                        CHECK(witness_is_sound(a, b, n, p, *en.witness));
                    }
                }
            }
        }
    }
}

TEST_CASE("enumeration is complete at desk scale") {
    const long long as[] = {1, 2, 5, 7};
    const long long bs[] = {1, 5, 7};
    for (long long a : as) {
        for (long long b : bs) {
            for (const long long p : {2LL, 3LL, 5LL, 7LL}) {
                for (long long n = -200; n <= 200; ++n) {
                    if (n == 0) continue;
                    int K = 2 * (valuation(4 * a * b, p) + valuation(n, p)) + 1;
                    long long M = ipow(p, K);
                    if (M > 2000000) continue; // keep the oracle affordable
                    bool oracle = exhaustive_mod(a, b, n, M);
                    auto got = local_generic(a, b, n, p);
                    INFO("a=" << a << " b=" << b << " n=" << n << " p=" << p << " K=" << K);
                    REQUIRE(got.solvable == oracle);
                }
            }
        }
    }
}

TEST_CASE("scaling by p^2 preserves solvability") {
    for (const Int p : {Int(2), Int(3), Int(7)}) {
        for (Int n = 1; n <= 40; ++n) {
            auto base = local_generic(2, 7, n, p);
            if (!base.solvable) continue;
            auto scaled = local_generic(2, 7, n * p * p, p);
            CHECK(scaled.solvable);
        }
    }
}

TEST_CASE("survey across all places") {
    auto s1 = local_everywhere(2, 7, 14);
    CHECK(s1.solvable);
    REQUIRE(s1.verdicts.size() == 3); // infinity, 2, 7
    CHECK(s1.verdicts[0].place.infinite);
    CHECK(s1.verdicts[1].place == Place::prime(2));
    CHECK(s1.verdicts[2].place == Place::prime(7));

    // n = 3 dies at 2 (mod-8 residues) and at 7 (3 is a nonresidue mod 7)
    auto s2 = local_everywhere(2, 7, 3);
    CHECK_FALSE(s2.solvable);
    REQUIRE(s2.verdicts.size() == 4); // infinity, 2, 3, 7
    for (const auto& v : s2.verdicts) {
        bool should_fail = !v.place.infinite && (v.place.p == 2 || v.place.p == 7);
        CHECK(v.solvable == !should_fail);
    }

    // n = 11 dies at 11 ((-14/11) = -1, odd valuation) and at 2 (11 = 3 mod 8)
    auto s3 = local_everywhere(2, 7, 11);
    CHECK_FALSE(s3.solvable);
    for (const auto& v : s3.verdicts) {
        bool should_fail = !v.place.infinite && (v.place.p == 11 || v.place.p == 2);
        CHECK(v.solvable == !should_fail);
    }

    // wrong sign short-circuits with only the infinity entry
    auto s4 = local_everywhere(2, 7, -5);
    CHECK_FALSE(s4.solvable);
    CHECK(s4.verdicts.size() == 1);
    CHECK(s4.verdicts[0].place.infinite);

    CHECK_THROWS_AS(local_everywhere(1, -1, 5), std::domain_error);
    CHECK_THROWS_AS(local_everywhere(2, -8, 5), std::domain_error);
    CHECK_THROWS_AS(local_everywhere(2, 7, 0), std::domain_error);
}

TEST_CASE("indefinite forms at finite places") {
    // x^2 - 2y^2 = -1 is solvable everywhere (and globally: x=1, y=1)
    auto s = local_everywhere(1, -2, -1);
    CHECK(s.solvable);
    for (const auto& v : s.verdicts)
        if (!v.place.infinite) CHECK(witness_is_sound(1, -2, -1, v.place.p, *v.witness));
}
