#include <catch2/catch_amalgamated.hpp>

#include "qrep/arith.hpp"

#include <random>
#include <vector>

using namespace qrep;

static std::vector<int> small_primes_upto(int n) {
    std::vector<bool> sieve(n + 1, true);
    std::vector<int> ps;
    for (int i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        ps.push_back(i);
        for (long long j = 1LL * i * i; j <= n; j += i) sieve[j] = false;
    }
    return ps;
}

TEST_CASE("factorize on pinned inputs") {
    auto f = factorize(392);
    REQUIRE(f.sign == 1);
    REQUIRE(f.factors == std::vector<std::pair<Int, int>>{{2, 3}, {7, 2}});

    auto g = factorize(9991);
    REQUIRE(g.factors == std::vector<std::pair<Int, int>>{{97, 1}, {103, 1}});

    auto h = factorize(-60);
    REQUIRE(h.sign == -1);
    REQUIRE(h.factors == std::vector<std::pair<Int, int>>{{2, 2}, {3, 1}, {5, 1}});

    auto one = factorize(1);
    REQUIRE(one.sign == 1);
    REQUIRE(one.factors.empty());
    REQUIRE(one.reconstruct() == 1);

    REQUIRE_THROWS_AS(factorize(0), std::domain_error);
}

TEST_CASE("factorize matches a sieve oracle exhaustively below 10^6") {
    const int N = 1000000;
    std::vector<int> spf(N + 1, 0);
    for (int i = 2; i <= N; ++i) {
        if (spf[i]) continue;
        for (long long j = i; j <= N; j += i)
            if (!spf[j]) spf[j] = i;
    }
    for (int n = 1; n <= N; ++n) {
        auto f = factorize(n);
        Int r = 1;
        int prev = 0;
        for (auto& [p, e] : f.factors) {
            REQUIRE(p > prev);
            prev = static_cast<int>(p);
            for (int k = 0; k < e; ++k) r *= p;
        }
        if (f.reconstruct() != n) FAIL("factorize broke at n=" << n);
        // spot check smallest factor agrees with the sieve
        if (n > 1) {
            REQUIRE(f.factors.front().first == spf[n]);
        }
    }
    // negative side, sampled
    for (int n = 1; n <= 5000; ++n) {
        auto f = factorize(-n);
        REQUIRE(f.reconstruct() == -n);
    }
}

TEST_CASE("factorize handles 64-bit composites via rho") {
    Int a = Int("1000003") * Int("1000033");
    auto f = factorize(a);
    REQUIRE(f.factors == std::vector<std::pair<Int, int>>{{1000003, 1}, {1000033, 1}});

    std::mt19937_64 rng(12345);
    for (int i = 0; i < 60; ++i) {
        Int n = Int(rng() | 1);
        auto g = factorize(n);
        REQUIRE(g.reconstruct() == n);
        for (auto& [p, e] : g.factors) REQUIRE(is_probable_prime(p));
    }
}

TEST_CASE("primality on pinned inputs") {
    REQUIRE(is_probable_prime(2));
    REQUIRE(is_probable_prime(3));
    REQUIRE(is_probable_prime(7919));
    REQUIRE(is_probable_prime(Int("2305843009213693951"))); // 2^61 - 1
    REQUIRE_FALSE(is_probable_prime(0));
    REQUIRE_FALSE(is_probable_prime(1));
    REQUIRE_FALSE(is_probable_prime(561));    // Carmichael
    REQUIRE_FALSE(is_probable_prime(41041));  // Carmichael
    REQUIRE_FALSE(is_probable_prime(Int("2305843009213693953")));
}

TEST_CASE("jacobi on pinned inputs and errors") {
    REQUIRE(jacobi(-14, 23) == 1);
    REQUIRE(jacobi(2, 7) == 1);
    REQUIRE(jacobi(3, 7) == -1);
    REQUIRE(jacobi(14, 7) == 0);
    REQUIRE_THROWS_AS(jacobi(3, 8), std::domain_error);
    REQUIRE_THROWS_AS(jacobi(3, -7), std::domain_error);
}

TEST_CASE("jacobi is multiplicative and matches Euler's criterion") {
    auto ps = small_primes_upto(500);
    for (int p : ps) {
        if (p == 2) continue;
        for (int a = 0; a < p; ++a) {
            int j = jacobi(a, p);
            Int e = powmod(a, (Int(p) - 1) / 2, p);
            int euler = (e == 0) ? 0 : (e == 1 ? 1 : -1);
            REQUIRE(j == euler);
        }
    }
    std::mt19937_64 rng(77);
    for (int i = 0; i < 500; ++i) {
        Int m = Int(rng() % 9999) * 2 + 1;
        Int a = Int(rng() % 100000) - 50000;
        Int b = Int(rng() % 100000) - 50000;
        REQUIRE(jacobi(a * b, m) == jacobi(a, m) * jacobi(b, m));
    }
}

TEST_CASE("quartic symbol on pinned inputs and errors") {
    REQUIRE(quartic_symbol(4, 5) == -1);
    REQUIRE(quartic_symbol(13, 17) == 1);
    REQUIRE_THROWS_AS(quartic_symbol(2, 7), std::domain_error);   // p = 3 mod 4
    REQUIRE_THROWS_AS(quartic_symbol(2, 5), std::domain_error);   // non-residue
    REQUIRE_THROWS_AS(quartic_symbol(3, 15), std::domain_error);  // composite
}

TEST_CASE("quartic symbol: +1 iff a is a fourth power mod p") {
    for (int p : {5, 13, 17, 29, 37, 41}) {
        std::vector<bool> fourth(p, false);
        for (int x = 1; x < p; ++x) {
            long long f = 1LL * x * x % p;
            f = f * f % p;
            fourth[static_cast<int>(f)] = true;
        }
        for (int a = 1; a < p; ++a) {
            if (jacobi(a, p) != 1) continue;
            REQUIRE((quartic_symbol(a, p) == 1) == fourth[a]);
        }
    }
}

TEST_CASE("sqrt_mod on pinned inputs") {
    auto r = sqrt_mod(2, 7);
    REQUIRE(r.has_value());
    REQUIRE(r->first == 3);
    REQUIRE(r->second == 4);
    REQUIRE_FALSE(sqrt_mod(3, 7).has_value());
    auto z = sqrt_mod(0, 11);
    REQUIRE(z.has_value());
    REQUIRE(z->first == 0);
    REQUIRE(z->second == 0);
    REQUIRE_THROWS_AS(sqrt_mod(2, 9), std::domain_error);
    REQUIRE_THROWS_AS(sqrt_mod(2, 2), std::domain_error);
}

TEST_CASE("sqrt_mod round-trips exhaustively for p < 200") {
    for (int p : small_primes_upto(199)) {
        if (p == 2) continue;
        for (int a = 0; a < p; ++a) {
            auto r = sqrt_mod(a, p);
            if (jacobi(a, p) == -1) {
                REQUIRE_FALSE(r.has_value());
            } else {
                REQUIRE(r.has_value());
                REQUIRE(r->first * r->first % p == a);
                REQUIRE(r->second * r->second % p == a);
                REQUIRE(r->first <= r->second);
            }
        }
    }
}

TEST_CASE("valuation") {
    REQUIRE(valuation(56, 2) == 3);
    REQUIRE(valuation(56, 7) == 1);
    REQUIRE(valuation(56, 3) == 0);
    REQUIRE(valuation(-24, 2) == 3);
    REQUIRE_THROWS_AS(valuation(0, 2), std::domain_error);
}
