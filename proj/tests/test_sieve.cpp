#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "primewin/counter.hpp"
#include "primewin/errors.hpp"
#include "primewin/sieve.hpp"

using namespace primewin;

TEST_CASE("sieve_primes examples") {
    CHECK(sieve_primes(0, 10) == std::vector<std::int64_t>{2, 3, 5, 7});
    CHECK(sieve_primes(100, 110) == std::vector<std::int64_t>{101, 103, 107, 109});
    CHECK(sieve_primes(8, 8).empty());
    CHECK(sieve_primes(1.5, 2.0) == std::vector<std::int64_t>{2});
    CHECK(sieve_primes(2.0, 3.9) == std::vector<std::int64_t>{3});
}

TEST_CASE("sieve ceiling is enforced") {
    PrimeSieve small({1000, 64});
    CHECK_THROWS_AS(small.primes(0, 1001), CapacityError);
    CHECK(small.primes(990, 1000) == std::vector<std::int64_t>{991, 997});
    CHECK_THROWS_AS(sieve_primes(0, 2e9), CapacityError);
}

TEST_CASE("segmented sieve matches trial division below 1e5") {
    // small segments so that many segment boundaries are crossed
    PrimeSieve sieve({1'000'000, 1000});
    std::vector<std::int64_t> expected;
    for (std::int64_t n = 2; n <= 100000; ++n)
        if (oracle::is_prime(n)) expected.push_back(n);
    CHECK(sieve.primes(0, 100000) == expected);
    CHECK(sieve.primes_serial(0, 100000) == expected);
}

TEST_CASE("parallel and serial sieves agree near the ceiling") {
    const auto& s = default_sieve();
    const double lo = 1e9 - 3e6, hi = 1e9;
    const auto par = s.primes(lo, hi);
    CHECK(par == s.primes_serial(lo, hi));
    CHECK(par.back() == 999999937);
    for (std::size_t i = 0; i < par.size(); i += 9973) CHECK(is_prime(par[i]));
}

TEST_CASE("prime_power_events examples") {
    const auto ev = prime_power_events(1, 10);
    std::vector<std::int64_t> pos, base;
    for (const auto& e : ev) {
        pos.push_back(e.position);
        base.push_back(e.base);
    }
    CHECK(pos == std::vector<std::int64_t>{2, 3, 4, 5, 7, 8, 9});
    CHECK(base == std::vector<std::int64_t>{2, 3, 2, 5, 7, 2, 3});
    for (const auto& e : ev) {
        CHECK(e.weight == doctest::Approx(std::log(double(e.base))).epsilon(1e-15));
        CHECK(e.weight * e.exponent == doctest::Approx(std::log(double(e.position))).epsilon(1e-14));
    }

    std::vector<std::int64_t> even;
    for (const auto& e : prime_power_events(1, 10, {2, 0})) even.push_back(e.position);
    CHECK(even == std::vector<std::int64_t>{2, 4, 8});

    const auto ev41 = prime_power_events(1, 100, {4, 1});
    for (const auto& e : ev41) CHECK(e.position % 4 == 1);
    std::vector<std::int64_t> expected41;
    for (std::int64_t n = 2; n <= 100; ++n)
        if (n % 4 == 1 && oracle::prime_power(n)) expected41.push_back(n);
    std::vector<std::int64_t> got41;
    for (const auto& e : ev41) got41.push_back(e.position);
    CHECK(got41 == expected41);
    CHECK(got41.front() == 5);
    CHECK(got41.back() == 97);
}

TEST_CASE("psi_ap and pi_ap examples") {
    CHECK(psi_ap(10) == doctest::Approx(3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0)));
    CHECK(psi_ap(10) == doctest::Approx(7.8319).epsilon(1e-4));
    CHECK(psi_ap(1.5) == 0.0);
    CHECK(psi_ap(1.5, {4, 3}) == 0.0);
    CHECK(psi_ap(10, {2, 0}) == doctest::Approx(3 * std::log(2.0)));
    CHECK(pi_ap(100, {4, 1}) == 11);
    CHECK(pi_ap(100, {4, 3}) == 13);
    CHECK(pi_ap(1) == 0);
    CHECK_THROWS_AS(pi_ap(10, {0, 0}), DomainError);
    CHECK_THROWS_AS(pi_ap(10, {4, 4}), DomainError);
}

TEST_CASE("counters are right-continuous at events") {
    CHECK(pi_ap(7) == 4);
    CHECK(pi_ap(6.999) == 3);
    CHECK(psi_ap(8) - psi_ap(7.5) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("partition over residues reproduces psi exactly") {
    std::mt19937_64 rng(11);
    const auto full = prime_power_events(1, 1e6);
    for (int trial = 0; trial < 6; ++trial) {
        const auto q = std::uniform_int_distribution<std::int64_t>(1, 60)(rng);
        const double x = std::uniform_real_distribution<double>(2, 1e6)(rng);
        // same events, partitioned: the multiset of positions must match
        std::vector<std::int64_t> merged;
        for (std::int64_t a = 0; a < q; ++a)
            for (const auto& e : prime_power_events(1, x, {q, a})) merged.push_back(e.position);
        std::sort(merged.begin(), merged.end());
        std::vector<std::int64_t> direct;
        for (const auto& e : full)
            if (double(e.position) <= x) direct.push_back(e.position);
        CHECK(merged == direct);
        double sum = 0.0;
        for (std::int64_t a = 0; a < q; ++a) sum += psi_ap(x, {q, a});
        CHECK(sum == doctest::Approx(psi_ap(x)).epsilon(1e-12));
    }
}

TEST_CASE("Chebyshev envelope and the mod-4 identity") {
    const auto counter = progression_counter(default_sieve(), {1, 0}, 0, 1e6);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const double x = std::uniform_real_distribution<double>(100, 1e6)(rng);
        const double L = std::log(x);
        CHECK(std::fabs(counter.psi(x) - x) <= 2 * std::sqrt(x) * L * L);
    }
    for (const double x : {2.0, 3.0, 100.0, 12345.6, 1e5}) {
        CHECK(pi_ap(x, {4, 1}) + pi_ap(x, {4, 3}) + 1 == pi_ap(x));
    }
}

TEST_CASE("is_prime agrees with trial division") {
    for (std::int64_t n = -5; n < 20000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
    CHECK(is_prime(2147483647));
    CHECK_FALSE(is_prime(3215031751LL));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(is_prime(1000000007));
}

TEST_CASE("EventCounter bookkeeping") {
    EventCounter c("toy", 0, 20, 0.5, {{10, 1.0, true}, {3, 2.0, true}, {16, 0.5, false}});
    CHECK(c.positions()[0] == 3);
    CHECK(c.psi(9.99) == 2.0);
    CHECK(c.psi(10) == 3.0);
    CHECK(c.psi_between(3, 16) == 1.5);
    CHECK(c.pi_between(0, 20) == 2);
    CHECK(c.delta(2, 8) == doctest::Approx(3.0 - 4.0));
    CHECK(c.near_event(10.0000001, 1e-6));
    CHECK_FALSE(c.near_event(11.0, 1e-6));
    CHECK_THROWS_AS(c.require(-1, 5), DomainError);
    CHECK_THROWS_AS(EventCounter("bad", 0, 5, 1, {{7, 1.0, true}}), DomainError);
}
