// sieve.hpp
//
// Segmented sieve of Eratosthenes over (lo, hi] and the prime-power event
// stream built on it. An event is one n = p^m carrying its von Mangoldt
// weight log p; psi(x; q, a) and pi(x; q, a) are partial sums over events.
//
// Intervals are half-open on the left everywhere: (lo, hi]. Counters are
// right-continuous, so psi(x) includes an event sitting exactly at x.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace primewin {

struct ResidueClass {
    std::int64_t modulus = 1;
    std::int64_t residue = 0;

    // Throws DomainError unless modulus >= 1 and 0 <= residue < modulus.
    void validate() const;
    bool contains(std::int64_t n) const { return n % modulus == residue; }
    bool coprime() const;
};

struct PrimePowerEvent {
    std::int64_t position;  // p^m
    std::int64_t base;      // p
    int exponent;           // m
    double weight;          // log p
};

struct SieveConfig {
    std::int64_t ceiling = 1'000'000'000;
    std::int64_t segment_size = std::int64_t{1} << 20;
};

// Owns the read-only base-prime cache (primes up to sqrt(ceiling)); safe to
// share between threads once constructed.
class PrimeSieve {
public:
    explicit PrimeSieve(SieveConfig config = {});

    const SieveConfig& config() const { return config_; }
    std::span<const std::int64_t> base_primes() const { return base_primes_; }

    // Primes in (lo, hi], ascending. Segments are sieved in parallel.
    std::vector<std::int64_t> primes(double lo, double hi) const;
    // Single-threaded reference path over the same segment kernel.
    std::vector<std::int64_t> primes_serial(double lo, double hi) const;

    std::vector<PrimePowerEvent> prime_power_events(double lo, double hi,
                                                    ResidueClass cls = {}) const;

    double psi(double x, ResidueClass cls = {}) const;
    std::int64_t pi(double x, ResidueClass cls = {}) const;

private:
    void check_range(double lo, double hi) const;
    void sieve_segment(std::int64_t seg_lo, std::int64_t seg_hi,
                       std::vector<std::int64_t>& out) const;

    SieveConfig config_;
    std::vector<std::int64_t> base_primes_;
};

// Deterministic Miller-Rabin, exact for every 64-bit n.
bool is_prime(std::int64_t n);

// Process-wide sieve used by the free functions below. Reconfiguring replaces
// the instance; do it before any concurrent use.
const PrimeSieve& default_sieve();
void configure_default_sieve(SieveConfig config);

std::vector<std::int64_t> sieve_primes(double lo, double hi);
std::vector<PrimePowerEvent> prime_power_events(double lo, double hi, ResidueClass cls = {});
double psi_ap(double x, ResidueClass cls = {});
std::int64_t pi_ap(double x, ResidueClass cls = {});

}  // namespace primewin
