#include "primewin/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "primewin/errors.hpp"
#include "primewin/summation.hpp"

namespace primewin {

namespace {

std::int64_t isqrt(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Integers n with lo < n <= hi, as [first, last]; empty when first > last.
std::pair<std::int64_t, std::int64_t> integer_span(double lo, double hi) {
    const auto first = static_cast<std::int64_t>(std::floor(std::max(lo, 0.0))) + 1;
    const auto last = static_cast<std::int64_t>(std::floor(hi));
    return {first, last};
}

}  // namespace

void ResidueClass::validate() const {
    if (modulus < 1) throw DomainError("modulus must be >= 1");
    if (residue < 0 || residue >= modulus)
        throw DomainError("residue must lie in [0, modulus)");
}

bool ResidueClass::coprime() const { return std::gcd(modulus, residue) == 1; }

PrimeSieve::PrimeSieve(SieveConfig config) : config_(config) {
    if (config_.ceiling < 2) throw DomainError("sieve ceiling must be >= 2");
    if (config_.segment_size < 64) throw DomainError("segment size must be >= 64");
    const std::int64_t limit = isqrt(config_.ceiling) + 1;
    std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        base_primes_.push_back(i);
        for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
}

void PrimeSieve::check_range(double lo, double hi) const {
    if (std::isnan(lo) || std::isnan(hi)) throw DomainError("NaN interval bound");
    if (hi > static_cast<double>(config_.ceiling))
        throw CapacityError("interval end exceeds sieve ceiling " +
                            std::to_string(config_.ceiling));
}

// Sieves the odd integers of [seg_lo, seg_hi) and appends the primes found.
// 2 is handled by the caller.
void PrimeSieve::sieve_segment(std::int64_t seg_lo, std::int64_t seg_hi,
                               std::vector<std::int64_t>& out) const {
    if (seg_lo % 2 == 0) ++seg_lo;
    if (seg_lo >= seg_hi) return;
    const std::int64_t slots = (seg_hi - seg_lo + 1) / 2;
    std::vector<char> composite(static_cast<std::size_t>(slots), 0);
    for (const std::int64_t p : base_primes_) {
        if (p == 2) continue;
        if (p * p >= seg_hi) break;
        std::int64_t start = std::max(p * p, (seg_lo + p - 1) / p * p);
        if (start % 2 == 0) start += p;
        for (std::int64_t m = start; m < seg_hi; m += 2 * p)
            composite[static_cast<std::size_t>((m - seg_lo) / 2)] = 1;
    }
    for (std::int64_t i = 0; i < slots; ++i) {
        const std::int64_t n = seg_lo + 2 * i;
        if (!composite[static_cast<std::size_t>(i)] && n > 1) out.push_back(n);
    }
}

std::vector<std::int64_t> PrimeSieve::primes(double lo, double hi) const {
    check_range(lo, hi);
    const auto [first, last] = integer_span(lo, hi);
    std::vector<std::int64_t> result;
    if (first > last) return result;
    if (first <= 2 && last >= 2) result.push_back(2);

    const std::int64_t seg = config_.segment_size;
    const std::int64_t count = (last - first + seg) / seg;
    std::vector<std::vector<std::int64_t>> chunks(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < count; ++s) {
        const std::int64_t a = first + s * seg;
        const std::int64_t b = std::min(a + seg, last + 1);
        sieve_segment(a, b, chunks[static_cast<std::size_t>(s)]);
    }
    std::size_t total = result.size();
    for (const auto& c : chunks) total += c.size();
    result.reserve(total);
    for (const auto& c : chunks) result.insert(result.end(), c.begin(), c.end());
    return result;
}

std::vector<std::int64_t> PrimeSieve::primes_serial(double lo, double hi) const {
    check_range(lo, hi);
    const auto [first, last] = integer_span(lo, hi);
    std::vector<std::int64_t> result;
    if (first > last) return result;
    if (first <= 2 && last >= 2) result.push_back(2);
    for (std::int64_t a = first; a <= last; a += config_.segment_size)
        sieve_segment(a, std::min(a + config_.segment_size, last + 1), result);
    return result;
}

std::vector<PrimePowerEvent> PrimeSieve::prime_power_events(double lo, double hi,
                                                            ResidueClass cls) const {
    cls.validate();
    if (lo < 1.0) lo = 1.0;
    std::vector<PrimePowerEvent> events;
    if (hi <= lo) return events;
    check_range(lo, hi);
    for (const std::int64_t p : primes(lo, hi))
        if (cls.contains(p)) events.push_back({p, p, 1, std::log(static_cast<double>(p))});

    // Higher powers need p <= sqrt(hi), always inside the base-prime cache.
    const auto [first, last] = integer_span(lo, hi);
    const std::size_t n_primes = events.size();
    for (const std::int64_t p : base_primes_) {
        if (p * p > last) break;
        std::int64_t n = p * p;
        for (int m = 2; n <= last; ++m) {
            if (n >= first && cls.contains(n))
                events.push_back({n, p, m, std::log(static_cast<double>(p))});
            if (n > last / p) break;
            n *= p;
        }
    }
    if (events.size() != n_primes)
        std::sort(events.begin(), events.end(),
                  [](const PrimePowerEvent& a, const PrimePowerEvent& b) {
                      return a.position < b.position;
                  });
    return events;
}

double PrimeSieve::psi(double x, ResidueClass cls) const {
    CompensatedSum sum;
    for (const auto& e : prime_power_events(1.0, x, cls)) sum += e.weight;
    return sum.value();
}

std::int64_t PrimeSieve::pi(double x, ResidueClass cls) const {
    cls.validate();
    if (x < 2.0) return 0;
    const auto ps = primes(1.0, x);
    return std::count_if(ps.begin(), ps.end(), [&](std::int64_t p) { return cls.contains(p); });
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (const std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    using u128 = unsigned __int128;
    const auto un = static_cast<std::uint64_t>(n);
    auto mulmod = [un](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<u128>(a) * b % un);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        a %= un;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = un - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (const std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == un - 1) continue;
        bool witness = true;
        for (int i = 1; i < s && witness; ++i) {
            x = mulmod(x, x);
            if (x == un - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

namespace {

std::unique_ptr<PrimeSieve>& sieve_slot() {
    static std::unique_ptr<PrimeSieve> slot = std::make_unique<PrimeSieve>();
    return slot;
}

}  // namespace

const PrimeSieve& default_sieve() { return *sieve_slot(); }

void configure_default_sieve(SieveConfig config) {
    sieve_slot() = std::make_unique<PrimeSieve>(config);
}

std::vector<std::int64_t> sieve_primes(double lo, double hi) {
    return default_sieve().primes(lo, hi);
}

std::vector<PrimePowerEvent> prime_power_events(double lo, double hi, ResidueClass cls) {
    return default_sieve().prime_power_events(lo, hi, cls);
}

double psi_ap(double x, ResidueClass cls) { return default_sieve().psi(x, cls); }

std::int64_t pi_ap(double x, ResidueClass cls) { return default_sieve().pi(x, cls); }

}  // namespace primewin
