// oracles.hpp - brute-force references shared by the test binaries. Nothing
// here calls into the library paths being checked.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// (p, k) with n = p^k, or nullopt.
inline std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t n) {
    if (n < 2) return std::nullopt;
    std::int64_t p = n;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    if (n != 1) return std::nullopt;
    return std::make_pair(p, k);
}

inline double von_mangoldt(std::int64_t n) {
    const auto pp = prime_power(n);
    return pp ? std::log(static_cast<double>(pp->first)) : 0.0;
}

// Lambda(n) for 0 <= n <= limit by trial division.
inline std::vector<double> lambda_table(std::int64_t limit) {
    std::vector<double> t(static_cast<std::size_t>(limit) + 1, 0.0);
    for (std::int64_t n = 2; n <= limit; ++n) t[static_cast<std::size_t>(n)] = von_mangoldt(n);
    return t;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a < 0 ? -a : a;
}

inline std::int64_t phi(std::int64_t q) {
    std::int64_t c = 0;
    for (std::int64_t a = 1; a <= q; ++a)
        if (gcd(a, q) == 1) ++c;
    return c;
}

}  // namespace oracle
