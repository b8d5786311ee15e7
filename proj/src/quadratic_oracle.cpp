// Kronecker-symbol splitting for quadratic fields. Shares nothing with the
// polynomial factorization path so it can serve as its oracle.

#include <cstdint>

#include "primewin/errors.hpp"
#include "primewin/number_field.hpp"
#include "primewin/sieve.hpp"

namespace primewin {

namespace {

bool squarefree(std::int64_t n) {
    if (n < 0) n = -n;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Jacobi symbol (a / n) for odd n >= 1.
int jacobi(std::int64_t a, std::int64_t n) {
    a = mod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

}  // namespace

int kronecker_symbol(std::int64_t d, std::int64_t n) {
    if (n < 1) throw DomainError("Kronecker symbol needs n >= 1");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (d % 2 == 0) return 0;
        const std::int64_t r = mod(d, 8);
        if (r == 3 || r == 5) result = -result;
    }
    if (n == 1) return result;
    return result * jacobi(d, n);
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    if (mod(d, 4) == 1) return squarefree(d);
    if (mod(d, 4) == 0) {
        const std::int64_t m = d / 4;
        const std::int64_t r = mod(m, 4);
        return (r == 2 || r == 3) && squarefree(m);
    }
    return false;
}

SplittingType quadratic_splitting_oracle(std::int64_t d, std::int64_t p) {
    if (!is_fundamental_discriminant(d))
        throw DomainError(std::to_string(d) + " is not a fundamental discriminant");
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    switch (kronecker_symbol(d, p)) {
        case 1: return {p, {{1, 1}, {1, 1}}};
        case -1: return {p, {{2, 1}}};
        default: return {p, {{1, 2}}};
    }
}

}  // namespace primewin
