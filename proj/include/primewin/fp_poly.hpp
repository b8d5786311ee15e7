// fp_poly.hpp
//
// Dense univariate polynomials over the prime field F_p, coefficients stored
// constant term first and kept normalized (no trailing zeros; the zero
// polynomial is the empty vector). p must be prime and below 2^32 so that
// products of two reduced coefficients fit in 64 bits.

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace primewin::fp {

using Poly = std::vector<std::uint64_t>;

class Field {
public:
    explicit Field(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t reduce(std::int64_t v) const;

private:
    std::uint64_t p_;
};

int degree(const Poly& f);  // -1 for the zero polynomial
void trim(Poly& f);

Poly reduce(std::span<const std::int64_t> coefficients, const Field& F);
Poly add(const Poly& a, const Poly& b, const Field& F);
Poly sub(const Poly& a, const Poly& b, const Field& F);
Poly mul(const Poly& a, const Poly& b, const Field& F);
// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Field& F);
Poly rem(const Poly& a, const Poly& b, const Field& F);
Poly quo(const Poly& a, const Poly& b, const Field& F);
Poly monic(const Poly& f, const Field& F);
// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b, const Field& F);
Poly derivative(const Poly& f, const Field& F);
// x^e mod f, deg f >= 1.
Poly pow_x_mod(std::uint64_t e, const Poly& f, const Field& F);
Poly pow_mod(Poly base, std::uint64_t e, const Poly& f, const Field& F);

// Squarefree decomposition of a monic polynomial: pairs (s_i, i) with
// f = prod s_i^i and each s_i squarefree, monic and nonconstant.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f, const Field& F);

// Distinct-degree factorization of a squarefree monic polynomial: pairs
// (d, k) meaning the factor splits into k irreducibles of degree d.
std::vector<std::pair<int, int>> distinct_degree(const Poly& f, const Field& F);

}  // namespace primewin::fp
