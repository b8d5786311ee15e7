// number_field.hpp
//
// Number fields given by a monic irreducible integer polynomial f with root
// theta. For primes p not dividing the index [O_K : Z[theta]], Dedekind's
// theorem reads the prime ideals above p off the factorization of f mod p:
// an irreducible factor of degree d and multiplicity e is a prime ideal of
// norm p^d with ramification index e.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace primewin {

// Integer polynomial, constant term first, leading coefficient included.
using IntPoly = std::vector<std::int64_t>;

struct FactorDegree {
    int degree;
    int multiplicity;
    auto operator<=>(const FactorDegree&) const = default;
};

struct PrimeIdealType {
    int residue_degree;   // f_i: the ideal has norm p^f_i
    int ramification;     // e_i
    auto operator<=>(const PrimeIdealType&) const = default;
};

struct SplittingType {
    std::int64_t prime;
    std::vector<PrimeIdealType> factors;  // sorted ascending

    int degree_sum() const;  // sum of e_i * f_i
    // Number of prime ideals above p with residue degree k.
    int ideals_of_degree(int k) const;
};

// disc(f) = (-1)^{n(n-1)/2} Res(f, f') for monic f, computed exactly by
// fraction-free elimination on the Sylvester matrix. CapacityError when an
// intermediate leaves the 128-bit range or the result leaves int64.
std::int64_t poly_discriminant(std::span<const std::int64_t> coefficients);

// Irreducible factorization pattern of f mod p, one entry per irreducible
// factor, sorted ascending.
std::vector<FactorDegree> factor_degrees_mod_p(std::span<const std::int64_t> coefficients,
                                               std::int64_t p);

// True iff p does not divide [O_K : Z[theta]] (Dedekind's criterion).
bool dedekind_index_test(std::span<const std::int64_t> coefficients, std::int64_t p);

class NumberField {
public:
    // Validates f (monic, irreducible over Q) and the field discriminant.
    // Without field_disc, |disc(f)| is used after every prime p with
    // p^2 | disc(f) passes the index test; otherwise DataError.
    static NumberField from_polynomial(std::string name, IntPoly coefficients,
                                       std::optional<std::int64_t> field_disc = std::nullopt);

    const std::string& name() const { return name_; }
    const IntPoly& coefficients() const { return coefficients_; }
    int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
    std::int64_t poly_disc() const { return poly_disc_; }
    std::int64_t field_disc() const { return field_disc_; }
    // Every prime p <= validated_up_to has been checked (p^2 | disc(f) primes
    // by the index test); primes beyond it do not divide disc(f).
    std::int64_t validated_up_to() const { return validated_up_to_; }
    // Primes dividing the index; splitting queries at them throw.
    const std::vector<std::int64_t>& index_primes() const { return index_primes_; }
    bool irreducibility_proven() const { return irreducibility_proven_; }
    // Signed fundamental discriminant for quadratic fields, 0 otherwise.
    std::int64_t quadratic_discriminant() const;

    bool supports(std::int64_t p) const;

private:
    NumberField() = default;

    std::string name_;
    IntPoly coefficients_;
    std::int64_t poly_disc_ = 1;
    std::int64_t field_disc_ = 1;
    std::int64_t validated_up_to_ = 1;
    std::vector<std::int64_t> index_primes_;
    bool irreducibility_proven_ = true;
};

// Throws UnsupportedPrime when p divides the index.
SplittingType splitting_type(const NumberField& field, std::int64_t p);

struct IdealEvent {
    std::int64_t position;  // N(P^m) = p^{f m}
    std::int64_t prime;     // p
    int residue_degree;     // f
    int exponent;           // m
    double weight;          // log N(P) = f log p
};

// One event per prime-ideal power P^m with norm in (lo, hi], ascending by
// position; distinct ideals of equal norm give separate events.
std::vector<IdealEvent> prime_ideal_events(const NumberField& field, double lo, double hi);
// Serial reference path (no OpenMP) for the same enumeration.
std::vector<IdealEvent> prime_ideal_events_serial(const NumberField& field, double lo, double hi);

std::int64_t pi_K(const NumberField& field, double x);
double psi_K(const NumberField& field, double x);

// Kronecker symbol (d / n) for n >= 1.
int kronecker_symbol(std::int64_t d, std::int64_t n);
bool is_fundamental_discriminant(std::int64_t d);
// Splitting of p in the quadratic field of fundamental discriminant d, read
// from (d/p) alone: 1 -> two ideals of norm p, -1 -> one of norm p^2,
// 0 -> one ramified ideal of norm p.
SplittingType quadratic_splitting_oracle(std::int64_t d, std::int64_t p);

// Preset file, one field per line: `name; n_K; d_K; c_0 c_1 ... c_{n-1}`
// (monic, leading coefficient omitted). '#' starts a comment line.
std::vector<NumberField> load_field_presets(std::istream& in);
std::vector<NumberField> load_field_presets(const std::string& path);
const NumberField& find_field(const std::vector<NumberField>& fields, const std::string& name);

}  // namespace primewin
