#include "primewin/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "primewin/errors.hpp"
#include "primewin/fp_poly.hpp"
#include "primewin/sieve.hpp"
#include "primewin/summation.hpp"

namespace primewin {

namespace {

using i128 = __int128;

constexpr std::int64_t kMaxCoefficient = 1'000'000'000;
constexpr int kMaxDegree = 12;
constexpr std::int64_t kMaxFactoredDisc = 100'000'000'000'000;  // 1e14

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("discriminant overflows 128 bits");
    return r;
}

i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw CapacityError("discriminant overflows 128 bits");
    return r;
}

// Bareiss fraction-free determinant.
i128 determinant(std::vector<std::vector<i128>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    i128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                const i128 num = checked_sub(checked_mul(m[i][j], m[k][k]),
                                             checked_mul(m[i][k], m[k][j]));
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

void require_monic(std::span<const std::int64_t> f) {
    if (f.size() < 2) throw DomainError("polynomial must have degree >= 1");
    if (f.back() != 1) throw DomainError("polynomial must be monic");
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    n = std::abs(n);
    if (n > kMaxFactoredDisc) throw CapacityError("discriminant too large to factor");
    for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::int64_t isqrt_exact(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? r : -1;
}

// Evaluate a monic integer polynomial at an integer, saturating into i128.
bool has_integer_root(std::span<const std::int64_t> f, std::int64_t r) {
    i128 acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = acc * r + f[i];
        if (acc > (i128{1} << 100) || acc < -(i128{1} << 100)) return false;
    }
    return acc == 0;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    n = std::abs(n);
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        if (d != n / d) out.push_back(n / d);
    }
    return out;
}

bool has_rational_root(std::span<const std::int64_t> f) {
    if (f[0] == 0) return true;
    for (const std::int64_t d : divisors(f[0]))
        if (has_integer_root(f, d) || has_integer_root(f, -d)) return true;
    return false;
}

// Monic quartic x^4 + a3 x^3 + a2 x^2 + a1 x + a0 = (x^2 + b x + c)(x^2 + d x + e)
// over Z (equivalently over Q, by Gauss's lemma).
bool has_quadratic_factor(std::span<const std::int64_t> f) {
    const i128 a0 = f[0], a1 = f[1], a2 = f[2], a3 = f[3];
    for (const std::int64_t dv : divisors(f[0])) {
        for (const i128 c : {i128{dv}, -i128{dv}}) {
            const i128 e = a0 / c;
            if (e != c) {
                const i128 num = a1 - c * a3;
                if (num % (e - c)) continue;
                const i128 b = num / (e - c);
                const i128 d = a3 - b;
                if (a2 == e + c + b * d) return true;
            } else {
                if (a1 != c * a3) continue;
                // b^2 - a3 b + (a2 - 2c) = 0
                const i128 disc = a3 * a3 - 4 * (a2 - 2 * c);
                if (disc < 0) continue;
                const auto s = isqrt_exact(static_cast<std::int64_t>(disc));
                if (s >= 0 && (a3 + s) % 2 == 0) return true;
            }
        }
    }
    return false;
}

// Degree-pattern test: a factor of degree d over Q forces, for every good
// prime, a subset of the mod-p factor degrees summing to d. Returns true when
// every proper d is excluded (a proof of irreducibility).
bool degree_patterns_exclude_factors(std::span<const std::int64_t> f, std::int64_t disc) {
    const int n = static_cast<int>(f.size()) - 1;
    std::vector<bool> possible(static_cast<std::size_t>(n) + 1, true);
    int checked = 0;
    for (std::int64_t p = 2; p < 5000 && checked < 400; ++p) {
        if (!is_prime(p) || disc % p == 0) continue;
        ++checked;
        std::vector<bool> sums(static_cast<std::size_t>(n) + 1, false);
        sums[0] = true;
        for (const auto& fd : factor_degrees_mod_p(f, p))
            for (int s = n; s >= fd.degree; --s)
                if (sums[s - fd.degree]) sums[s] = true;
        bool any = false;
        for (int d = 1; d < n; ++d) {
            possible[d] = possible[d] && sums[d];
            any = any || possible[d];
        }
        if (!any) return true;
    }
    return false;
}

fp::Poly lift_product(const std::vector<std::pair<fp::Poly, int>>& parts, const fp::Field& F) {
    fp::Poly g{1};
    for (const auto& [s, m] : parts) g = fp::mul(g, s, F);
    return g;
}

}  // namespace

std::int64_t poly_discriminant(std::span<const std::int64_t> f) {
    require_monic(f);
    const int n = static_cast<int>(f.size()) - 1;
    if (n == 1) return 1;
    std::vector<i128> df(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) df[i - 1] = checked_mul(i, f[i]);
    // Sylvester matrix of f (degree n) and f' (degree n-1), size 2n-1,
    // coefficients written highest degree first.
    const int size = 2 * n - 1;
    std::vector<std::vector<i128>> m(size, std::vector<i128>(size, 0));
    for (int r = 0; r < n - 1; ++r)
        for (int k = 0; k <= n; ++k) m[r][r + k] = f[n - k];
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= n - 1; ++k) m[n - 1 + r][r + k] = df[n - 1 - k];
    i128 res = determinant(std::move(m));
    if ((n * (n - 1) / 2) % 2) res = -res;
    if (res > std::numeric_limits<std::int64_t>::max() ||
        res < std::numeric_limits<std::int64_t>::min())
        throw CapacityError("discriminant exceeds 64-bit range");
    return static_cast<std::int64_t>(res);
}

std::vector<FactorDegree> factor_degrees_mod_p(std::span<const std::int64_t> coefficients,
                                               std::int64_t p) {
    require_monic(coefficients);
    if (!is_prime(p)) throw DomainError("p must be prime");
    const fp::Field F(static_cast<std::uint64_t>(p));
    const fp::Poly f = fp::reduce(coefficients, F);
    std::vector<FactorDegree> out;
    for (const auto& [part, mult] : fp::squarefree_decomposition(f, F))
        for (const auto& [d, k] : fp::distinct_degree(part, F))
            for (int i = 0; i < k; ++i) out.push_back({d, mult});
    std::sort(out.begin(), out.end());
    return out;
}

bool dedekind_index_test(std::span<const std::int64_t> coefficients, std::int64_t p) {
    require_monic(coefficients);
    if (p < 2) throw DomainError("p must be prime");
    const fp::Field F(static_cast<std::uint64_t>(p));
    const fp::Poly fbar = fp::reduce(coefficients, F);
    const auto parts = fp::squarefree_decomposition(fbar, F);
    const fp::Poly g = lift_product(parts, F);  // radical of f mod p
    const fp::Poly h = fp::quo(fbar, g, F);

    // (f - g h) / p over Z, with g and h lifted to coefficients in [0, p).
    const std::size_t n = coefficients.size();
    std::vector<i128> gh(n + 1, 0);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j)
            gh[i + j] += static_cast<i128>(g[i]) * static_cast<i128>(h[j]);
    fp::Poly fq(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const i128 diff = static_cast<i128>(coefficients[i]) - gh[i];
        if (diff % p != 0) throw Error("Dedekind test: f - g h not divisible by p");
        i128 r = (diff / p) % p;
        if (r < 0) r += p;
        fq[i] = static_cast<std::uint64_t>(r);
    }
    fp::trim(fq);
    const fp::Poly common = fp::gcd(fp::gcd(g, h, F), fq, F);
    return fp::degree(common) == 0;
}

int SplittingType::degree_sum() const {
    int s = 0;
    for (const auto& t : factors) s += t.residue_degree * t.ramification;
    return s;
}

int SplittingType::ideals_of_degree(int k) const {
    return static_cast<int>(std::count_if(factors.begin(), factors.end(),
                                          [k](const PrimeIdealType& t) { return t.residue_degree == k; }));
}

NumberField NumberField::from_polynomial(std::string name, IntPoly coefficients,
                                         std::optional<std::int64_t> field_disc) {
    require_monic(coefficients);
    const int n = static_cast<int>(coefficients.size()) - 1;
    if (n > kMaxDegree) throw CapacityError("degree above " + std::to_string(kMaxDegree));
    for (const auto c : coefficients)
        if (std::abs(c) > kMaxCoefficient) throw CapacityError("coefficient too large");

    NumberField K;
    K.name_ = std::move(name);
    K.coefficients_ = std::move(coefficients);
    K.poly_disc_ = poly_discriminant(K.coefficients_);
    if (K.poly_disc_ == 0) throw DataError(K.name_ + ": polynomial is not squarefree");

    const auto& f = K.coefficients_;
    if (n >= 2 && has_rational_root(f)) throw DataError(K.name_ + ": polynomial has a rational root");
    if (n == 4 && has_quadratic_factor(f)) throw DataError(K.name_ + ": polynomial has a quadratic factor");
    if (n >= 5 && !degree_patterns_exclude_factors(f, K.poly_disc_))
        throw DataError(K.name_ + ": irreducibility could not be established");

    const std::int64_t abs_disc = std::abs(K.poly_disc_);
    const auto primes = prime_factors(abs_disc);
    K.validated_up_to_ = primes.empty() ? 1 : primes.back();

    std::int64_t index = 1;
    if (field_disc) {
        const std::int64_t d = *field_disc;
        if (d <= 0) throw DataError(K.name_ + ": field discriminant must be positive");
        if (abs_disc % d) throw DataError(K.name_ + ": d_K does not divide disc(f)");
        index = isqrt_exact(abs_disc / d);
        if (index < 0) throw DataError(K.name_ + ": disc(f)/d_K is not a perfect square");
        K.field_disc_ = d;
    } else {
        K.field_disc_ = abs_disc;
    }

    for (const std::int64_t p : primes) {
        if ((abs_disc / p) % p) continue;  // p || disc: p cannot divide the index
        const bool coprime = dedekind_index_test(f, p);
        if (!field_disc && !coprime)
            throw DataError(K.name_ + ": prime " + std::to_string(p) +
                            " divides the index; supply d_K explicitly");
        if (coprime != (index % p != 0))
            throw DataError(K.name_ + ": d_K inconsistent with the index test at " +
                            std::to_string(p));
        if (!coprime) K.index_primes_.push_back(p);
    }
    return K;
}

std::int64_t NumberField::quadratic_discriminant() const {
    if (degree() != 2) return 0;
    return poly_disc_ < 0 ? -field_disc_ : field_disc_;
}

bool NumberField::supports(std::int64_t p) const {
    return !std::binary_search(index_primes_.begin(), index_primes_.end(), p);
}

namespace {

SplittingType splitting_unchecked(const NumberField& field, std::int64_t p) {
    SplittingType t{p, {}};
    for (const auto& fd : factor_degrees_mod_p(field.coefficients(), p))
        t.factors.push_back({fd.degree, fd.multiplicity});
    return t;
}

// Number of distinct linear factors of f mod p: deg gcd(f, x^p - x).
int linear_factor_count(const NumberField& field, std::int64_t p) {
    const fp::Field F(static_cast<std::uint64_t>(p));
    const fp::Poly f = fp::reduce(field.coefficients(), F);
    if (fp::degree(f) == 1) return 1;
    const fp::Poly xp = fp::pow_x_mod(static_cast<std::uint64_t>(p), f, F);
    return fp::degree(fp::gcd(f, fp::sub(xp, fp::Poly{0, 1}, F), F));
}

std::vector<IdealEvent> enumerate_ideals(const NumberField& field, double lo, double hi,
                                         bool parallel) {
    std::vector<IdealEvent> events;
    if (lo < 1.0) lo = 1.0;
    if (hi <= lo) return events;
    const PrimeSieve& sieve = default_sieve();
    const auto first = static_cast<std::int64_t>(std::floor(lo)) + 1;
    const auto last = static_cast<std::int64_t>(std::floor(hi));

    // p <= lo contributes only through a power p^k in (lo, hi], k >= 2.
    std::vector<std::int64_t> candidates;
    for (const std::int64_t p : sieve.base_primes()) {
        if (p >= first || p * p > last) break;
        std::int64_t n = p;
        while (n < first && n <= last / p) n *= p;
        if (n >= first && n <= last) candidates.push_back(p);
    }
    const auto large = parallel ? sieve.primes(lo, hi) : sieve.primes_serial(lo, hi);
    candidates.insert(candidates.end(), large.begin(), large.end());

    for (const std::int64_t p : candidates)
        if (!field.supports(p)) throw UnsupportedPrime(p);

    const auto count = static_cast<std::int64_t>(candidates.size());
    std::vector<SplittingType> types(candidates.size());
#pragma omp parallel for schedule(dynamic, 256) if (parallel)
    for (std::int64_t i = 0; i < count; ++i) {
        const std::int64_t p = candidates[static_cast<std::size_t>(i)];
        if (p > last / p) {
            // Only norm-p ideals fit below hi.
            const int k = linear_factor_count(field, p);
            types[static_cast<std::size_t>(i)] = {p, std::vector<PrimeIdealType>(k, {1, 1})};
        } else {
            types[static_cast<std::size_t>(i)] = splitting_unchecked(field, p);
        }
    }

    for (const auto& t : types) {
        const double logp = std::log(static_cast<double>(t.prime));
        for (const auto& ideal : t.factors) {
            std::int64_t norm = 1;
            bool fits = true;
            for (int k = 0; k < ideal.residue_degree && fits; ++k) {
                if (norm > last / t.prime) fits = false;
                else norm *= t.prime;
            }
            if (!fits) continue;
            std::int64_t pos = norm;
            for (int m = 1;; ++m) {
                if (pos >= first)
                    events.push_back({pos, t.prime, ideal.residue_degree, m,
                                      ideal.residue_degree * logp});
                if (pos > last / norm) break;
                pos *= norm;
            }
        }
    }
    std::stable_sort(events.begin(), events.end(), [](const IdealEvent& a, const IdealEvent& b) {
        return a.position < b.position;
    });
    return events;
}

}  // namespace

SplittingType splitting_type(const NumberField& field, std::int64_t p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (!field.supports(p)) throw UnsupportedPrime(p);
    return splitting_unchecked(field, p);
}

std::vector<IdealEvent> prime_ideal_events(const NumberField& field, double lo, double hi) {
    return enumerate_ideals(field, lo, hi, true);
}

std::vector<IdealEvent> prime_ideal_events_serial(const NumberField& field, double lo, double hi) {
    return enumerate_ideals(field, lo, hi, false);
}

std::int64_t pi_K(const NumberField& field, double x) {
    const auto events = prime_ideal_events(field, 1.0, x);
    return std::count_if(events.begin(), events.end(),
                         [](const IdealEvent& e) { return e.exponent == 1; });
}

double psi_K(const NumberField& field, double x) {
    CompensatedSum sum;
    for (const auto& e : prime_ideal_events(field, 1.0, x)) sum += e.weight;
    return sum.value();
}

namespace {

std::string trim_copy(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<NumberField> load_field_presets(std::istream& in) {
    std::vector<NumberField> fields;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim_copy(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> cols;
        std::stringstream ss(t);
        std::string col;
        while (std::getline(ss, col, ';')) cols.push_back(trim_copy(col));
        if (cols.size() != 4) throw ParseError("expected `name; n_K; d_K; coefficients`", lineno);
        try {
            const int n = std::stoi(cols[1]);
            const std::int64_t d = std::stoll(cols[2]);
            IntPoly coeffs;
            std::stringstream cs(cols[3]);
            std::int64_t c;
            while (cs >> c) coeffs.push_back(c);
            if (!cs.eof()) throw ParseError("bad coefficient list", lineno);
            if (static_cast<int>(coeffs.size()) != n)
                throw ParseError("n_K does not match the number of coefficients", lineno);
            coeffs.push_back(1);
            fields.push_back(NumberField::from_polynomial(cols[0], std::move(coeffs), d));
        } catch (const std::invalid_argument&) {
            throw ParseError("malformed number", lineno);
        } catch (const std::out_of_range&) {
            throw ParseError("number out of range", lineno);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return fields;
}

std::vector<NumberField> load_field_presets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open field preset file " + path);
    return load_field_presets(in);
}

const NumberField& find_field(const std::vector<NumberField>& fields, const std::string& name) {
    for (const auto& K : fields)
        if (K.name() == name) return K;
    throw DomainError("unknown field preset '" + name + "'");
}

}  // namespace primewin
