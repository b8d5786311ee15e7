#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "primewin/errors.hpp"
#include "primewin/fp_poly.hpp"
#include "primewin/number_field.hpp"
#include "primewin/sieve.hpp"

using namespace primewin;

namespace {

// Naive F_p polynomials for the factorization oracle, constant term first.
using NPoly = std::vector<std::int64_t>;

void ntrim(NPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Divides f by the monic g in place if g | f.
bool try_divide(NPoly& f, const NPoly& g, std::int64_t p) {
    NPoly r = f;
    const std::size_t dg = g.size() - 1;
    if (r.size() < g.size()) return false;
    NPoly q(r.size() - dg, 0);
    for (std::size_t i = r.size(); i-- > dg;) {
        const std::int64_t c = r[i] % p;
        q[i - dg] = c;
        for (std::size_t j = 0; j <= dg; ++j) r[i - dg + j] = ((r[i - dg + j] - c * g[j]) % p + p) % p;
    }
    ntrim(r);
    if (!r.empty()) return false;
    f = q;
    return true;
}

// Trial division by every monic polynomial of increasing degree.
std::vector<FactorDegree> naive_factor_degrees(const IntPoly& coeffs, std::int64_t p) {
    NPoly f;
    for (auto c : coeffs) f.push_back(((c % p) + p) % p);
    ntrim(f);
    std::vector<FactorDegree> out;
    for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
        std::int64_t total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        for (std::int64_t idx = 0; idx < total; ++idx) {
            NPoly g(d + 1, 0);
            g[d] = 1;
            std::int64_t v = idx;
            for (int i = 0; i < d; ++i) {
                g[i] = v % p;
                v /= p;
            }
            int m = 0;
            while (try_divide(f, g, p)) ++m;
            if (m) out.push_back({d, m});
        }
    }
    if (f.size() > 1) out.push_back({static_cast<int>(f.size()) - 1, 1});
    std::sort(out.begin(), out.end());
    return out;
}

int naive_roots(const IntPoly& coeffs, std::int64_t p) {
    int roots = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        std::int64_t v = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) v = ((v * x + coeffs[i]) % p + p) % p;
        if (v == 0) ++roots;
    }
    return roots;
}

const std::vector<NumberField>& presets() {
    static const auto fields = load_field_presets(std::string(PRIMEWIN_DATA_DIR) + "/fields.txt");
    return fields;
}

}  // namespace

TEST_CASE("polynomial discriminants") {
    CHECK(poly_discriminant(IntPoly{1, 0, 1}) == -4);
    CHECK(poly_discriminant(IntPoly{-1, -1, 1}) == 5);
    CHECK(poly_discriminant(IntPoly{-3, 1}) == 1);
    CHECK(poly_discriminant(IntPoly{1, 1, 1}) == -3);
    CHECK(poly_discriminant(IntPoly{1, 1, 1, 1, 1}) == 125);
    CHECK(poly_discriminant(IntPoly{1, 0, 0, 0, 1}) == 256);
    CHECK(poly_discriminant(IntPoly{1, 1, 1, 1, 1, 1, 1}) == -16807);
    // x^3 + a x + b: -4a^3 - 27b^2
    CHECK(poly_discriminant(IntPoly{5, -7, 0, 1}) == -4 * -343 - 27 * 25);
}

TEST_CASE("factor_degrees_mod_p examples") {
    CHECK(factor_degrees_mod_p(IntPoly{1, 0, 1}, 3) == std::vector<FactorDegree>{{2, 1}});
    CHECK(factor_degrees_mod_p(IntPoly{1, 0, 1}, 5) == std::vector<FactorDegree>{{1, 1}, {1, 1}});
    CHECK(factor_degrees_mod_p(IntPoly{1, 0, 1}, 2) == std::vector<FactorDegree>{{1, 2}});
    CHECK(factor_degrees_mod_p(IntPoly{1, 1, 1, 1, 1}, 5) == std::vector<FactorDegree>{{1, 4}});
    CHECK(factor_degrees_mod_p(IntPoly{1, 1, 1, 1, 1}, 11) ==
          std::vector<FactorDegree>{{1, 1}, {1, 1}, {1, 1}, {1, 1}});
    CHECK_THROWS_AS(factor_degrees_mod_p(IntPoly{1, 0, 1}, 9), DomainError);
}

TEST_CASE("factor_degrees_mod_p agrees with naive trial division") {
    const std::vector<IntPoly> polys = {
        {1, 0, 1},          {-1, -1, 1},          {1, 1, 1, 1, 1},     {1, 0, 0, 0, 1},
        {1, 0, -1, 0, 1},   {1, 1, 1, 1, 1, 1, 1}, {5, -7, 0, 1},       {-2, 0, 0, 0, 0, 1},
        {6, 0, 0, -5, 0, 0, 1}, {4, 0, 0, 0, 1},  {1, -10, 0, 1, 0, 1}, {3, 3, 0, 0, 0, 0, 1},
    };
    for (const auto& f : polys)
        for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
            CAPTURE(p);
            CHECK(factor_degrees_mod_p(f, p) == naive_factor_degrees(f, p));
        }
}

TEST_CASE("fp polynomial arithmetic") {
    const fp::Field F(7);
    const fp::Poly a{3, 0, 1};   // x^2 + 3
    const fp::Poly b{1, 1};      // x + 1
    const auto [q, r] = fp::divmod(a, b, F);
    CHECK(fp::add(fp::mul(q, b, F), r, F) == a);
    CHECK(fp::degree(fp::Poly{}) == -1);
    CHECK(fp::gcd(fp::mul(a, b, F), fp::mul(b, b, F), F) == b);
    CHECK(F.mul(F.inv(3), 3) == 1);
    CHECK(fp::pow_x_mod(7, a, F) == fp::rem(fp::Poly{0, 0, 0, 0, 0, 0, 0, 1}, a, F));
    // (x+1)^7 (x^2+3) over F_7
    fp::Poly f = a;
    for (int i = 0; i < 7; ++i) f = fp::mul(f, b, F);
    const auto sq = fp::squarefree_decomposition(f, F);
    REQUIRE(sq.size() == 2);
    std::vector<std::pair<fp::Poly, int>> expect{{a, 1}, {b, 7}};
    CHECK(sq == expect);
}

TEST_CASE("Dedekind index criterion") {
    CHECK_FALSE(dedekind_index_test(IntPoly{-5, 0, 1}, 2));
    CHECK(dedekind_index_test(IntPoly{-1, -1, 1}, 5));
    CHECK(dedekind_index_test(IntPoly{1, 0, 1}, 2));
    CHECK(dedekind_index_test(IntPoly{1, 1, 1, 1, 1}, 5));
    CHECK_FALSE(dedekind_index_test(IntPoly{-12, 0, 1}, 2));
}

TEST_CASE("construction validates the polynomial") {
    CHECK_THROWS_AS(NumberField::from_polynomial("x^4+4", {4, 0, 0, 0, 1}), DataError);
    CHECK_THROWS_AS(NumberField::from_polynomial("x^6-5x^3+6", {6, 0, 0, -5, 0, 0, 1}), DataError);
    CHECK_THROWS_AS(NumberField::from_polynomial("x^2-1", {-1, 0, 1}), DataError);
    CHECK_THROWS_AS(NumberField::from_polynomial("nonmonic", {1, 0, 2}), DomainError);
    CHECK_THROWS_AS(NumberField::from_polynomial("(x^2+1)^2", {1, 0, 2, 0, 1}), DataError);
    // Z[theta] has index 8 here
    CHECK_THROWS_AS(NumberField::from_polynomial("Q(sqrt2,sqrt3)", {1, 0, -10, 0, 1}), DataError);
    const auto k = NumberField::from_polynomial("Q(sqrt2,sqrt3)", {1, 0, -10, 0, 1}, 2304);
    CHECK(k.degree() == 4);
    CHECK(k.irreducibility_proven());
    // x^2 - 5 has index 2 in the ring of integers of Q(sqrt5)
    CHECK_THROWS_AS(NumberField::from_polynomial("x^2-5", {-5, 0, 1}), DataError);
    const auto with_dk = NumberField::from_polynomial("x^2-5", {-5, 0, 1}, 5);
    CHECK(with_dk.field_disc() == 5);
    CHECK(with_dk.index_primes() == std::vector<std::int64_t>{2});
    CHECK_THROWS_AS(splitting_type(with_dk, 2), UnsupportedPrime);
    CHECK(splitting_type(with_dk, 11).factors == std::vector<PrimeIdealType>{{1, 1}, {1, 1}});
    CHECK_THROWS_AS(NumberField::from_polynomial("x^2-5", {-5, 0, 1}, 7), DataError);
}

TEST_CASE("presets load with their discriminants") {
    const auto& fs = presets();
    REQUIRE(fs.size() == 10);
    CHECK(find_field(fs, "Q(i)").field_disc() == 4);
    CHECK(find_field(fs, "Q(zeta7)").degree() == 6);
    CHECK(find_field(fs, "Q(zeta12)").field_disc() == 144);
    CHECK(find_field(fs, "Q(sqrt-3)").quadratic_discriminant() == -3);
    CHECK(find_field(fs, "Q(sqrt5)").quadratic_discriminant() == 5);
    CHECK(find_field(fs, "Q(sqrt2)").quadratic_discriminant() == 8);
    CHECK(find_field(fs, "Q(sqrt-2)").quadratic_discriminant() == -8);
    CHECK_THROWS_AS(find_field(fs, "Q(zeta9)"), DomainError);
}

TEST_CASE("preset parse errors carry the line number") {
    std::istringstream bad("# comment\nQ; 1; 1; 0\nQ(i); 2; 4; 1\n");
    try {
        load_field_presets(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::istringstream wrong_dk("Q(i); 2; 8; 1 0\n");
    CHECK_THROWS_AS(load_field_presets(wrong_dk), DataError);
    std::istringstream junk("Q(i); two; 4; 1 0\n");
    CHECK_THROWS_AS(load_field_presets(junk), ParseError);
}

TEST_CASE("splitting types of Q(i)") {
    const auto& k = find_field(presets(), "Q(i)");
    CHECK(splitting_type(k, 5).factors == std::vector<PrimeIdealType>{{1, 1}, {1, 1}});
    CHECK(splitting_type(k, 3).factors == std::vector<PrimeIdealType>{{2, 1}});
    CHECK(splitting_type(k, 2).factors == std::vector<PrimeIdealType>{{1, 2}});
    CHECK_THROWS_AS(splitting_type(k, 15), DomainError);
}

TEST_CASE("prime ideal events of Q(i)") {
    const auto& k = find_field(presets(), "Q(i)");
    const auto ev = prime_ideal_events(k, 1, 20);
    std::vector<std::int64_t> pos;
    std::vector<double> w;
    for (const auto& e : ev) {
        pos.push_back(e.position);
        w.push_back(e.weight);
    }
    CHECK(pos == std::vector<std::int64_t>{2, 4, 5, 5, 8, 9, 13, 13, 16, 17, 17});
    const std::vector<double> lw{2, 2, 5, 5, 2, 9, 13, 13, 2, 17, 17};
    REQUIRE(w.size() == lw.size());
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == doctest::Approx(std::log(lw[i])).epsilon(1e-14));
    CHECK(prime_ideal_events(k, 2.5, 3.5).empty());
    CHECK(pi_K(k, 20) == 8);
    CHECK(psi_K(k, 20) == doctest::Approx(4 * std::log(2.0) + 2 * std::log(5.0) + std::log(9.0) +
                                          2 * std::log(13.0) + 2 * std::log(17.0)));
    CHECK(psi_K(k, 20) == doctest::Approx(18.985).epsilon(1e-4));
    for (const auto& f : presets()) CHECK(pi_K(f, 1.5) == 0);
}

TEST_CASE("parallel and serial ideal enumeration agree") {
    for (const auto& f : presets()) {
        CAPTURE(f.name());
        const auto a = prime_ideal_events(f, 0, 2e5);
        const auto b = prime_ideal_events_serial(f, 0, 2e5);
        REQUIRE(a.size() == b.size());
        bool same = true;
        for (std::size_t i = 0; i < a.size(); ++i)
            same = same && a[i].position == b[i].position && a[i].prime == b[i].prime &&
                   a[i].residue_degree == b[i].residue_degree && a[i].exponent == b[i].exponent &&
                   a[i].weight == b[i].weight;
        CHECK(same);
        const auto tail = prime_ideal_events(f, 1e5, 2e5);
        CHECK(std::count_if(a.begin(), a.end(), [](const IdealEvent& e) { return e.position > 100000; }) ==
              static_cast<std::ptrdiff_t>(tail.size()));
    }
}

TEST_CASE("quadratic splitting matches the Kronecker oracle") {
    CHECK(kronecker_symbol(-4, 5) == 1);
    CHECK(kronecker_symbol(-4, 3) == -1);
    CHECK(kronecker_symbol(8, 7) == 1);
    CHECK(kronecker_symbol(8, 3) == -1);
    CHECK(kronecker_symbol(5, 2) == -1);
    CHECK(kronecker_symbol(-3, 2) == -1);
    CHECK(is_fundamental_discriminant(-4));
    CHECK(is_fundamental_discriminant(12));
    CHECK_FALSE(is_fundamental_discriminant(-16));
    CHECK_FALSE(is_fundamental_discriminant(5 * 4));
    for (const auto& f : presets()) {
        if (f.degree() != 2) continue;
        const auto d = f.quadratic_discriminant();
        for (std::int64_t p : sieve_primes(0, 20000))
            if (f.supports(p)) REQUIRE(splitting_type(f, p).factors == quadratic_splitting_oracle(d, p).factors);
    }
}

TEST_CASE("splitting invariants on presets") {
    for (const auto& f : presets()) {
        CAPTURE(f.name());
        for (std::int64_t p : sieve_primes(0, 3000)) {
            const auto st = splitting_type(f, p);
            CHECK(st.degree_sum() == f.degree());
            for (int k = 1; k <= f.degree(); ++k) CHECK(st.ideals_of_degree(k) <= f.degree() / k);
            if (f.field_disc() % p != 0) {
                // unramified and coprime to the index: degree-1 ideals are the roots
                CHECK(st.ideals_of_degree(1) == naive_roots(f.coefficients(), p));
                for (const auto& t : st.factors) CHECK(t.ramification == 1);
            }
        }
    }
}

TEST_CASE("degree-one preset reduces to the rational counters") {
    const auto& q = find_field(presets(), "Q");
    const auto ev = prime_ideal_events(q, 0, 1e5);
    const auto pe = prime_power_events(0, 1e5);
    REQUIRE(ev.size() == pe.size());
    for (std::size_t i = 0; i < ev.size(); ++i) {
        CHECK(ev[i].position == pe[i].position);
        CHECK(ev[i].weight == doctest::Approx(pe[i].weight).epsilon(1e-15));
    }
    for (double x : {1.5, 2.0, 97.0, 1000.5, 65536.0, 1e5}) {
        CHECK(pi_K(q, x) == pi_ap(x));
        CHECK(psi_K(q, x) == doctest::Approx(psi_ap(x)).epsilon(1e-13));
    }
}

TEST_CASE("prime ideal theorem envelope") {
    for (const auto& f : presets()) {
        CAPTURE(f.name());
        const auto ev = prime_ideal_events(f, 0, 1e6);
        double worst = 0.0, acc = 0.0;
        std::size_t i = 0;
        for (double x = 1000; x <= 1e6; x *= 1.01) {
            while (i < ev.size() && double(ev[i].position) <= x) acc += ev[i++].weight;
            const double L = std::log(x);
            const double scale = std::sqrt(x) * (f.degree() * L + std::log(double(f.field_disc()))) * L;
            worst = std::max(worst, std::fabs(acc - x) / scale);
        }
        CHECK(worst < 1.0);
    }
}
