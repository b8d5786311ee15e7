#include "primewin/fp_poly.hpp"

#include <algorithm>

#include "primewin/errors.hpp"

namespace primewin::fp {

Field::Field(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (std::uint64_t{1} << 32))
        throw DomainError("F_p arithmetic requires 2 <= p < 2^32");
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p_;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t Field::inv(std::uint64_t a) const {
    if (a % p_ == 0) throw DomainError("inverse of zero in F_p");
    return pow(a, p_ - 2);
}

std::uint64_t Field::reduce(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(std::span<const std::int64_t> coefficients, const Field& F) {
    Poly f(coefficients.size());
    std::transform(coefficients.begin(), coefficients.end(), f.begin(),
                   [&](std::int64_t c) { return F.reduce(c); });
    trim(f);
    return f;
}

Poly add(const Poly& a, const Poly& b, const Field& F) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, const Field& F) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, const Field& F) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Field& F) {
    if (b.empty()) throw DomainError("polynomial division by zero");
    Poly r = a;
    if (r.size() < b.size()) return {{}, r};
    const std::uint64_t lead_inv = F.inv(b.back());
    Poly q(r.size() - b.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        const std::uint64_t c = F.mul(r[k + b.size() - 1], lead_inv);
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = F.sub(r[k + j], F.mul(c, b[j]));
    }
    trim(q);
    trim(r);
    return {q, r};
}

Poly rem(const Poly& a, const Poly& b, const Field& F) { return divmod(a, b, F).second; }

Poly quo(const Poly& a, const Poly& b, const Field& F) { return divmod(a, b, F).first; }

Poly monic(const Poly& f, const Field& F) {
    if (f.empty() || f.back() == 1) return f;
    const std::uint64_t c = F.inv(f.back());
    Poly r = f;
    for (auto& v : r) v = F.mul(v, c);
    return r;
}

Poly gcd(Poly a, Poly b, const Field& F) {
    while (!b.empty()) {
        Poly r = rem(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, F);
}

Poly derivative(const Poly& f, const Field& F) {
    if (f.size() <= 1) return {};
    Poly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = F.mul(F.reduce(static_cast<std::int64_t>(i % F.p())), f[i]);
    trim(d);
    return d;
}

Poly pow_mod(Poly base, std::uint64_t e, const Poly& f, const Field& F) {
    Poly result{1};
    result = rem(result, f, F);
    base = rem(base, f, F);
    while (e) {
        if (e & 1) result = rem(mul(result, base, F), f, F);
        e >>= 1;
        if (e) base = rem(mul(base, base, F), f, F);
    }
    return result;
}

Poly pow_x_mod(std::uint64_t e, const Poly& f, const Field& F) {
    return pow_mod(Poly{0, 1}, e, f, F);
}

namespace {

// f(x) = g(x)^p with f' = 0: the p-th root maps x^{kp} -> x^k (coefficients
// are fixed by Frobenius on F_p).
Poly pth_root(const Poly& f, const Field& F) {
    const std::size_t p = F.p();
    Poly r((f.size() - 1) / p + 1, 0);
    for (std::size_t i = 0; i < f.size(); i += p) r[i / p] = f[i];
    trim(r);
    return r;
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f0, const Field& F) {
    std::vector<std::pair<Poly, int>> out;
    const Poly f = monic(f0, F);
    if (degree(f) < 1) return out;
    Poly c = gcd(f, derivative(f, F), F);
    Poly w = quo(f, c, F);
    int i = 1;
    while (degree(w) > 0) {
        Poly y = gcd(w, c, F);
        Poly factor = quo(w, y, F);
        if (degree(factor) > 0) out.emplace_back(monic(factor, F), i);
        w = std::move(y);
        c = quo(c, w, F);
        ++i;
    }
    if (degree(c) > 0) {
        const int p = static_cast<int>(F.p());
        for (auto& [s, m] : squarefree_decomposition(pth_root(c, F), F))
            out.emplace_back(std::move(s), m * p);
    }
    return out;
}

std::vector<std::pair<int, int>> distinct_degree(const Poly& f0, const Field& F) {
    std::vector<std::pair<int, int>> out;
    Poly g = monic(f0, F);
    Poly h = rem(Poly{0, 1}, g, F);
    const Poly x{0, 1};
    for (int d = 1; 2 * d <= degree(g); ++d) {
        h = pow_mod(h, F.p(), g, F);
        Poly common = gcd(g, sub(h, x, F), F);
        if (degree(common) > 0) {
            out.emplace_back(d, degree(common) / d);
            g = quo(g, common, F);
            h = rem(h, g, F);
        }
    }
    if (degree(g) > 0) out.emplace_back(degree(g), 1);
    return out;
}

}  // namespace primewin::fp
