#include "primewin/short_interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "primewin/errors.hpp"
#include "primewin/summation.hpp"

namespace primewin {

std::int64_t euler_phi(std::int64_t q) {
    if (q < 1) throw DomainError("euler_phi needs q >= 1");
    std::int64_t result = q;
    for (std::int64_t p = 2; p * p <= q; ++p) {
        if (q % p) continue;
        while (q % p == 0) q /= p;
        result -= result / p;
    }
    if (q > 1) result -= result / q;
    return result;
}

void require_coprime(ResidueClass cls) {
    cls.validate();
    if (!cls.coprime())
        throw DomainError("theorem-level experiments need gcd(a, q) = 1");
}

double delta(double x, double h, ResidueClass cls) {
    cls.validate();
    if (!(h >= 0.0) || !(x >= 0.0)) throw DomainError("delta needs x >= 0 and h >= 0");
    CompensatedSum sum;
    for (const auto& e : prime_power_events(x, x + h, cls)) sum += e.weight;
    return sum.value() - h / static_cast<double>(euler_phi(cls.modulus));
}

double delta_K(const NumberField& field, double x, double h) {
    if (!(h >= 0.0) || !(x >= 0.0)) throw DomainError("delta_K needs x >= 0 and h >= 0");
    CompensatedSum sum;
    for (const auto& e : prime_ideal_events(field, x, x + h)) sum += e.weight;
    return sum.value() - h;
}

DeltaSeries::DeltaSeries(const EventCounter& counter, double begin, double end, double h)
    : begin_(begin), end_(end), h_(h), label_(counter.label()) {
    if (!(end >= begin)) throw DomainError("DeltaSeries needs begin <= end");
    if (!(h > 0.0)) throw DomainError("DeltaSeries needs h > 0");
    counter.require(begin, end + h);

    const auto pos = counter.positions();
    std::vector<double> at_n, at_n_minus_h;
    for (const std::int64_t p : pos) {
        const auto n = static_cast<double>(p);
        if (n > begin && n < end) at_n.push_back(n);
        const double m = n - h;
        if (m > begin && m < end) at_n_minus_h.push_back(m);
    }
    breakpoints_.resize(at_n.size() + at_n_minus_h.size());
    std::merge(at_n.begin(), at_n.end(), at_n_minus_h.begin(), at_n_minus_h.end(),
               breakpoints_.begin());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());

    values_.resize(breakpoints_.size() + 1);
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double mid = 0.5 * (piece_begin(k) + piece_end(k));
        values_[k] = counter.delta(mid, h);
    }
}

double DeltaSeries::value_at(double x) const {
    if (x < begin_ || x > end_) throw DomainError("probe outside DeltaSeries range");
    const auto k = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin();
    return values_[static_cast<std::size_t>(k)];
}

double DeltaSeries::integral_of_square() const {
    CompensatedSum sum;
    for (std::size_t k = 0; k < values_.size(); ++k)
        sum += (piece_end(k) - piece_begin(k)) * values_[k] * values_[k];
    return sum.value();
}

double mean_square(const EventCounter& counter, double X, double h) {
    if (!(h >= 2.0 && h <= X)) throw DomainError("mean square needs 2 <= h <= X");
    return DeltaSeries(counter, X, 2.0 * X, h).integral_of_square();
}

namespace {

ExperimentReport finish_meansq(ExperimentReport r, double ms, double bound,
                               std::optional<double> ceiling) {
    r.set_measure(ms, bound);
    if (ceiling) {
        r.params["ratio_ceiling"] = *ceiling;
        r.verdict = r.ratio <= *ceiling ? Verdict::pass : Verdict::fail;
    }
    return r;
}

}  // namespace

ExperimentReport meansq_ratio_ap(double X, double h, ResidueClass cls, std::optional<double> ceiling) {
    require_coprime(cls);
    if (!(h >= 2.0 && h <= X)) throw DomainError("mean square needs 2 <= h <= X");
    const auto counter = progression_counter(default_sieve(), cls, X, 2.0 * X + h);
    const double ms = mean_square(counter, X, h);
    const double log_qX = std::log(static_cast<double>(cls.modulus) * X);
    ExperimentReport r;
    r.experiment = "meansq";
    r.params = {{"q", cls.modulus}, {"a", cls.residue}, {"X", X}, {"h", h}};
    return finish_meansq(std::move(r), ms, h * X * log_qX * log_qX, ceiling);
}

ExperimentReport meansq_ratio_field(const NumberField& field, double X, double h,
                                    std::optional<double> ceiling) {
    if (!(h >= 2.0 && h <= X)) throw DomainError("mean square needs 2 <= h <= X");
    const auto counter = field_counter(field, X, 2.0 * X + h);
    const double ms = mean_square(counter, X, h);
    const double L = std::log(X);
    const double size = field.degree() * L + std::log(static_cast<double>(field.field_disc()));
    ExperimentReport r;
    r.experiment = "meansq";
    r.params = {{"field", field.name()}, {"X", X}, {"h", h}};
    return finish_meansq(std::move(r), ms, X * (h + L * L) * size * size, ceiling);
}

InertiaResult inertia_scan(const EventCounter& counter, double X, double h, InertiaOptions opt) {
    if (!(h > 0.0) || !(X > 0.0)) throw DomainError("inertia scan needs X > 0 and h > 0");
    counter.require(X, 2.0 * X + h);
    InertiaResult result;
    result.X = X;
    result.h = h;
    result.threshold = opt.threshold_factor * h * counter.density();
    result.persistence_level = opt.persistence_factor * h * counter.density();
    result.large_window = h * counter.density() > std::pow(X, 0.1);

    // Extend past [X, 2X] where the counter allows so persistence runs are
    // not cut at the window edge.
    const double lo = std::max(X - h, counter.lo());
    const double hi = std::max(2.0 * X, std::min(2.0 * X + h, counter.hi() - h));
    const DeltaSeries series(counter, lo, hi, h);
    const auto& v = series.values();
    const std::size_t n = v.size();

    std::size_t k = 0;
    while (k < n) {
        const double a = std::max(series.piece_begin(k), X);
        const double b = std::min(series.piece_end(k), 2.0 * X);
        if (b < a || !(std::fabs(v[k]) > result.threshold)) {
            ++k;
            continue;
        }
        Exceedance e{a, b, 0.5 * (a + b), v[k], 0.0, false};
        std::size_t peak = k;
        std::size_t j = k + 1;
        for (; j < n && std::fabs(v[j]) > result.threshold && series.piece_begin(j) <= 2.0 * X; ++j) {
            e.end = std::min(series.piece_end(j), 2.0 * X);
            if (std::fabs(v[j]) > std::fabs(v[peak])) peak = j;
        }
        e.peak_x = 0.5 * (std::max(series.piece_begin(peak), X) + std::min(series.piece_end(peak), 2.0 * X));
        e.peak_value = v[peak];

        std::size_t left = peak, right = peak;
        while (left > 0 && std::fabs(v[left - 1]) > result.persistence_level) --left;
        while (right + 1 < n && std::fabs(v[right + 1]) > result.persistence_level) ++right;
        const bool run_holds = std::fabs(v[peak]) > result.persistence_level;
        if (run_holds) {
            e.radius = std::min(e.peak_x - series.piece_begin(left), series.piece_end(right) - e.peak_x);
            e.radius_capped = left == 0 || right + 1 == n;
        }
        result.exceedances.push_back(e);
        k = j;
    }
    return result;
}

ExperimentReport bt_check_ap(double x, double h, ResidueClass cls) {
    require_coprime(cls);
    if (!(h > static_cast<double>(cls.modulus)))
        throw DomainError("Brun-Titchmarsh check needs h > q");
    if (!(x >= 0.0)) throw DomainError("Brun-Titchmarsh check needs x >= 0");
    const auto ps = default_sieve().primes(x, x + h);
    const auto count = std::count_if(ps.begin(), ps.end(), [&](std::int64_t p) { return cls.contains(p); });
    const double q = static_cast<double>(cls.modulus);
    ExperimentReport r;
    r.experiment = "bt-ap";
    r.params = {{"q", cls.modulus}, {"a", cls.residue}, {"x", x}, {"h", h}};
    r.set_measure(static_cast<double>(count),
                  2.0 * h / (static_cast<double>(euler_phi(cls.modulus)) * std::log(h / q)));
    r.verdict = r.metric <= r.bound ? Verdict::pass : Verdict::fail;
    return r;
}

ExperimentReport bt_check_field(const NumberField& field, double x, double h) {
    if (!(h >= 2.0 && h <= x)) throw DomainError("Brun-Titchmarsh check needs 2 <= h <= x");
    const auto events = prime_ideal_events(field, x, x + h);
    const auto count = std::count_if(events.begin(), events.end(),
                                     [](const IdealEvent& e) { return e.exponent == 1; });
    ExperimentReport r;
    r.experiment = "bt-field";
    r.params = {{"field", field.name()}, {"x", x}, {"h", h}};
    r.set_measure(static_cast<double>(count), 4.0 * field.degree() * h / std::log(h));
    r.verdict = r.metric <= r.bound ? Verdict::pass : Verdict::fail;
    return r;
}

WindowMax max_window_count(const EventCounter& counter, double h, double x_lo, double x_hi) {
    if (!(h > 0.0) || !(x_hi >= x_lo)) throw DomainError("window scan needs h > 0, x_lo <= x_hi");
    counter.require(x_lo, x_hi + h);
    const auto P = counter.prime_positions();
    WindowMax best{counter.pi_between(x_lo, x_lo + h), x_lo};
    if (const auto c = counter.pi_between(x_hi, x_hi + h); c > best.count) best = {c, x_hi};
    // A start just below an event p counts the events in [p, p + h).
    std::size_t j = 0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto p = static_cast<double>(P[i]);
        if (p <= x_lo) continue;
        if (p > x_hi) break;
        if (i > 0 && P[i - 1] == P[i]) continue;
        j = std::max(j, i);
        while (j < P.size() && static_cast<double>(P[j]) < p + h) ++j;
        const auto c = static_cast<std::int64_t>(j - i);
        if (c > best.count) best = {c, std::nextafter(p, 0.0)};
    }
    return best;
}

namespace {

struct ScanRange {
    std::int64_t first, last;
};

ScanRange scan_range(const EventCounter& counter, double x_lo, double x_hi, double c1,
                     const std::function<double(double)>& scale) {
    if (!(c1 > 0.0)) throw DomainError("c1 must be > 0");
    if (!(x_lo >= 2.0 && x_hi >= x_lo)) throw DomainError("window scan needs 2 <= x_lo <= x_hi");
    const ScanRange r{static_cast<std::int64_t>(std::ceil(x_lo)),
                      static_cast<std::int64_t>(std::floor(x_hi))};
    counter.require(static_cast<double>(r.first),
                    static_cast<double>(r.last) + c1 * scale(static_cast<double>(r.last)));
    return r;
}

void absorb(CramerScan& acc, std::int64_t count, double x, double h, double density) {
    ++acc.windows;
    if (count == 0) ++acc.empty_windows;
    if (acc.windows == 1 || count < acc.min_count) {
        acc.min_count = count;
        acc.min_count_x = x;
    }
    const double c2 = static_cast<double>(count) * std::log(x) / (h * density);
    if (acc.windows == 1 || c2 < acc.c2_empirical) {
        acc.c2_empirical = c2;
        acc.c2_x = x;
    }
}

void merge(CramerScan& acc, const CramerScan& part) {
    if (part.windows == 0) return;
    if (acc.windows == 0) {
        acc = part;
        return;
    }
    acc.windows += part.windows;
    acc.empty_windows += part.empty_windows;
    if (part.min_count < acc.min_count) {
        acc.min_count = part.min_count;
        acc.min_count_x = part.min_count_x;
    }
    if (part.c2_empirical < acc.c2_empirical) {
        acc.c2_empirical = part.c2_empirical;
        acc.c2_x = part.c2_x;
    }
}

void gap_statistics(CramerScan& acc, const EventCounter& counter, ScanRange r,
                    const std::function<double(double)>& scale) {
    const auto P = counter.prime_positions();
    const auto lo = static_cast<double>(r.first);
    auto it = std::upper_bound(P.begin(), P.end(), r.first);
    acc.c1_needed = 0.0;
    acc.c1_x = lo;
    if (it == P.end()) {
        acc.c1_needed = std::numeric_limits<double>::infinity();
        return;
    }
    double prev = lo;
    for (; it != P.end(); ++it) {
        const auto p = static_cast<double>(*it);
        if (p == prev) continue;
        const double need = (p - prev) / scale(prev);
        if (need > acc.c1_needed) {
            acc.c1_needed = need;
            acc.c1_x = prev;
        }
        if (p > static_cast<double>(r.last)) break;
        prev = p;
    }
}

}  // namespace

CramerScan cramer_window_scan(const EventCounter& counter, double x_lo, double x_hi, double c1,
                              const std::function<double(double)>& scale) {
    const ScanRange r = scan_range(counter, x_lo, x_hi, c1, scale);
    const auto P = counter.prime_positions();
    const double density = counter.density();
    constexpr std::int64_t kChunk = 1 << 16;
    const std::int64_t chunks = (r.last - r.first + kChunk) / kChunk;
    std::vector<CramerScan> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t a = r.first + c * kChunk;
        const std::int64_t b = std::min(a + kChunk - 1, r.last);
        auto& part = parts[static_cast<std::size_t>(c)];
        auto i = static_cast<std::size_t>(std::upper_bound(P.begin(), P.end(), a) - P.begin());
        std::size_t j = i;
        for (std::int64_t x = a; x <= b; ++x) {
            const auto xd = static_cast<double>(x);
            const double h = c1 * scale(xd);
            const double end = xd + h;
            while (i < P.size() && P[i] <= x) ++i;
            j = std::max(j, i);
            while (j < P.size() && static_cast<double>(P[j]) <= end) ++j;
            absorb(part, static_cast<std::int64_t>(j - i), xd, h, density);
        }
    }
    CramerScan total;
    for (const auto& part : parts) merge(total, part);
    gap_statistics(total, counter, r, scale);
    return total;
}

CramerScan cramer_window_scan_serial(const EventCounter& counter, double x_lo, double x_hi,
                                     double c1, const std::function<double(double)>& scale) {
    const ScanRange r = scan_range(counter, x_lo, x_hi, c1, scale);
    CramerScan total;
    for (std::int64_t x = r.first; x <= r.last; ++x) {
        const auto xd = static_cast<double>(x);
        const double h = c1 * scale(xd);
        absorb(total, counter.pi_between(xd, xd + h), xd, h, counter.density());
    }
    gap_statistics(total, counter, r, scale);
    return total;
}

std::function<double(double)> ap_window_scale(ResidueClass cls) {
    const auto phi = static_cast<double>(euler_phi(cls.modulus));
    return [phi](double x) { return phi * std::sqrt(x) * std::log(x); };
}

std::function<double(double)> field_window_scale(const NumberField& field) {
    const double n = field.degree();
    const double log_d = std::log(static_cast<double>(field.field_disc()));
    return [n, log_d](double x) { return (n * std::log(x) + log_d) * std::sqrt(x); };
}

namespace {

ExperimentReport cramer_report(const CramerScan& s, nlohmann::ordered_json params) {
    ExperimentReport r;
    params["windows"] = s.windows;
    params["empty_windows"] = s.empty_windows;
    params["min_count_x"] = s.min_count_x;
    params["c2_empirical"] = s.c2_empirical;
    params["c2_x"] = s.c2_x;
    params["c1_needed"] = s.c1_needed;
    params["c1_x"] = s.c1_x;
    r.params = std::move(params);
    r.set_measure(static_cast<double>(s.min_count), 1.0);
    r.verdict = s.empty_windows == 0 ? Verdict::pass : Verdict::fail;
    return r;
}

}  // namespace

ExperimentReport cramer_scan_ap(double x_lo, double x_hi, double c1, ResidueClass cls) {
    require_coprime(cls);
    const auto scale = ap_window_scale(cls);
    const double reach = std::floor(x_hi) + c1 * scale(std::floor(x_hi)) + 1.0;
    const auto counter = progression_counter(default_sieve(), cls, std::floor(x_lo) - 1.0, reach);
    auto r = cramer_report(cramer_window_scan(counter, x_lo, x_hi, c1, scale),
                           {{"q", cls.modulus}, {"a", cls.residue}, {"c1", c1}, {"x_lo", x_lo}, {"x_hi", x_hi}});
    r.experiment = "ap-scan";
    return r;
}

ExperimentReport cramer_scan_field(const NumberField& field, double x_lo, double x_hi, double c1) {
    const auto scale = field_window_scale(field);
    const double reach = std::floor(x_hi) + c1 * scale(std::floor(x_hi)) + 1.0;
    const auto counter = field_counter(field, std::floor(x_lo) - 1.0, reach);
    auto r = cramer_report(cramer_window_scan(counter, x_lo, x_hi, c1, scale),
                           {{"field", field.name()}, {"c1", c1}, {"x_lo", x_lo}, {"x_hi", x_hi}});
    r.experiment = "field-scan";
    return r;
}

}  // namespace primewin
