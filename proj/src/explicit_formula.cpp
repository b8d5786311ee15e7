#include "primewin/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "primewin/errors.hpp"
#include "primewin/summation.hpp"

namespace primewin {

namespace {

using cplx = std::complex<double>;

// Sums in descending magnitude with compensation; the terms decay like
// 1/gamma, so small tails are added last.
double ordered_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::fabs(a) > std::fabs(b); });
    CompensatedSum sum;
    for (const double t : terms) sum += t;
    return sum.value();
}

// The counter must hold every event in (a, b); below 2 there are none.
void require_window(const EventCounter& counter, double a, double b) {
    counter.require(std::max(a, std::min(counter.lo(), 1.0)), b);
}

}  // namespace

TruncationSpec::TruncationSpec(const ZeroTable& zeros, double height, int degree, double field_disc)
    : zeros_(&zeros), height_(height), degree_(degree), field_disc_(field_disc) {
    if (!(height >= 2.0)) throw DomainError("truncation height must be >= 2");
    if (height > zeros.completeness_height)
        throw DomainError("truncation height exceeds completeness height of " + zeros.label);
    if (degree < 1 || !(field_disc >= 1.0)) throw DomainError("invalid field data");
}

std::vector<double> TruncationSpec::active_ordinates() const {
    const auto& g = zeros_->ordinates;
    return {g.begin(), std::upper_bound(g.begin(), g.end(), height_)};
}

double truncated_psi(double x, const TruncationSpec& spec) {
    if (!(x >= 2.0)) throw DomainError("truncated_psi needs x >= 2");
    const double L = std::log(x);
    const double sx = std::sqrt(x);
    std::vector<double> terms;
    for (const double g : spec.active_ordinates()) {
        // 2 Re(x^{1/2 + i g} / (1/2 + i g))
        terms.push_back(-2.0 * sx * (0.5 * std::cos(g * L) + g * std::sin(g * L)) / (0.25 + g * g));
    }
    double value = x + ordered_sum(terms);
    if (spec.degree() == 1)
        value += -std::log(2.0 * std::numbers::pi) - 0.5 * std::log1p(-1.0 / (x * x));
    return value;
}

double truncated_psi_derivative(double x, const TruncationSpec& spec) {
    if (!(x >= 2.0)) throw DomainError("truncated_psi needs x >= 2");
    const double L = std::log(x);
    std::vector<double> terms;
    for (const double g : spec.active_ordinates())
        terms.push_back(-2.0 * std::cos(g * L) / std::sqrt(x));  // -2 Re x^{rho - 1}
    double value = 1.0 + ordered_sum(terms);
    if (spec.degree() == 1) value -= 1.0 / (x * x * x - x);
    return value;
}

ResidualScan residual_scan(const EventCounter& counter, const TruncationSpec& spec,
                           const std::vector<double>& xs) {
    constexpr double kNudge = 1e-6;
    ResidualScan scan;
    scan.points.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double x = xs[i];
        if (counter.near_event(x, kNudge)) {
            scan.warnings.push_back("x = " + std::to_string(x) + " sits on an event; nudged by +1e-6");
            x = std::round(x) + kNudge;
        }
        counter.require(x, x);
        scan.points[i].x = x;
    }
    const auto n = static_cast<std::int64_t>(xs.size());
    const double T = spec.height();
    const double log_d = std::log(spec.field_disc());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        auto& pt = scan.points[static_cast<std::size_t>(i)];
        const double L = std::log(pt.x);
        pt.counter = counter.psi(pt.x);
        pt.predicted = truncated_psi(pt.x, spec);
        pt.residual = pt.counter - pt.predicted;
        pt.normalized = pt.residual * T / (pt.x * (spec.degree() * L + log_d) * L);
    }
    for (const auto& pt : scan.points) {
        scan.max_abs_residual = std::max(scan.max_abs_residual, std::fabs(pt.residual));
        scan.max_abs_normalized = std::max(scan.max_abs_normalized, std::fabs(pt.normalized));
    }
    return scan;
}

double triangle_weight(double n, double x, double h) {
    if (!(h > 0.0)) throw DomainError("triangle weight needs h > 0");
    return std::max(1.0 - std::fabs(x - n) / h, 0.0);
}

double smoothed_sum(double x, double h, const EventCounter& counter) {
    if (!(h > 0.0)) throw DomainError("smoothed sum needs h > 0");
    require_window(counter, x - h, x + h);
    const auto pos = counter.positions();
    const auto w = counter.weights();
    auto it = std::upper_bound(pos.begin(), pos.end(), x - h,
                               [](double v, std::int64_t p) { return v < static_cast<double>(p); });
    CompensatedSum sum;
    for (; it != pos.end() && static_cast<double>(*it) < x + h; ++it) {
        const auto n = static_cast<double>(*it);
        sum += w[static_cast<std::size_t>(it - pos.begin())] * (1.0 - std::fabs(x - n) / h);
    }
    return sum.value();
}

double smoothed_prediction(double x, double h, const TruncationSpec& spec) {
    if (!(h > 0.0) || !(x - h >= 2.0)) throw DomainError("smoothed prediction needs x - h >= 2");
    std::vector<double> terms;
    for (const double g : spec.active_ordinates()) {
        const cplx rho(0.5, g);
        auto power = [&](double t) { return std::pow(t, 1.5) * std::polar(1.0, g * std::log(t)); };
        const cplx second_diff = power(x + h) - 2.0 * power(x) + power(x - h);
        terms.push_back(2.0 * (second_diff / (rho * (rho + 1.0))).real());
    }
    return h - ordered_sum(terms) / h;
}

SandwichBounds unweighted_sandwich(double x, double h, double eps, const EventCounter& counter) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    if (!(h > 0.0)) throw DomainError("sandwich needs h > 0");
    const double w = smoothed_sum(x, h, counter);
    const double w_minus = smoothed_sum(x, (1.0 - eps) * h, counter);
    const double w_plus = smoothed_sum(x, (1.0 + eps) * h, counter);
    return {-((1.0 - eps) * w_minus - w) / eps, ((1.0 + eps) * w_plus - w) / eps};
}

}  // namespace primewin
