// short_interval.hpp
//
// Short-interval experiments on psi-type counters:
//   Delta(x, h) = counter(x + h) - counter(x) - h * density,
// its exact mean square over [X, 2X], the inertia exceedance scanner,
// Brun-Titchmarsh checks (progressions and prime ideals) and Cramer-type
// window scans. density is 1/phi(q) for psi(x; q, a) and 1 for psi_K.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "primewin/counter.hpp"
#include "primewin/number_field.hpp"
#include "primewin/report.hpp"
#include "primewin/sieve.hpp"

namespace primewin {

std::int64_t euler_phi(std::int64_t q);

double delta(double x, double h, ResidueClass cls);
double delta_K(const NumberField& field, double x, double h);

// Delta(., h) over [begin, end] as a right-continuous step function.
// Breakpoints are the points n and n - h (n an event) inside (begin, end);
// piece k is [breakpoint k-1, breakpoint k) with the outer ends at begin/end.
class DeltaSeries {
public:
    DeltaSeries(const EventCounter& counter, double begin, double end, double h);

    double begin() const { return begin_; }
    double end() const { return end_; }
    double h() const { return h_; }
    const std::string& counter_label() const { return label_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t pieces() const { return values_.size(); }
    double piece_begin(std::size_t k) const { return k == 0 ? begin_ : breakpoints_[k - 1]; }
    double piece_end(std::size_t k) const { return k == breakpoints_.size() ? end_ : breakpoints_[k]; }

    double value_at(double x) const;
    // Exact integral of Delta^2 over [begin, end].
    double integral_of_square() const;

private:
    double begin_, end_, h_;
    std::string label_;
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

// Exact integral over [X, 2X] of Delta(x, h)^2; needs 2 <= h <= X and the
// counter to cover [X, 2X + h].
double mean_square(const EventCounter& counter, double X, double h);

// Mean square with ratio against h X log^2(q X) (progressions) or
// X (h + L^2)(n_K L + log d_K)^2, L = log X (fields). Verdict is
// report-only unless a ratio ceiling is supplied.
ExperimentReport meansq_ratio_ap(double X, double h, ResidueClass cls,
                                 std::optional<double> ratio_ceiling = std::nullopt);
ExperimentReport meansq_ratio_field(const NumberField& field, double X, double h,
                                    std::optional<double> ratio_ceiling = std::nullopt);

struct InertiaOptions {
    double threshold_factor = 0.25;    // exceedance: |Delta| > factor * h * density
    double persistence_factor = 0.125; // persistence: |Delta| > factor * h * density
};

struct Exceedance {
    double begin, end;       // maximal subinterval of [X, 2X]
    double peak_x;           // where |Delta| is largest inside it
    double peak_value;
    double radius;           // largest r with persistence on (peak_x - r, peak_x + r)
    bool radius_capped;      // the persistence run reached the scanned range edge
};

struct InertiaResult {
    double X, h, threshold, persistence_level;
    bool large_window;       // h * density > X^{1/10}
    std::vector<Exceedance> exceedances;
};

InertiaResult inertia_scan(const EventCounter& counter, double X, double h,
                           InertiaOptions options = {});

// pi(x + h; q, a) - pi(x; q, a) <= 2h / (phi(q) log(h/q)); needs h > q.
ExperimentReport bt_check_ap(double x, double h, ResidueClass cls);
// pi_K(x + h) - pi_K(x) <= 4 n_K h / log h; needs 2 <= h <= x.
ExperimentReport bt_check_field(const NumberField& field, double x, double h);

struct WindowMax {
    std::int64_t count;  // sup over x in [x_lo, x_hi] of #primes in (x, x + h]
    double x;            // a start attaining it (approached from below)
};

// Largest pi-type count in a window of length h starting in [x_lo, x_hi];
// the counter must cover (x_lo, x_hi + h].
WindowMax max_window_count(const EventCounter& counter, double h, double x_lo, double x_hi);

struct CramerScan {
    std::int64_t windows = 0;
    std::int64_t empty_windows = 0;
    std::int64_t min_count = 0;
    double min_count_x = 0.0;
    double c2_empirical = 0.0;     // min of count * log x / (h(x) * density)
    double c2_x = 0.0;
    double c1_needed = 0.0;        // max gap / scale(x): smallest c1 keeping windows nonempty
    double c1_x = 0.0;
};

// Windows (x, x + c1 * scale(x)] for every integer x in [x_lo, x_hi]; scale
// must be increasing. With x in [n, n+1) the count is smallest at x = n, so
// the integer grid covers every real start. Chunks run in parallel.
CramerScan cramer_window_scan(const EventCounter& counter, double x_lo, double x_hi, double c1,
                              const std::function<double(double)>& scale);
CramerScan cramer_window_scan_serial(const EventCounter& counter, double x_lo, double x_hi,
                                     double c1, const std::function<double(double)>& scale);

// phi(q) sqrt(x) log x and (n_K log x + log d_K) sqrt(x).
std::function<double(double)> ap_window_scale(ResidueClass cls);
std::function<double(double)> field_window_scale(const NumberField& field);

ExperimentReport cramer_scan_ap(double x_lo, double x_hi, double c1, ResidueClass cls);
ExperimentReport cramer_scan_field(const NumberField& field, double x_lo, double x_hi, double c1);

// Theorem-level experiments need gcd(a, q) = 1.
void require_coprime(ResidueClass cls);

}  // namespace primewin
