// OpenMP kernels against their serial references. Each row prints the best
// of several runs and checks that both paths produce the same result.
//
//   primewin_bench [--reps N] [--scale S]
//
// S multiplies the default problem sizes.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "primewin/counter.hpp"
#include "primewin/number_field.hpp"
#include "primewin/short_interval.hpp"
#include "primewin/sieve.hpp"

using namespace primewin;

namespace {

double best_of(int reps, const std::function<void()>& f) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

std::string fmt_range(double lo, double hi) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g, %.3g", lo, hi);
    return buf;
}

void row(const std::string& name, double serial, double parallel, bool same) {
    std::printf("%-36s %10.4f %10.4f %8.2fx  %s\n", name.c_str(), serial, parallel, serial / parallel,
                same ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"primewin kernel benchmarks"};
    int reps = 3;
    double scale = 1.0;
    app.add_option("--reps", reps, "runs per kernel (best is kept)");
    app.add_option("--scale", scale, "multiplier on the problem sizes");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-36s %10s %10s %9s\n", "kernel", "serial s", "kernel s", "speedup");

    const auto& sieve = default_sieve();
    {
        const double lo = 1e9 - 2e7 * scale, hi = 1e9;
        std::vector<std::int64_t> a, b;
        const double ts = best_of(reps, [&] { a = sieve.primes_serial(lo, hi); });
        const double tp = best_of(reps, [&] { b = sieve.primes(lo, hi); });
        row("sieve (" + fmt_range(lo, hi) + "]", ts, tp, a == b);
    }

    const auto fields = load_field_presets(std::string(PRIMEWIN_DATA_DIR) + "/fields.txt");
    for (const char* name : {"Q(i)", "Q(zeta7)"}) {
        const auto& K = find_field(fields, name);
        const double hi = 2e6 * scale;
        std::vector<IdealEvent> a, b;
        const double ts = best_of(reps, [&] { a = prime_ideal_events_serial(K, 0, hi); });
        const double tp = best_of(reps, [&] { b = prime_ideal_events(K, 0, hi); });
        const bool same = a.size() == b.size() &&
                          std::equal(a.begin(), a.end(), b.begin(), [](const IdealEvent& x, const IdealEvent& y) {
                              return x.position == y.position && x.prime == y.prime && x.weight == y.weight;
                          });
        row(std::string("ideals ") + name + " (" + fmt_range(0, hi) + "]", ts, tp, same);
    }

    {
        const double x_hi = 1e6 * scale;
        const auto c = progression_counter(sieve, {4, 3}, 0, 1.1 * x_hi + 1e5);
        const auto scale_fn = ap_window_scale({4, 3});
        CramerScan a, b;
        const double ts = best_of(1, [&] { a = cramer_window_scan_serial(c, 1e3, x_hi, 4, scale_fn); });
        const double tp = best_of(reps, [&] { b = cramer_window_scan(c, 1e3, x_hi, 4, scale_fn); });
        const bool same = a.windows == b.windows && a.min_count == b.min_count &&
                          a.c2_empirical == b.c2_empirical && a.c1_needed == b.c1_needed;
        // the reference counts each window separately; the kernel slides two pointers
        row("cramer 4,3 [" + fmt_range(1e3, x_hi) + "]", ts, tp, same);
    }
    return 0;
}
