#include "primewin/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "primewin/errors.hpp"
#include "primewin/explicit_formula.hpp"
#include "primewin/report.hpp"
#include "primewin/short_interval.hpp"
#include "primewin/zero_data.hpp"

namespace primewin {

namespace {

std::string default_fields_path() {
    if (const char* env = std::getenv("PRIMEWIN_FIELDS"); env && *env) return env;
    return std::string(PRIMEWIN_DATA_DIR) + "/fields.txt";
}

// h = c * base^theta * (log base)^kappa unless given directly.
struct WindowSpec {
    std::optional<double> h;
    double coef = 1.0;
    double exponent = 0.5;
    double log_power = 1.0;

    double at(double base) const {
        if (h) return *h;
        return coef * std::pow(base, exponent) * std::pow(std::log(base), log_power);
    }
    void add_options(CLI::App* app) {
        app->add_option("--h", h, "window length (overrides the c*x^theta*(log x)^kappa form)");
        app->add_option("--h-coef", coef, "c in h = c x^theta (log x)^kappa");
        app->add_option("--h-exp", exponent, "theta in h = c x^theta (log x)^kappa");
        app->add_option("--h-log", log_power, "kappa in h = c x^theta (log x)^kappa");
    }
};

// Either a residue class or a number field.
struct Target {
    std::int64_t q = 1;
    std::int64_t a = 0;
    std::string field;
    std::vector<std::int64_t> poly;
    std::optional<std::int64_t> field_disc;

    void add_options(CLI::App* app) {
        app->add_option("--q", q, "modulus");
        app->add_option("--a", a, "residue");
        app->add_option("--field", field, "field preset name");
        app->add_option("--poly", poly, "monic defining polynomial c_0 ... c_{n-1} (leading 1 implied)");
        app->add_option("--dK", field_disc, "field discriminant for --poly");
    }
    bool is_field() const { return !field.empty() || !poly.empty(); }
    ResidueClass cls() const {
        ResidueClass c{q, a};
        c.validate();
        return c;
    }
};

struct Common {
    std::string output = "-";
    std::string format = "csv";
    int threads = 0;
    std::string fields_path = default_fields_path();
    std::string manifest = default_manifest_path();
    std::int64_t ceiling = SieveConfig{}.ceiling;
    std::uint64_t seed = 20160817;
};

NumberField resolve_field(const Target& t, const Common& c) {
    if (!t.poly.empty()) {
        IntPoly coeffs = t.poly;
        coeffs.push_back(1);
        return NumberField::from_polynomial(t.field.empty() ? "custom" : t.field, std::move(coeffs),
                                            t.field_disc);
    }
    const auto presets = load_field_presets(c.fields_path);
    return find_field(presets, t.field);
}

std::vector<std::string> default_components(const NumberField& K) {
    if (K.degree() == 1) return {"zeta"};
    if (K.degree() == 2) return {"zeta", "chi_" + std::to_string(K.quadratic_discriminant())};
    throw DomainError("no default zero components for " + K.name() + "; pass --component");
}

ZeroTable load_zero_set(const std::vector<std::string>& labels, const Common& c) {
    const auto manifest = load_manifest(c.manifest);
    std::vector<ZeroTable> tables;
    for (const auto& l : labels) tables.push_back(load_component(manifest, l));
    return combine(tables);
}

std::vector<double> grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw DomainError("grid needs step > 0 and hi >= lo");
    std::vector<double> xs;
    for (long i = 0;; ++i) {
        const double x = lo + static_cast<double>(i) * step;
        if (x > hi + 1e-9 * step) break;
        xs.push_back(x);
    }
    return xs;
}

Verdict overall(const std::vector<ExperimentReport>& rows) {
    for (const auto& r : rows)
        if (r.verdict == Verdict::fail) return Verdict::fail;
    return Verdict::pass;
}

// `--config PATH` is expanded in place: each `key = value` line of the file
// becomes `--key value...` unless the flag is already on the command line.
// Lines under a `[name]` header apply only to subcommand `name`.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> plain;
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 == args.size()) throw DomainError("--config needs a path");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            plain.push_back(args[i]);
        }
    }
    if (!path) return plain;
    std::ifstream in(*path);
    if (!in) throw DomainError("cannot open config file " + *path);
    std::string command;
    for (const auto& a : plain)
        if (!a.empty() && a[0] != '-') {
            command = a;
            break;
        }
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string section;
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected `key = value` in " + *path, line_no);
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        if (key.empty()) throw ParseError("empty key in " + *path, line_no);
        if (!section.empty() && section != command) continue;
        const std::string flag = "--" + key;
        const bool given = std::any_of(plain.begin(), plain.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (given) continue;
        plain.push_back(flag);
        std::istringstream tokens(value);
        for (std::string t; tokens >> t;) plain.push_back(t);
    }
    return plain;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"primewin: primes and prime ideals in short intervals"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");
    std::string config_path;  // consumed by expand_config; listed for --help
    app.add_option("--config", config_path, "read `key = value` options from a file; command-line flags win");
    app.set_help_all_flag("--help-all");

    Common common;
    Target target;
    WindowSpec window;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output,-o", common.output, "output path, '-' for stdout");
        sub->add_option("--format", common.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
        sub->add_option("--threads", common.threads, "worker threads (0 = OpenMP default)");
        sub->add_option("--fields", common.fields_path, "field preset file");
        sub->add_option("--zeros-manifest", common.manifest, "zero table manifest");
        sub->add_option("--ceiling", common.ceiling, "sieve ceiling");
        sub->add_option("--seed", common.seed, "seed for randomized draws");
    };

    // sieve
    double lo = 0.0, hi = 100.0;
    auto* sieve_cmd = app.add_subcommand("sieve", "list prime-power events in (lo, hi]");
    sieve_cmd->add_option("--lo", lo);
    sieve_cmd->add_option("--hi", hi)->required();

    // ap-scan / field-scan
    double c1 = 4.0, x_lo = 1000.0, x_hi = 1e6;
    auto* ap_scan = app.add_subcommand("ap-scan", "windows c1 phi(q) sqrt(x) log x over [x-lo, x-hi]");
    auto* field_scan = app.add_subcommand("field-scan", "windows c1 (n_K log x + log d_K) sqrt(x)");
    for (auto* s : {ap_scan, field_scan}) {
        s->add_option("--c1", c1);
        s->add_option("--x-lo", x_lo);
        s->add_option("--x-hi", x_hi);
    }

    // meansq / inertia
    double X = 1e5;
    std::optional<double> ratio_ceiling;
    InertiaOptions inertia_opts;
    auto* meansq = app.add_subcommand("meansq", "exact mean square of Delta over [X, 2X] and its ratio");
    auto* inertia = app.add_subcommand("inertia", "exceedance set E(X, h) and persistence radii");
    for (auto* s : {meansq, inertia}) {
        s->add_option("--X", X);
        window.add_options(s);
    }
    meansq->add_option("--ratio-ceiling", ratio_ceiling, "turn the ratio into a pass/fail check");
    inertia->add_option("--threshold-factor", inertia_opts.threshold_factor);
    inertia->add_option("--persistence-factor", inertia_opts.persistence_factor);

    // bt
    double x = 1e4;
    auto* bt = app.add_subcommand("bt", "Brun-Titchmarsh check for one window (x, x + h]");
    bt->add_option("--x", x);
    window.add_options(bt);

    // explicit
    double T = 1000.0, x_step = 50.0;
    std::vector<std::string> components;
    std::optional<double> max_normalized;
    auto* expl = app.add_subcommand("explicit", "residual of the truncated explicit formula on an x grid");
    expl->add_option("--T", T);
    expl->add_option("--x-lo", x_lo);
    expl->add_option("--x-hi", x_hi);
    expl->add_option("--x-step", x_step);
    expl->add_option("--component", components, "zero components (default from the field)");
    expl->add_option("--max-normalized", max_normalized, "turn residuals into pass/fail checks");

    // smoothed
    double eps = 0.5;
    int draws = 0;
    auto* smoothed = app.add_subcommand("smoothed", "weighted sum W(x, h), its zero expansion, and the sandwich");
    smoothed->add_option("--x", x);
    smoothed->add_option("--eps", eps);
    smoothed->add_option("--T", T);
    smoothed->add_option("--component", components);
    smoothed->add_option("--draws", draws, "additional random sandwich checks");
    window.add_options(smoothed);

    // zeros
    std::optional<double> T_single;
    double T_lo = 14.0, T_hi = 0.0, envelope = 4.0;
    int T_points = 100;
    std::optional<int> n_K;
    std::optional<double> d_K;
    auto* zeros = app.add_subcommand("zeros", "zero counts against the N_K(T) main term");
    zeros->add_option("--component", components)->required();
    zeros->add_option("--T", T_single);
    zeros->add_option("--T-lo", T_lo);
    zeros->add_option("--T-hi", T_hi, "default: table completeness height");
    zeros->add_option("--T-points", T_points);
    zeros->add_option("--n-K", n_K);
    zeros->add_option("--d-K", d_K);
    zeros->add_option("--envelope", envelope, "C in |N - predicted| <= C log(d_K T^n_K)");

    for (auto* s : {sieve_cmd, ap_scan, field_scan, meansq, inertia, bt, expl, smoothed, zeros}) {
        add_common(s);
        if (s != zeros) target.add_options(s);
    }
    zeros->add_option("--field", target.field, "field preset supplying n_K and d_K");

    std::vector<std::string> args;
    try {
        args = expand_config(raw_args);
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const Error& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::vector<const char*> argv{"primewin"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::vector<ExperimentReport> rows;
    std::vector<std::string> warnings;
    try {
        if (common.threads > 0) omp_set_num_threads(common.threads);
        if (common.ceiling != default_sieve().config().ceiling)
            configure_default_sieve({common.ceiling, SieveConfig{}.segment_size});
        const Format format = format_from_string(common.format);

        if (sieve_cmd->parsed()) {
            const auto cls = target.cls();
            if (target.is_field()) {
                const auto K = resolve_field(target, common);
                for (const auto& e : prime_ideal_events(K, lo, hi)) {
                    ExperimentReport r;
                    r.experiment = "sieve";
                    r.params = {{"field", K.name()}, {"n", e.position}, {"p", e.prime},
                                {"f", e.residue_degree}, {"m", e.exponent}};
                    r.set_measure(e.weight, std::log(static_cast<double>(e.position)));
                    rows.push_back(std::move(r));
                }
            } else {
                for (const auto& e : prime_power_events(lo, hi, cls)) {
                    ExperimentReport r;
                    r.experiment = "sieve";
                    r.params = {{"q", cls.modulus}, {"a", cls.residue}, {"n", e.position},
                                {"p", e.base}, {"m", e.exponent}};
                    r.set_measure(e.weight, std::log(static_cast<double>(e.position)));
                    rows.push_back(std::move(r));
                }
            }
        } else if (ap_scan->parsed()) {
            rows.push_back(cramer_scan_ap(x_lo, x_hi, c1, target.cls()));
        } else if (field_scan->parsed()) {
            if (!target.is_field()) throw DomainError("field-scan needs --field or --poly");
            rows.push_back(cramer_scan_field(resolve_field(target, common), x_lo, x_hi, c1));
        } else if (meansq->parsed()) {
            const double h = window.at(X);
            if (target.is_field())
                rows.push_back(meansq_ratio_field(resolve_field(target, common), X, h, ratio_ceiling));
            else
                rows.push_back(meansq_ratio_ap(X, h, target.cls(), ratio_ceiling));
        } else if (inertia->parsed()) {
            const double h = window.at(X);
            nlohmann::ordered_json params;
            std::optional<EventCounter> counter;
            if (target.is_field()) {
                const auto K = resolve_field(target, common);
                params = {{"field", K.name()}};
                counter.emplace(field_counter(K, X - h, 2.0 * X + 2.0 * h));
            } else {
                const auto cls = target.cls();
                require_coprime(cls);
                params = {{"q", cls.modulus}, {"a", cls.residue}};
                counter.emplace(progression_counter(default_sieve(), cls, std::max(X - h, 0.0),
                                                    2.0 * X + 2.0 * h));
            }
            params["X"] = X;
            params["h"] = h;
            const auto res = inertia_scan(*counter, X, h, inertia_opts);
            params["threshold"] = res.threshold;
            params["large_window"] = res.large_window;
            ExperimentReport summary;
            summary.experiment = "inertia";
            summary.params = params;
            summary.params["row"] = "summary";
            summary.set_measure(static_cast<double>(res.exceedances.size()), 1.0);
            rows.push_back(summary);
            for (const auto& e : res.exceedances) {
                ExperimentReport r;
                r.experiment = "inertia";
                r.params = params;
                r.params["row"] = "exceedance";
                r.params["begin"] = e.begin;
                r.params["end"] = e.end;
                r.params["peak_x"] = e.peak_x;
                r.params["peak_delta"] = e.peak_value;
                r.params["radius_capped"] = e.radius_capped;
                r.set_measure(e.radius, inertia_opts.persistence_factor * h);
                rows.push_back(std::move(r));
            }
        } else if (bt->parsed()) {
            if (target.is_field()) {
                const auto K = resolve_field(target, common);
                rows.push_back(bt_check_field(K, x, window.at(x)));
            } else {
                rows.push_back(bt_check_ap(x, window.at(x), target.cls()));
            }
        } else if (expl->parsed()) {
            if (target.field.empty() && target.poly.empty()) target.field = "Q";
            const auto K = resolve_field(target, common);
            const auto table = load_zero_set(components.empty() ? default_components(K) : components, common);
            const TruncationSpec spec(table, T, K.degree(), static_cast<double>(K.field_disc()));
            const auto xs = grid(x_lo, x_hi, x_step);
            const auto counter = field_counter(K, 0.0, x_hi + 1.0);
            const auto scan = residual_scan(counter, spec, xs);
            warnings = scan.warnings;
            for (const auto& p : scan.points) {
                ExperimentReport r;
                r.experiment = "explicit";
                r.params = {{"field", K.name()}, {"T", T}, {"x", p.x}, {"psi", p.counter},
                            {"truncated", p.predicted}, {"normalized", p.normalized}};
                const double L = std::log(p.x);
                r.set_measure(std::fabs(p.residual),
                              p.x / T * (K.degree() * L + std::log(static_cast<double>(K.field_disc()))) * L);
                if (max_normalized) r.verdict = r.ratio <= *max_normalized ? Verdict::pass : Verdict::fail;
                rows.push_back(std::move(r));
            }
        } else if (smoothed->parsed()) {
            if (target.field.empty() && target.poly.empty()) target.field = "Q";
            const auto K = resolve_field(target, common);
            const double h = window.at(x);
            const auto table = load_zero_set(components.empty() ? default_components(K) : components, common);
            const TruncationSpec spec(table, T, K.degree(), static_cast<double>(K.field_disc()));
            std::vector<std::array<double, 3>> cases{{x, h, eps}};
            std::mt19937_64 rng(common.seed);
            for (int i = 0; i < draws; ++i) {
                const double xr = std::uniform_real_distribution<double>(100.0, x)(rng);
                const double hr = std::uniform_real_distribution<double>(2.0, 0.4 * xr)(rng);
                const double er = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
                cases.push_back({xr, hr, er});
            }
            double reach = 0.0;
            for (const auto& c : cases) reach = std::max(reach, c[0] + (1.0 + c[2]) * c[1]);
            const auto counter = field_counter(K, 0.0, reach + 1.0);
            const double W = smoothed_sum(x, h, counter);
            ExperimentReport w;
            w.experiment = "smoothed";
            w.params = {{"field", K.name()}, {"x", x}, {"h", h}, {"T", T},
                        {"prediction", smoothed_prediction(x, h, spec)}};
            w.set_measure(W, h);
            w.params["difference"] = W - w.params["prediction"].get<double>();
            rows.push_back(std::move(w));
            for (const auto& [cx, ch, ce] : cases) {
                const auto b = unweighted_sandwich(cx, ch, ce, counter);
                const double direct = counter.psi_between(cx - ch, cx + ch);
                ExperimentReport r;
                r.experiment = "sandwich";
                r.params = {{"field", K.name()}, {"x", cx}, {"h", ch}, {"eps", ce},
                            {"lower", b.lower}, {"upper", b.upper}};
                r.metric = direct;
                r.bound = b.upper;
                r.ratio = b.upper > 0.0 ? direct / b.upper : 0.0;
                r.verdict = (b.lower <= direct && direct <= b.upper) ? Verdict::pass : Verdict::fail;
                rows.push_back(std::move(r));
            }
        } else if (zeros->parsed()) {
            const auto table = load_zero_set(components, common);
            int degree = static_cast<int>(components.size());
            double disc = 1.0;
            if (!target.field.empty()) {
                const auto K = resolve_field(target, common);
                degree = K.degree();
                disc = static_cast<double>(K.field_disc());
            }
            if (n_K) degree = *n_K;
            if (d_K) disc = *d_K;
            std::vector<double> Ts;
            if (T_single) {
                Ts.push_back(*T_single);
            } else {
                const double top = T_hi > 0.0 ? T_hi : table.completeness_height;
                if (T_points < 1) throw DomainError("--T-points must be >= 1");
                for (int i = 0; i < T_points; ++i)
                    Ts.push_back(T_points == 1 ? T_lo : T_lo + (top - T_lo) * i / (T_points - 1));
            }
            for (const double t : Ts) {
                if (!(t >= 2.0)) throw DomainError("T must be >= 2");
                const double counted = static_cast<double>(count_zeros(table, t));
                const double predicted = predicted_count(degree, disc, t);
                const double env = envelope * std::log(disc * std::pow(t, degree));
                ExperimentReport r;
                r.experiment = "zeros";
                r.params = {{"components", table.label}, {"n_K", degree}, {"d_K", disc}, {"T", t},
                            {"counted", counted}, {"predicted", predicted},
                            {"diff", counted - predicted}, {"envelope", env}};
                r.set_measure(std::fabs(counted - predicted), env);
                r.verdict = r.metric <= r.bound ? Verdict::pass : Verdict::fail;
                rows.push_back(std::move(r));
            }
        }

        for (const auto& w : warnings) err << "warning: " << w << "\n";
        if (common.output == "-") {
            emit(out, rows, format);
        } else {
            std::ofstream file(common.output);
            if (!file) throw SinkError("cannot open output " + common.output);
            emit(file, rows, format);
        }
    } catch (const SinkError& e) {
        err << "output error: " << e.what() << "\n";
        return kExitSink;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    }
    return overall(rows) == Verdict::fail ? kExitVerdictFail : kExitOk;
}

}  // namespace primewin
