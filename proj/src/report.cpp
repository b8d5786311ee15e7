#include "primewin/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "primewin/errors.hpp"

namespace primewin {

namespace {

using ojson = nlohmann::ordered_json;

std::string format12(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// JSON cannot carry non-finite numbers; they travel as strings.
ojson json_number(double v) {
    if (!std::isfinite(v)) return format12(v);
    return round12(v);
}

ojson rounded(const ojson& j) {
    if (j.is_number_float()) return json_number(j.get<double>());
    if (j.is_object()) {
        ojson out = ojson::object();
        for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
        return out;
    }
    if (j.is_array()) {
        ojson out = ojson::array();
        for (const auto& v : j) out.push_back(rounded(v));
        return out;
    }
    return j;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

double json_to_double(const ojson& j) {
    if (j.is_string()) return std::strtod(j.get<std::string>().c_str(), nullptr);
    return j.get<double>();
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::report_only: return "report-only";
    }
    return "report-only";
}

Verdict verdict_from_string(std::string_view s) {
    if (s == "pass") return Verdict::pass;
    if (s == "fail") return Verdict::fail;
    if (s == "report-only") return Verdict::report_only;
    throw DataError("unknown verdict '" + std::string(s) + "'");
}

void ExperimentReport::set_measure(double metric_value, double bound_value) {
    if (!(bound_value > 0.0)) throw DomainError("report bound must be > 0");
    metric = metric_value;
    bound = bound_value;
    ratio = metric_value / bound_value;
}

Format format_from_string(std::string_view s) {
    if (s == "csv") return Format::csv;
    if (s == "jsonl" || s == "json") return Format::jsonl;
    throw DomainError("format must be csv or jsonl");
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format12(v).c_str(), nullptr);
}

void write_header(std::ostream& out, Format format) {
    if (format == Format::csv) out << "experiment,param_json,metric,bound,ratio,verdict\n";
}

void write_row(std::ostream& out, const ExperimentReport& r, Format format) {
    if (format == Format::csv) {
        out << r.experiment << ',' << csv_quote(rounded(r.params).dump()) << ','
            << format12(r.metric) << ',' << format12(r.bound) << ',' << format12(r.ratio) << ','
            << to_string(r.verdict) << '\n';
    } else {
        ojson row = ojson::object();
        row["experiment"] = r.experiment;
        row["params"] = rounded(r.params);
        row["metric"] = json_number(r.metric);
        row["bound"] = json_number(r.bound);
        row["ratio"] = json_number(r.ratio);
        row["verdict"] = std::string(to_string(r.verdict));
        out << row.dump() << '\n';
    }
}

void emit(std::ostream& out, const std::vector<ExperimentReport>& reports, Format format) {
    write_header(out, format);
    for (const auto& r : reports) write_row(out, r, format);
    out.flush();
    if (!out) throw SinkError("report sink write failed");
}

ExperimentReport parse_jsonl_row(const std::string& line) {
    const ojson j = ojson::parse(line);
    ExperimentReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.params = j.at("params");
    r.metric = json_to_double(j.at("metric"));
    r.bound = json_to_double(j.at("bound"));
    r.ratio = json_to_double(j.at("ratio"));
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    return r;
}

}  // namespace primewin
