// report.hpp
//
// ExperimentReport rows and their CSV / JSON-lines serialization.
// CSV header: experiment,param_json,metric,bound,ratio,verdict. Floating
// values are written with 12 significant digits in both formats.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace primewin {

enum class Verdict { pass, fail, report_only };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct ExperimentReport {
    std::string experiment;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    double metric = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    Verdict verdict = Verdict::report_only;

    // Sets metric and bound; ratio = metric / bound (bound must be > 0).
    void set_measure(double metric_value, double bound_value);
};

enum class Format { csv, jsonl };

Format format_from_string(std::string_view s);

// Rounds to 12 significant digits (the serialized precision).
double round12(double v);

void write_header(std::ostream& out, Format format);
void write_row(std::ostream& out, const ExperimentReport& report, Format format);
// Header (CSV only) followed by one row per report; SinkError if the stream
// goes bad.
void emit(std::ostream& out, const std::vector<ExperimentReport>& reports, Format format);

// Parses one JSON-lines row back into a report.
ExperimentReport parse_jsonl_row(const std::string& line);

}  // namespace primewin
