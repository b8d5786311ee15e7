// zero_data.hpp
//
// Tables of nontrivial-zero ordinates gamma > 0 (zeros 1/2 + i gamma; only
// the critical line is modeled). A table is certified complete up to its
// completeness height; counting queries above it are refused.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace primewin {

struct ZeroTable {
    std::vector<double> ordinates;  // ascending, each zero once per multiplicity
    double completeness_height = 0.0;
    std::string label;
};

// One positive decimal ordinate per line, nondecreasing; blank lines and
// '#' comment lines are skipped. ParseError carries the line number.
ZeroTable load_zeros(std::istream& source, double completeness_height, std::string label);
ZeroTable load_zeros_file(const std::string& path, double completeness_height, std::string label);

// Multiset union; the height is the minimum of the inputs.
ZeroTable combine(const std::vector<ZeroTable>& tables);

// N(T): zeros with |gamma| <= T, both signs counted.
long count_zeros(const ZeroTable& table, double T);

// (n/pi) T log T + (T/pi) log(d / (2 pi e)^n).
double predicted_count(int degree, double field_disc, double T);

// Manifest lines: `label  path  completeness_height`; relative paths resolve
// against the manifest's directory.
struct ManifestEntry {
    std::string label;
    std::string path;
    double completeness_height;
};

std::vector<ManifestEntry> load_manifest(const std::string& manifest_path);
ZeroTable load_component(const std::vector<ManifestEntry>& manifest, const std::string& label);

// Default manifest: $PRIMEWIN_ZERO_MANIFEST, else the shipped data directory.
std::string default_manifest_path();

}  // namespace primewin
