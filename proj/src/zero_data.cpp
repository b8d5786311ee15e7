#include "primewin/zero_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "primewin/errors.hpp"

namespace primewin {

namespace {

constexpr double kMinOrdinate = 1e-6;

}  // namespace

ZeroTable load_zeros(std::istream& source, double completeness_height, std::string label) {
    if (!(completeness_height >= 0.0)) throw DomainError("completeness height must be >= 0");
    ZeroTable table{{}, completeness_height, std::move(label)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(source, line)) {
        ++lineno;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        std::istringstream ss(line.substr(b));
        double v;
        std::string rest;
        if (!(ss >> v) || (ss >> rest)) throw ParseError("malformed ordinate", lineno);
        if (!(v >= kMinOrdinate)) throw ParseError("ordinate must be positive", lineno);
        if (!table.ordinates.empty() && v < table.ordinates.back())
            throw ParseError("ordinates must be nondecreasing", lineno);
        table.ordinates.push_back(v);
    }
    return table;
}

ZeroTable load_zeros_file(const std::string& path, double completeness_height, std::string label) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open zero file " + path);
    return load_zeros(in, completeness_height, std::move(label));
}

ZeroTable combine(const std::vector<ZeroTable>& tables) {
    if (tables.empty()) throw DomainError("combine needs at least one table");
    ZeroTable out;
    out.completeness_height = tables.front().completeness_height;
    for (const auto& t : tables) {
        out.completeness_height = std::min(out.completeness_height, t.completeness_height);
        const auto mid = out.ordinates.insert(out.ordinates.end(), t.ordinates.begin(), t.ordinates.end());
        std::inplace_merge(out.ordinates.begin(), mid, out.ordinates.end());
        out.label += (out.label.empty() ? "" : "*") + t.label;
    }
    return out;
}

long count_zeros(const ZeroTable& table, double T) {
    if (T > table.completeness_height)
        throw DomainError("T = " + std::to_string(T) + " exceeds completeness height of " +
                          table.label);
    const auto it = std::upper_bound(table.ordinates.begin(), table.ordinates.end(), T);
    return 2 * static_cast<long>(it - table.ordinates.begin());
}

double predicted_count(int degree, double field_disc, double T) {
    using std::numbers::pi;
    const double n = degree;
    return n / pi * T * std::log(T) +
           T / pi * (std::log(field_disc) - n * std::log(2.0 * pi * std::numbers::e));
}

std::vector<ManifestEntry> load_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw DataError("cannot open zero manifest " + manifest_path);
    const auto dir = std::filesystem::path(manifest_path).parent_path();
    std::vector<ManifestEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        std::istringstream ss(line);
        ManifestEntry e;
        if (!(ss >> e.label >> e.path >> e.completeness_height))
            throw ParseError("expected `label path height`", lineno);
        if (std::filesystem::path(e.path).is_relative()) e.path = (dir / e.path).string();
        out.push_back(std::move(e));
    }
    return out;
}

ZeroTable load_component(const std::vector<ManifestEntry>& manifest, const std::string& label) {
    for (const auto& e : manifest)
        if (e.label == label) return load_zeros_file(e.path, e.completeness_height, e.label);
    throw DataError("zero component '" + label + "' not in manifest");
}

std::string default_manifest_path() {
    if (const char* env = std::getenv("PRIMEWIN_ZERO_MANIFEST"); env && *env) return env;
    return std::string(PRIMEWIN_DATA_DIR) + "/zeros/manifest.txt";
}

}  // namespace primewin
