#include "primewin/counter.hpp"

#include <algorithm>
#include <cmath>

#include "primewin/errors.hpp"
#include "primewin/number_field.hpp"
#include "primewin/short_interval.hpp"
#include "primewin/summation.hpp"

namespace primewin {

EventCounter::EventCounter(std::string label, double lo, double hi, double density,
                           std::vector<CounterEvent> events)
    : label_(std::move(label)), lo_(lo), hi_(hi), density_(density) {
    if (!(hi >= lo)) throw DomainError("counter coverage must satisfy lo <= hi");
    std::stable_sort(events.begin(), events.end(),
                     [](const CounterEvent& a, const CounterEvent& b) {
                         return a.position < b.position;
                     });
    positions_.reserve(events.size());
    weights_.reserve(events.size());
    prefix_.reserve(events.size() + 1);
    prefix_.push_back(0.0);
    CompensatedSum sum;
    for (const auto& e : events) {
        if (static_cast<double>(e.position) <= lo || static_cast<double>(e.position) > hi)
            throw DomainError("counter event outside coverage");
        positions_.push_back(e.position);
        weights_.push_back(e.weight);
        sum += e.weight;
        prefix_.push_back(sum.value());
        if (e.prime) prime_positions_.push_back(e.position);
    }
}

std::size_t EventCounter::rank(double x) const {
    // positions are integers: n <= x  <=>  n <= floor(x)
    const double fx = std::floor(x);
    if (fx >= 9.0e18) return positions_.size();
    if (fx < -9.0e18) return 0;
    const auto key = static_cast<std::int64_t>(fx);
    return static_cast<std::size_t>(
        std::upper_bound(positions_.begin(), positions_.end(), key) - positions_.begin());
}

double EventCounter::psi(double x) const { return prefix_[rank(x)]; }

double EventCounter::psi_between(double a, double b) const {
    return prefix_[rank(b)] - prefix_[rank(a)];
}

std::int64_t EventCounter::pi_between(double a, double b) const {
    auto key = [](double x) { return static_cast<std::int64_t>(std::floor(x)); };
    const auto hi = std::upper_bound(prime_positions_.begin(), prime_positions_.end(), key(b));
    const auto lo = std::upper_bound(prime_positions_.begin(), prime_positions_.end(), key(a));
    return hi - lo;
}

double EventCounter::delta(double x, double h) const {
    return psi_between(x, x + h) - h * density_;
}

void EventCounter::require(double a, double b) const {
    if (a < lo_ || b > hi_)
        throw DomainError("range [" + std::to_string(a) + ", " + std::to_string(b) +
                          "] outside counter coverage of " + label_);
}

bool EventCounter::near_event(double x, double tol) const {
    const double r = std::round(x);
    if (std::fabs(x - r) > tol) return false;
    return std::binary_search(positions_.begin(), positions_.end(),
                              static_cast<std::int64_t>(r));
}

EventCounter progression_counter(const PrimeSieve& sieve, ResidueClass cls, double lo,
                                 double hi) {
    cls.validate();
    std::vector<CounterEvent> events;
    for (const auto& e : sieve.prime_power_events(lo, hi, cls))
        events.push_back({e.position, e.weight, e.exponent == 1});
    const std::string label =
        "psi(x;" + std::to_string(cls.modulus) + "," + std::to_string(cls.residue) + ")";
    return EventCounter(label, std::max(lo, 0.0), hi,
                        1.0 / static_cast<double>(euler_phi(cls.modulus)), std::move(events));
}

EventCounter field_counter(const NumberField& field, double lo, double hi) {
    std::vector<CounterEvent> events;
    for (const auto& e : prime_ideal_events(field, lo, hi))
        events.push_back({e.position, e.weight, e.exponent == 1});
    return EventCounter("psi_K[" + field.name() + "]", std::max(lo, 0.0), hi, 1.0,
                        std::move(events));
}

}  // namespace primewin
