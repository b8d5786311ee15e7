// counter.hpp
//
// EventCounter: a psi-type step function frozen over a coverage interval
// (lo, hi]. Every experiment (Delta, mean squares, window scans, the
// explicit-formula residuals) reads counters through this one type, so a
// progression, a number field and a synthetic fixture are interchangeable.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "primewin/sieve.hpp"

namespace primewin {

class NumberField;

struct CounterEvent {
    std::int64_t position;
    double weight;
    bool prime;  // counted by the pi-type counter (exponent 1)
};

class EventCounter {
public:
    // density: expected weight per unit length (1/phi(q) for a progression,
    // 1 for a number field). Events must lie in (lo, hi].
    EventCounter(std::string label, double lo, double hi, double density,
                 std::vector<CounterEvent> events);

    const std::string& label() const { return label_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double density() const { return density_; }
    std::size_t size() const { return positions_.size(); }
    std::span<const std::int64_t> positions() const { return positions_; }
    std::span<const double> weights() const { return weights_; }
    std::span<const std::int64_t> prime_positions() const { return prime_positions_; }

    // Number of events at positions <= x.
    std::size_t rank(double x) const;
    // Sum of weights over lo < n <= x.
    double psi(double x) const;
    // Sum of weights over a < n <= b, with a <= b both inside the coverage.
    double psi_between(double a, double b) const;
    std::int64_t pi_between(double a, double b) const;
    // psi(x + h) - psi(x) - h * density.
    double delta(double x, double h) const;

    // Throws DomainError unless [a, b] lies inside [lo, hi].
    void require(double a, double b) const;
    // True if x is within tol of an event position.
    bool near_event(double x, double tol) const;
    // Prefix sum helpers on indices; value = sum of the first i weights.
    double prefix(std::size_t i) const { return prefix_[i]; }

private:
    std::string label_;
    double lo_, hi_, density_;
    std::vector<std::int64_t> positions_;
    std::vector<double> weights_;
    std::vector<double> prefix_;
    std::vector<std::int64_t> prime_positions_;
};

EventCounter progression_counter(const PrimeSieve& sieve, ResidueClass cls, double lo, double hi);
EventCounter field_counter(const NumberField& field, double lo, double hi);

}  // namespace primewin
