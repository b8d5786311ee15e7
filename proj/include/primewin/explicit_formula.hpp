// explicit_formula.hpp
//
// Truncated explicit formula for psi / psi_K over a zero table (critical-line
// zeros rho = 1/2 + i gamma, conjugates paired), the triangle-weighted sum
// W(x, h) with its zero expansion, and the epsilon-sandwich that brackets the
// unweighted sum psi_K(x + h) - psi_K(x - h) between two W values.

#pragma once

#include <string>
#include <vector>

#include "primewin/counter.hpp"
#include "primewin/zero_data.hpp"

namespace primewin {

class TruncationSpec {
public:
    // Throws DomainError if height < 2 or height exceeds the table's
    // completeness height.
    TruncationSpec(const ZeroTable& zeros, double height, int degree = 1, double field_disc = 1.0);

    double height() const { return height_; }
    const ZeroTable& zeros() const { return *zeros_; }
    int degree() const { return degree_; }
    double field_disc() const { return field_disc_; }
    // Ordinates gamma with 0 < gamma <= height.
    std::vector<double> active_ordinates() const;

private:
    const ZeroTable* zeros_;
    double height_;
    int degree_;
    double field_disc_;
};

// x - sum_{|gamma| <= T} x^rho / rho; for degree 1 the constant and
// trivial-zero terms -log(2 pi) - log(1 - x^-2)/2 are included.
double truncated_psi(double x, const TruncationSpec& spec);
// d/dx of truncated_psi.
double truncated_psi_derivative(double x, const TruncationSpec& spec);

struct ResidualPoint {
    double x;          // after any nudge off an event position
    double counter;    // psi(x) or psi_K(x)
    double predicted;  // truncated_psi(x)
    double residual;   // counter - predicted
    double normalized; // residual * T / (x (n log x + log d) log x)
};

struct ResidualScan {
    std::vector<ResidualPoint> points;
    double max_abs_residual = 0.0;
    double max_abs_normalized = 0.0;
    std::vector<std::string> warnings;
};

// x values within 1e-6 of an event position are moved to x + 1e-6 and a
// warning is recorded.
ResidualScan residual_scan(const EventCounter& counter, const TruncationSpec& spec,
                           const std::vector<double>& xs);

// max(1 - |x - n| / h, 0)
double triangle_weight(double n, double x, double h);

// W(x, h) = sum over x - h < n < x + h of weight(n) * triangle_weight(n, x, h).
double smoothed_sum(double x, double h, const EventCounter& counter);

// h - (1/h) sum_{|gamma| <= T} [(x+h)^{rho+1} - 2 x^{rho+1} + (x-h)^{rho+1}] / (rho (rho+1))
double smoothed_prediction(double x, double h, const TruncationSpec& spec);

struct SandwichBounds {
    double lower;
    double upper;
};

// lower = -(1/eps) [(1-eps) W(x,(1-eps)h) - W(x,h)]
// upper =  (1/eps) [(1+eps) W(x,(1+eps)h) - W(x,h)]
SandwichBounds unweighted_sandwich(double x, double h, double eps, const EventCounter& counter);

}  // namespace primewin
