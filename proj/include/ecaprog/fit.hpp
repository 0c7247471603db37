#pragma once
// Least-squares fitting shared by the curve and programmability analyses.

#include <span>
#include <vector>

namespace ecaprog {

struct Point2 {
    double x;
    double y;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;  // 1 when every residual is zero
};

/// Ordinary least squares on centered sums. Throws std::domain_error when
/// fewer than two distinct x values are given.
LineFit fit_line(std::span<const Point2> points);

/// Least-squares polynomial coefficients, lowest degree first. degree in {1, 2}.
std::vector<double> fit_polynomial(std::span<const Point2> points, int degree);

double mean(std::span<const double> values);

/// Population standard deviation (divides by N).
double stddev(std::span<const double> values);

}  // namespace ecaprog
