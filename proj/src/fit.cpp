#include "ecaprog/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace ecaprog {

LineFit fit_line(std::span<const Point2> points) {
    if (points.size() < 2) throw std::domain_error("fit_line needs at least two points");
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& p : points) {
        const double dx = p.x - mx;
        const double dy = p.y - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::domain_error("fit_line needs at least two distinct x values");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& p : points) {
        const double r = p.y - (fit.intercept + fit.slope * p.x);
        ss_res += r * r;
    }
    if (ss_res == 0.0 || syy == 0.0) {
        fit.r_squared = 1.0;
    } else {
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return fit;
}

std::vector<double> fit_polynomial(std::span<const Point2> points, int degree) {
    if (degree == 1) {
        const auto f = fit_line(points);
        return {f.intercept, f.slope};
    }
    if (degree != 2) throw std::domain_error("fit_polynomial supports degree 1 or 2");
    if (points.size() < 3) throw std::domain_error("quadratic fit needs at least three points");

    // Normal equations on x shifted by its mean for conditioning.
    double mx = 0.0;
    for (const auto& p : points) mx += p.x;
    mx /= static_cast<double>(points.size());
    std::array<double, 5> s{};  // sums of u^k
    std::array<double, 3> b{};  // sums of y * u^k
    for (const auto& p : points) {
        const double u = p.x - mx;
        double uk = 1.0;
        for (std::size_t k = 0; k < 5; ++k) {
            s[k] += uk;
            if (k < 3) b[k] += p.y * uk;
            uk *= u;
        }
    }
    std::array<std::array<double, 4>, 3> m{{{s[0], s[1], s[2], b[0]},
                                            {s[1], s[2], s[3], b[1]},
                                            {s[2], s[3], s[4], b[2]}}};
    for (std::size_t col = 0; col < 3; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 3; ++r) {
            if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
        }
        if (std::fabs(m[pivot][col]) < 1e-300) throw std::domain_error("quadratic fit is degenerate");
        std::swap(m[col], m[pivot]);
        for (std::size_t r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    const double a0 = m[0][3] / m[0][0];
    const double a1 = m[1][3] / m[1][1];
    const double a2 = m[2][3] / m[2][2];
    // Expand a0 + a1 (x - mx) + a2 (x - mx)^2 back to powers of x.
    return {a0 - a1 * mx + a2 * mx * mx, a1 - 2.0 * a2 * mx, a2};
}

double mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
    if (values.empty()) return 0.0;
    const double m = mean(values);
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(values.size()));
}

}  // namespace ecaprog
