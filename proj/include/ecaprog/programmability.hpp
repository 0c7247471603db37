#pragma once
// Programmability coefficient: how compressed behaviour responds to
// single-bit changes of the input, and how that response grows with time.
//
// For Gray-ordered inputs i_1..i_n and sample time t',
//   d(t') = sum_{j<n} |C(M_t'(i_{j+1})) - C(M_t'(i_j))| / (t' (n - 1))
// where C(M_t'(i)) is the compressed size in bits of the response rows
// 1..t' (ascii). The coefficient is the slope of a least-squares fit of d
// against t'.

#include <cstdint>
#include <span>
#include <vector>

#include "ecaprog/compressor.hpp"
#include "ecaprog/eca.hpp"
#include "ecaprog/fit.hpp"

namespace ecaprog {

struct VariabilityPoint {
    std::size_t t = 0;
    std::uint64_t diff_sum_bits = 0;  // d * t * (n - 1), exact
    double d = 0.0;
};

struct VariabilitySeries {
    Rule rule;
    std::size_t width = 0;
    std::size_t n = 0;
    std::vector<VariabilityPoint> points;
};

struct ProgrammabilityReport {
    VariabilitySeries series;
    double slope = 0.0;  // the coefficient
    double intercept = 0.0;
    double r_squared = 1.0;
    CompressorId compressor;
    std::size_t t_max = 0;
    std::size_t t_step = 0;
    int fit_degree = 1;

    double mean_d() const;
};

/// C(M_t(i)) for every t in times (ascending, >= 1), one evolution.
std::vector<std::uint64_t> response_sizes(Rule rule, const Configuration& input,
                                          std::span<const std::size_t> times, const CompressorId& id);

VariabilitySeries variability_series(Rule rule, std::size_t width, std::size_t n, std::size_t t_max,
                                     std::size_t t_step, const CompressorId& id);

/// fit_degree 1 reports the line slope. Degree 2 reports the fitted
/// derivative at t_max; intercept and r_squared then describe the linear fit.
ProgrammabilityReport programmability_coefficient(Rule rule, std::size_t width, std::size_t n,
                                                  std::size_t t_max, std::size_t t_step,
                                                  const CompressorId& id, int fit_degree = 1);

/// C(M_t(i_j)) for the first n Gray inputs.
std::vector<std::uint64_t> response_lengths(Rule rule, std::size_t width, std::size_t n, std::size_t t,
                                            const CompressorId& id);

/// stddev / mean of response_lengths; 0 when the mean is 0.
double input_variability(Rule rule, std::size_t width, std::size_t n, std::size_t t, const CompressorId& id);

/// Indices j with |lengths[j+1] - lengths[j]| > z * sigma, sigma being the
/// population standard deviation of all consecutive absolute differences.
/// Empty when sigma == 0.
std::vector<std::size_t> detect_transitions(std::span<const std::uint64_t> lengths, double z);

}  // namespace ecaprog
