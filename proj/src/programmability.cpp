#include "ecaprog/programmability.hpp"

#include <cmath>
#include <stdexcept>

#include "ecaprog/serialize.hpp"

namespace ecaprog {
namespace {

void check_inputs(std::size_t width, std::size_t n) {
    if (n < 2) throw std::domain_error("need at least two inputs to form differences");
    if (width < 64 && n > (std::uint64_t{1} << width)) throw std::domain_error("n exceeds 2^width");
}

std::vector<std::size_t> sample_times(std::size_t t_max, std::size_t t_step) {
    if (t_step < 1) throw std::domain_error("t_step must be >= 1");
    if (t_max < t_step) throw std::domain_error("t_max must be >= t_step");
    std::vector<std::size_t> times;
    for (std::size_t t = t_step; t <= t_max; t += t_step) times.push_back(t);
    return times;
}

std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

}  // namespace

double ProgrammabilityReport::mean_d() const {
    if (series.points.empty()) return 0.0;
    double s = 0.0;
    for (const auto& p : series.points) s += p.d;
    return s / static_cast<double>(series.points.size());
}

std::vector<std::uint64_t> response_sizes(Rule rule, const Configuration& input,
                                          std::span<const std::size_t> times, const CompressorId& id) {
    if (times.empty()) return {};
    if (times.front() < 1) throw std::domain_error("response needs t >= 1");
    const auto diagram = evolve(rule, input, times.back());
    const auto bytes = serialize_diagram(diagram, SerializationMode::ascii);
    const std::size_t row_bytes = input.width() + 1;
    const auto response = std::span<const std::uint8_t>(bytes).subspan(row_bytes);
    std::vector<std::size_t> prefixes;
    prefixes.reserve(times.size());
    for (auto t : times) prefixes.push_back(row_bytes * t);
    return compressed_size_bits_prefixes(response, prefixes, id);
}

VariabilitySeries variability_series(Rule rule, std::size_t width, std::size_t n, std::size_t t_max,
                                     std::size_t t_step, const CompressorId& id) {
    check_inputs(width, n);
    const auto times = sample_times(t_max, t_step);
    const auto inputs = gray_enumeration(width, n);

    std::vector<std::vector<std::uint64_t>> sizes;
    sizes.reserve(n);
    for (const auto& in : inputs) sizes.push_back(response_sizes(rule, in, times, id));

    VariabilitySeries series{rule, width, n, {}};
    series.points.reserve(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::uint64_t sum = 0;
        for (std::size_t j = 0; j + 1 < n; ++j) sum += abs_diff(sizes[j + 1][k], sizes[j][k]);
        const double d = static_cast<double>(sum) / (static_cast<double>(times[k]) * static_cast<double>(n - 1));
        series.points.push_back({times[k], sum, d});
    }
    return series;
}

ProgrammabilityReport programmability_coefficient(Rule rule, std::size_t width, std::size_t n,
                                                  std::size_t t_max, std::size_t t_step,
                                                  const CompressorId& id, int fit_degree) {
    ProgrammabilityReport report;
    report.series = variability_series(rule, width, n, t_max, t_step, id);
    report.compressor = id;
    report.t_max = t_max;
    report.t_step = t_step;
    report.fit_degree = fit_degree;

    std::vector<Point2> pts;
    pts.reserve(report.series.points.size());
    for (const auto& p : report.series.points) pts.push_back({static_cast<double>(p.t), p.d});
    if (pts.size() < 2) {
        // A single sample has no time derivative.
        report.slope = 0.0;
        report.intercept = pts.empty() ? 0.0 : pts.front().y;
        report.r_squared = 1.0;
        return report;
    }
    const auto line = fit_line(pts);
    report.intercept = line.intercept;
    report.r_squared = line.r_squared;
    if (fit_degree == 1) {
        report.slope = line.slope;
    } else {
        const auto c = fit_polynomial(pts, fit_degree);
        report.slope = c[1] + 2.0 * c[2] * static_cast<double>(t_max);
    }
    return report;
}

std::vector<std::uint64_t> response_lengths(Rule rule, std::size_t width, std::size_t n, std::size_t t,
                                            const CompressorId& id) {
    check_inputs(width, n);
    const std::size_t times[] = {t};
    std::vector<std::uint64_t> out;
    out.reserve(n);
    for (const auto& in : gray_enumeration(width, n)) out.push_back(response_sizes(rule, in, times, id).front());
    return out;
}

double input_variability(Rule rule, std::size_t width, std::size_t n, std::size_t t, const CompressorId& id) {
    const auto lengths = response_lengths(rule, width, n, t, id);
    std::vector<double> v(lengths.begin(), lengths.end());
    const double m = mean(v);
    return m > 0.0 ? stddev(v) / m : 0.0;
}

std::vector<std::size_t> detect_transitions(std::span<const std::uint64_t> lengths, double z) {
    if (lengths.size() < 3) throw std::domain_error("detect_transitions needs at least three values");
    if (!(z > 0.0)) throw std::domain_error("detect_transitions needs z > 0");
    std::vector<double> diffs;
    diffs.reserve(lengths.size() - 1);
    for (std::size_t j = 0; j + 1 < lengths.size(); ++j) {
        diffs.push_back(static_cast<double>(abs_diff(lengths[j + 1], lengths[j])));
    }
    const double sigma = stddev(diffs);
    std::vector<std::size_t> out;
    if (sigma == 0.0) return out;
    for (std::size_t j = 0; j < diffs.size(); ++j) {
        if (diffs[j] > z * sigma) out.push_back(j);
    }
    return out;
}

}  // namespace ecaprog
