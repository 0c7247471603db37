#pragma once
// Compression curves of ECA evolutions and Wolfram-class estimation.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ecaprog/compressor.hpp"
#include "ecaprog/eca.hpp"

namespace ecaprog {

struct CurvePoint {
    std::size_t t = 0;
    std::uint64_t c_bits = 0;  // compressed ascii diagram of rows 0..t
    std::uint64_t u_bits = 0;  // uncompressed ascii size, 8 (width+1)(t+1)
};

struct CompressionCurve {
    Rule rule;
    Configuration input;
    std::vector<CurvePoint> points;
    CompressorId compressor;
};

/// Points at t = t_step, 2 t_step, ..., <= t_max. Evolves once and sizes each
/// ascii prefix, which equals re-evolving from row 0 for every t.
CompressionCurve compression_curve(Rule rule, const Configuration& init, std::size_t t_max,
                                   std::size_t t_step, const CompressorId& id);

/// Compressed bits over uncompressed ascii bits. Exceeds 1 on tiny or
/// incompressible diagrams because of the stream header.
double compression_ratio(const SpaceTimeDiagram& diagram, const CompressorId& id);

/// Ratio over the latter half of the diagram (rows floor(steps/2)+1..steps).
/// Needs steps >= 1.
double asymptotic_ratio(const SpaceTimeDiagram& diagram, const CompressorId& id);

/// Least-squares slope of c_bits against t over the latter half of the curve
/// (the last max(2, ceil(n/2)) points), in bits per step.
double asymptotic_slope(const CompressionCurve& curve);

enum class WolframClass { class1 = 1, class2 = 2, class3 = 3, class4 = 4 };

std::string_view class_name(WolframClass c);

/// Decision-tree cut points. Defaults are the calibrated values also shipped
/// in config/class_thresholds.json.
struct ClassThresholds {
    double r1 = 0.017;
    double r2 = 0.145;
    double r3 = 0.24;
    double v0 = 0.15;

    static ClassThresholds from_json_file(const std::string& path);
};

struct ClassifyParams {
    std::size_t width = 100;
    std::size_t t_max = 100;
    std::size_t t_step = 10;
    std::size_t n_inputs = 10;
    std::uint64_t seed = 1;
    double density = 0.5;
};

struct ClassEstimate {
    Rule rule;
    WolframClass label = WolframClass::class1;
    double terminal_ratio = 0.0;     // mean asymptotic_ratio at t_max
    double slope_bits_per_step = 0.0;
    double input_variability = 0.0;  // stddev / mean of terminal c_bits
    double cumulative_ratio = 0.0;   // mean compression_ratio at t_max, informational
};

/// ratio < r1: class1; ratio < r2 and var < v0: class2; ratio >= r3 and
/// var < v0: class3; anything else: class4.
WolframClass label_for(double terminal_ratio, double input_variability, const ClassThresholds& th);

/// Input k is random_config(width, density, mix_seed(seed, k)).
std::vector<Configuration> classify_inputs(const ClassifyParams& params);

ClassEstimate classify_rule(Rule rule, const ClassifyParams& params, const CompressorId& id,
                            const ClassThresholds& thresholds = {});

}  // namespace ecaprog
