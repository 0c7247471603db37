#include "ecaprog/behavior.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ecaprog/fit.hpp"
#include "ecaprog/rng.hpp"
#include "ecaprog/serialize.hpp"

namespace ecaprog {

CompressionCurve compression_curve(Rule rule, const Configuration& init, std::size_t t_max,
                                   std::size_t t_step, const CompressorId& id) {
    if (t_step < 1) throw std::domain_error("t_step must be >= 1");
    if (t_max < t_step) throw std::domain_error("t_max must be >= t_step");
    const auto diagram = evolve(rule, init, t_max);
    const auto bytes = serialize_diagram(diagram, SerializationMode::ascii);
    const std::size_t row_bytes = init.width() + 1;

    std::vector<std::size_t> prefixes;
    for (std::size_t t = t_step; t <= t_max; t += t_step) prefixes.push_back(row_bytes * (t + 1));
    const auto sizes = compressed_size_bits_prefixes(bytes, prefixes, id);

    CompressionCurve curve{rule, init, {}, id};
    curve.points.reserve(prefixes.size());
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
        curve.points.push_back({t_step * (i + 1), sizes[i], 8 * prefixes[i]});
    }
    return curve;
}

double compression_ratio(const SpaceTimeDiagram& diagram, const CompressorId& id) {
    if (diagram.rows.empty()) throw std::domain_error("compression_ratio of an empty diagram");
    const auto bytes = serialize_diagram(diagram, SerializationMode::ascii);
    return static_cast<double>(compressed_size_bits(bytes, id)) / (8.0 * static_cast<double>(bytes.size()));
}

double asymptotic_ratio(const SpaceTimeDiagram& diagram, const CompressorId& id) {
    if (diagram.steps() < 1) throw std::domain_error("asymptotic_ratio needs at least one step");
    const auto bytes = serialize_diagram(diagram, SerializationMode::ascii);
    const std::size_t row_bytes = diagram.width() + 1;
    const std::span<const std::uint8_t> tail =
        std::span<const std::uint8_t>(bytes).subspan(row_bytes * (diagram.steps() / 2 + 1));
    return static_cast<double>(compressed_size_bits(tail, id)) / (8.0 * static_cast<double>(tail.size()));
}

double asymptotic_slope(const CompressionCurve& curve) {
    const std::size_t n = curve.points.size();
    if (n < 2) throw std::domain_error("asymptotic_slope needs at least two points");
    const std::size_t keep = std::max<std::size_t>(2, (n + 1) / 2);
    std::vector<Point2> pts;
    pts.reserve(keep);
    for (std::size_t i = n - keep; i < n; ++i) {
        pts.push_back({static_cast<double>(curve.points[i].t), static_cast<double>(curve.points[i].c_bits)});
    }
    return fit_line(pts).slope;
}

std::string_view class_name(WolframClass c) {
    switch (c) {
        case WolframClass::class1: return "class1";
        case WolframClass::class2: return "class2";
        case WolframClass::class3: return "class3";
        case WolframClass::class4: return "class4";
    }
    return "unknown";
}

ClassThresholds ClassThresholds::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open thresholds file: " + path);
    const auto j = nlohmann::json::parse(in);
    ClassThresholds th;
    th.r1 = j.at("r1").get<double>();
    th.r2 = j.at("r2").get<double>();
    th.r3 = j.at("r3").get<double>();
    th.v0 = j.at("v0").get<double>();
    return th;
}

WolframClass label_for(double terminal_ratio, double input_variability, const ClassThresholds& th) {
    if (terminal_ratio < th.r1) return WolframClass::class1;
    if (input_variability < th.v0) {
        if (terminal_ratio < th.r2) return WolframClass::class2;
        if (terminal_ratio >= th.r3) return WolframClass::class3;
    }
    return WolframClass::class4;
}

std::vector<Configuration> classify_inputs(const ClassifyParams& params) {
    std::vector<Configuration> inputs;
    inputs.reserve(params.n_inputs);
    for (std::size_t k = 0; k < params.n_inputs; ++k) {
        inputs.push_back(random_config(params.width, params.density, mix_seed(params.seed, k)));
    }
    return inputs;
}

ClassEstimate classify_rule(Rule rule, const ClassifyParams& params, const CompressorId& id,
                            const ClassThresholds& thresholds) {
    if (params.n_inputs < 1 || params.t_max < 1 || params.t_step < 1) {
        throw std::domain_error("classify_rule parameters must be positive");
    }
    std::vector<double> tail_ratios;
    std::vector<double> full_ratios;
    std::vector<double> slopes;
    std::vector<double> terminal_bits;
    for (const auto& input : classify_inputs(params)) {
        const auto curve = compression_curve(rule, input, params.t_max, params.t_step, id);
        const auto diagram = evolve(rule, input, params.t_max);
        tail_ratios.push_back(asymptotic_ratio(diagram, id));
        full_ratios.push_back(compression_ratio(diagram, id));
        slopes.push_back(curve.points.size() >= 2 ? asymptotic_slope(curve) : 0.0);
        terminal_bits.push_back(static_cast<double>(compressed_size_bits(serialize_diagram(diagram), id)));
    }
    ClassEstimate est;
    est.rule = rule;
    est.terminal_ratio = mean(tail_ratios);
    est.cumulative_ratio = mean(full_ratios);
    est.slope_bits_per_step = mean(slopes);
    const double m = mean(terminal_bits);
    est.input_variability = m > 0.0 ? stddev(terminal_bits) / m : 0.0;
    est.label = label_for(est.terminal_ratio, est.input_variability, thresholds);
    return est;
}

}  // namespace ecaprog
