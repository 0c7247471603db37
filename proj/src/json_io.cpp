#include "ecaprog/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace ecaprog {
namespace {

// Rounded so that last-ulp differences between libm versions do not leak
// into the output.
double rounded(double v, int digits = 9) {
    const double scale = std::pow(10.0, digits);
    const double r = std::round(v * scale) / scale;
    return r == 0.0 ? 0.0 : r;
}

}  // namespace

std::string format_real(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, rounded(v, digits));
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

Json to_json(const ClassifyParams& p) {
    return Json{{"width", p.width},     {"t_max", p.t_max}, {"t_step", p.t_step},
                {"n_inputs", p.n_inputs}, {"seed", p.seed},   {"density", p.density}};
}

Json to_json(const ClassEstimate& e, const ClassifyParams& params) {
    return Json{{"rule", e.rule.number()},
                {"label", class_name(e.label)},
                {"terminal_ratio", rounded(e.terminal_ratio)},
                {"slope", rounded(e.slope_bits_per_step)},
                {"input_variability", rounded(e.input_variability)},
                {"cumulative_ratio", rounded(e.cumulative_ratio)},
                {"params", to_json(params)}};
}

Json to_json(const ProgrammabilityReport& r) {
    Json points = Json::array();
    for (const auto& p : r.series.points) {
        points.push_back(Json{{"t", p.t}, {"diff_sum_bits", p.diff_sum_bits}, {"d", rounded(p.d)}});
    }
    return Json{{"rule", r.series.rule.number()},
                {"width", r.series.width},
                {"n", r.series.n},
                {"t_max", r.t_max},
                {"t_step", r.t_step},
                {"compressor", r.compressor.name},
                {"fit_degree", r.fit_degree},
                {"points", points},
                {"slope", rounded(r.slope, 12)},
                {"intercept", rounded(r.intercept)},
                {"r2", rounded(r.r_squared)},
                {"mean_d", rounded(r.mean_d())}};
}

Json to_json(const BdmResult& r) {
    return Json{{"bdm", rounded(r.value)},
                {"padded", r.padded},
                {"tiles", r.tiles},
                {"distinct_blocks", r.distinct_blocks},
                {"fallback_blocks", r.fallback_blocks}};
}

Json to_json(const BehaviorAssessment& a) {
    Json streams = Json::array();
    for (const auto& s : a.stream_names) streams.push_back(s);
    return Json{{"agent", agent_kind_name(a.agent)},
                {"variability", rounded(a.variability)},
                {"controllability", rounded(a.controllability)},
                {"label", behavior_label_name(a.label)},
                {"per_stream_c_bits", a.per_stream_c_bits},
                {"streams", streams},
                {"raw_ncd", rounded(a.raw_ncd)},
                {"ncd_floor", rounded(a.ncd_floor)},
                {"ncd_ceiling", rounded(a.ncd_ceiling)}};
}

std::string curve_csv_header() { return "rule,width,seed,t,c_bits,u_bits,ratio\n"; }

std::string curve_csv_rows(const CompressionCurve& curve, std::uint64_t seed) {
    std::string out;
    for (const auto& p : curve.points) {
        out += std::to_string(curve.rule.number()) + ',' + std::to_string(curve.input.width()) + ',' +
               std::to_string(seed) + ',' + std::to_string(p.t) + ',' + std::to_string(p.c_bits) + ',' +
               std::to_string(p.u_bits) + ',' +
               format_real(static_cast<double>(p.c_bits) / static_cast<double>(p.u_bits)) + '\n';
    }
    return out;
}

std::string scan_csv_header() { return "rule,label,terminal_ratio,slope,input_variability,cumulative_ratio\n"; }

std::string scan_csv_row(const ClassEstimate& e) {
    return std::to_string(e.rule.number()) + ',' + std::string(class_name(e.label)) + ',' +
           format_real(e.terminal_ratio) + ',' + format_real(e.slope_bits_per_step) + ',' +
           format_real(e.input_variability) + ',' + format_real(e.cumulative_ratio) + '\n';
}

std::string variability_csv(const VariabilitySeries& series) {
    std::string out = "t,diff_sum_bits,d\n";
    for (const auto& p : series.points) {
        out += std::to_string(p.t) + ',' + std::to_string(p.diff_sum_bits) + ',' + format_real(p.d) + '\n';
    }
    return out;
}

}  // namespace ecaprog
