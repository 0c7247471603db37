#pragma once
// JSON and CSV renderings of analysis results. Key order is fixed so the
// output bytes are stable.

#include <string>

#include <json.hpp>

#include "ecaprog/behavior.hpp"
#include "ecaprog/envelope.hpp"
#include "ecaprog/lattice.hpp"
#include "ecaprog/programmability.hpp"

namespace ecaprog {

using Json = nlohmann::ordered_json;

Json to_json(const ClassifyParams& params);
Json to_json(const ClassEstimate& estimate, const ClassifyParams& params);
Json to_json(const ProgrammabilityReport& report);
Json to_json(const BdmResult& result);
Json to_json(const BehaviorAssessment& assessment);

/// rule,width,seed,t,c_bits,u_bits,ratio
std::string curve_csv_header();
std::string curve_csv_rows(const CompressionCurve& curve, std::uint64_t seed);

/// rule,label,terminal_ratio,slope,input_variability,cumulative_ratio
std::string scan_csv_header();
std::string scan_csv_row(const ClassEstimate& estimate);

/// t,diff_sum_bits,d
std::string variability_csv(const VariabilitySeries& series);

/// Fixed-point decimal with enough digits to be stable across platforms.
std::string format_real(double v, int digits = 9);

}  // namespace ecaprog
