#pragma once
// Stimulus-driven arm agents, their 6-D phase-space projections and the
// compression-based variability / controllability assessment.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecaprog/compressor.hpp"
#include "ecaprog/lattice.hpp"

namespace ecaprog {

enum class AgentKind { periodic, random, reactive };
enum class StimulusKind { constant, periodic, random };

std::string_view agent_kind_name(AgentKind k);
AgentKind agent_kind_from_name(std::string_view name);  // throws std::invalid_argument
std::string_view stimulus_kind_name(StimulusKind k);

/// A three-joint arm: base yaw, shoulder pitch, elbow pitch. segments[0] is
/// the base column height, segments[1..2] the two links.
struct AgentSpec {
    AgentKind kind = AgentKind::reactive;
    std::size_t period = 8;      // periodic
    std::uint64_t seed = 7;      // random
    double gain = 0.1;           // radians per step per unit (random, reactive)
    std::array<double, 3> segments{4.0, 3.0, 2.0};
};

/// The calibrated reference agent of each kind.
AgentSpec reference_agent(AgentKind kind);

using Stimulus = std::array<int, 3>;

struct StimulusStream {
    StimulusKind kind = StimulusKind::constant;
    std::uint64_t seed = 0;
    std::size_t period = 0;  // periodic only
    std::vector<Stimulus> values;
};

/// Components lie in [-2, 2]. constant: one seeded vector with nonzero
/// components. periodic: a seeded half-cycle followed by its negation, so the
/// cycle sums to zero (period must be even and >= 2). random: i.i.d. uniform.
StimulusStream make_stimulus(StimulusKind kind, std::uint64_t seed, std::size_t length, std::size_t period = 16);

struct Point3 {
    int x = 0;
    int y = 0;
    int z = 0;
    friend bool operator==(const Point3&, const Point3&) = default;
};

/// Quantized coordinates: the envelope radius maps to kEnvelopeScale and each
/// coordinate is truncated toward zero, so |position| <= kEnvelopeScale.
inline constexpr int kEnvelopeScale = 1000;

struct Trajectory {
    std::size_t steps = 0;
    std::vector<Point3> positions;
    std::vector<std::array<int, 3>> joints;  // milliradians after each step
    StimulusStream stimuli;
};

/// Throws std::domain_error when steps < 1 or the stream is shorter than steps.
Trajectory simulate_agent(const AgentSpec& spec, const StimulusStream& stimuli, std::size_t steps);

using PhaseTuple = std::array<int, 6>;

struct PhaseSpaceSeries {
    std::vector<PhaseTuple> points;  // (x, y, x, z, y, z) per step
};

PhaseSpaceSeries project(const Trajectory& trajectory);

/// Positions from the XY and XZ planes.
std::vector<Point3> recover_positions(const PhaseSpaceSeries& series);

/// One grid x grid lattice per plane (XY, XZ, YZ); rows follow the second
/// coordinate. Throws std::domain_error when grid < 2.
std::array<Lattice, 3> rasterize(const PhaseSpaceSeries& series, std::size_t grid);

/// "x,y,x,z,y,z\n" per step, decimal.
std::string phase_space_text(const PhaseSpaceSeries& series);

/// "step,x,y,z,s1,s2,s3" header plus one row per step.
std::string trajectory_csv(const Trajectory& trajectory);

struct BehavioralComplexity {
    std::uint64_t c_bits = 0;
    double bdm3 = 0.0;
};

inline constexpr std::size_t kDefaultRasterGrid = 64;

BehavioralComplexity behavioral_complexity(const Trajectory& trajectory, const CompressorId& id,
                                           const CodingTable& table, std::size_t grid = kDefaultRasterGrid);

/// (C(ab) - min(C(a), C(b))) / max(C(a), C(b)); throws on empty input.
double ncd(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, const CompressorId& id);

/// Per step the signs of the three components as '-', '0', '+', then '\n'.
std::string stimulus_signs(const StimulusStream& stream, std::size_t steps);
/// Same alphabet for the joint increments of each step.
std::string movement_signs(const Trajectory& trajectory);

enum class BehaviorLabel { inert, random_uncontrollable, enveloped, programmable };

std::string_view behavior_label_name(BehaviorLabel l);

struct BehaviorThresholds {
    double variability_floor = 0.15;
    double controllability_floor = 0.5;
    double diagonal_band = 0.35;
};

/// Low variability: enveloped if controllability reaches the floor, else
/// inert. High variability: random-uncontrollable below the controllability
/// floor; programmable within the diagonal band; otherwise whichever axis
/// dominates (variability -> random-uncontrollable, controllability ->
/// enveloped).
BehaviorLabel label_behavior(double variability, double controllability, const BehaviorThresholds& th = {});

struct BehaviorAssessment {
    AgentKind agent = AgentKind::reactive;
    double variability = 0.0;
    double controllability = 0.0;
    BehaviorLabel label = BehaviorLabel::inert;
    std::vector<std::string> stream_names;
    std::vector<std::uint64_t> per_stream_c_bits;
    double raw_ncd = 0.0;  // stimulus vs movement under the random stream
    double ncd_floor = 0.0;
    double ncd_ceiling = 0.0;
};

inline constexpr std::array<std::uint64_t, 3> kDefaultAssessSeeds{11, 12, 13};

/// seeds[0] drives a constant stream, seeds[1] a periodic one and every
/// further seed a random one (at least three seeds). variability is the mean
/// pairwise ncd between the phase-space texts of the runs (0 for identical
/// runs). controllability is 1 - (ncd(S, M) - ncd(S, S)) / (ncd(S, S') -
/// ncd(S, S)) clamped to [0, 1], where S and M are the stimulus and movement
/// sign strings of the first random run and S' an independent random stream.
BehaviorAssessment assess(const AgentSpec& spec, std::size_t steps, std::span<const std::uint64_t> seeds,
                          const CompressorId& id, const BehaviorThresholds& th = {});

/// Constant, then periodic streams with period 64 * 2^k, then random.
/// levels >= 1; a single level is the constant stream.
std::vector<StimulusStream> entropy_ordered_environments(std::size_t levels, std::uint64_t seed, std::size_t length);

/// behavioral_complexity c_bits per environment, in input order.
std::vector<std::uint64_t> environment_sweep(const AgentSpec& spec, std::span<const StimulusStream> environments,
                                             std::size_t steps, const CompressorId& id = builtin_lzss());

}  // namespace ecaprog
