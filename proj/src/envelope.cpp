#include "ecaprog/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ecaprog/rng.hpp"

namespace ecaprog {
namespace {

// Joint limits in radians: base yaw, shoulder pitch, elbow pitch.
constexpr std::array<double, 3> kJointLimit{3.0, 1.4, 2.0};

// Periodic gait: amplitude and phase per joint.
constexpr std::array<double, 3> kGaitAmplitude{1.0, 0.6, 0.8};
constexpr std::array<double, 3> kGaitPhase{0.0, 1.0, 2.0};

using Angles = std::array<double, 3>;

Point3 forward_kinematics(const Angles& q, const std::array<double, 3>& seg) {
    const double reach = seg[1] * std::cos(q[1]) + seg[2] * std::cos(q[1] + q[2]);
    const double height = seg[0] + seg[1] * std::sin(q[1]) + seg[2] * std::sin(q[1] + q[2]);
    const double radius = seg[0] + seg[1] + seg[2];
    const double scale = kEnvelopeScale / radius;
    // Truncation never increases a coordinate's magnitude, keeping the
    // quantized point inside the scaled envelope.
    return Point3{static_cast<int>(std::trunc(reach * std::cos(q[0]) * scale)),
                  static_cast<int>(std::trunc(reach * std::sin(q[0]) * scale)),
                  static_cast<int>(std::trunc(height * scale))};
}

std::array<int, 3> to_milliradians(const Angles& q) {
    return {static_cast<int>(std::lround(q[0] * 1000.0)), static_cast<int>(std::lround(q[1] * 1000.0)),
            static_cast<int>(std::lround(q[2] * 1000.0))};
}

void clamp_joints(Angles& q) {
    for (std::size_t j = 0; j < 3; ++j) q[j] = std::clamp(q[j], -kJointLimit[j], kJointLimit[j]);
}

int draw_component(Rng& rng) { return static_cast<int>(rng.below(5)) - 2; }

int draw_nonzero_component(Rng& rng) {
    static constexpr int kValues[] = {-2, -1, 1, 2};
    return kValues[rng.below(4)];
}

char sign_char(long v) { return v < 0 ? '-' : (v > 0 ? '+' : '0'); }

std::vector<std::uint8_t> to_bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

std::string_view agent_kind_name(AgentKind k) {
    switch (k) {
        case AgentKind::periodic: return "periodic";
        case AgentKind::random: return "random";
        case AgentKind::reactive: return "reactive";
    }
    return "unknown";
}

AgentKind agent_kind_from_name(std::string_view name) {
    if (name == "periodic") return AgentKind::periodic;
    if (name == "random") return AgentKind::random;
    if (name == "reactive") return AgentKind::reactive;
    throw std::invalid_argument("unknown agent kind: " + std::string(name));
}

std::string_view stimulus_kind_name(StimulusKind k) {
    switch (k) {
        case StimulusKind::constant: return "constant";
        case StimulusKind::periodic: return "periodic";
        case StimulusKind::random: return "random";
    }
    return "unknown";
}

AgentSpec reference_agent(AgentKind kind) {
    AgentSpec spec;
    spec.kind = kind;
    return spec;
}

StimulusStream make_stimulus(StimulusKind kind, std::uint64_t seed, std::size_t length, std::size_t period) {
    StimulusStream s{kind, seed, 0, {}};
    s.values.reserve(length);
    Rng rng(seed);
    switch (kind) {
        case StimulusKind::constant: {
            const Stimulus v{draw_nonzero_component(rng), draw_nonzero_component(rng), draw_nonzero_component(rng)};
            s.values.assign(length, v);
            break;
        }
        case StimulusKind::periodic: {
            if (period < 2 || period % 2 != 0) throw std::domain_error("periodic stimulus period must be even and >= 2");
            s.period = period;
            std::vector<Stimulus> cycle(period);
            for (std::size_t k = 0; k < period / 2; ++k) {
                cycle[k] = {draw_component(rng), draw_component(rng), draw_component(rng)};
                cycle[k + period / 2] = {-cycle[k][0], -cycle[k][1], -cycle[k][2]};
            }
            for (std::size_t k = 0; k < length; ++k) s.values.push_back(cycle[k % period]);
            break;
        }
        case StimulusKind::random:
            for (std::size_t k = 0; k < length; ++k) {
                s.values.push_back({draw_component(rng), draw_component(rng), draw_component(rng)});
            }
            break;
    }
    return s;
}

Trajectory simulate_agent(const AgentSpec& spec, const StimulusStream& stimuli, std::size_t steps) {
    if (steps < 1) throw std::domain_error("simulate_agent needs steps >= 1");
    if (stimuli.values.size() < steps) throw std::domain_error("stimulus stream shorter than steps");
    for (double s : spec.segments) {
        if (!(s > 0.0)) throw std::domain_error("segment lengths must be positive");
    }
    if (spec.kind == AgentKind::periodic && spec.period < 1) throw std::domain_error("period must be positive");
    if (spec.kind != AgentKind::periodic && !(spec.gain > 0.0)) throw std::domain_error("gain must be positive");

    Trajectory traj;
    traj.steps = steps;
    traj.stimuli = stimuli;
    traj.positions.reserve(steps);
    traj.joints.reserve(steps);

    Angles q{0.0, 0.0, 0.0};
    Rng noise(mix_seed(spec.seed, stimuli.seed));
    for (std::size_t k = 0; k < steps; ++k) {
        switch (spec.kind) {
            case AgentKind::periodic: {
                const double phase = 2.0 * std::numbers::pi * static_cast<double>(k % spec.period) /
                                     static_cast<double>(spec.period);
                for (std::size_t j = 0; j < 3; ++j) q[j] = kGaitAmplitude[j] * std::sin(phase + kGaitPhase[j]);
                break;
            }
            case AgentKind::random:
                for (std::size_t j = 0; j < 3; ++j) q[j] += spec.gain * (4.0 * noise.uniform() - 2.0);
                break;
            case AgentKind::reactive:
                for (std::size_t j = 0; j < 3; ++j) q[j] += spec.gain * stimuli.values[k][j];
                break;
        }
        clamp_joints(q);
        traj.positions.push_back(forward_kinematics(q, spec.segments));
        traj.joints.push_back(to_milliradians(q));
    }
    return traj;
}

PhaseSpaceSeries project(const Trajectory& trajectory) {
    PhaseSpaceSeries s;
    s.points.reserve(trajectory.positions.size());
    for (const auto& p : trajectory.positions) s.points.push_back({p.x, p.y, p.x, p.z, p.y, p.z});
    return s;
}

std::vector<Point3> recover_positions(const PhaseSpaceSeries& series) {
    std::vector<Point3> out;
    out.reserve(series.points.size());
    for (const auto& t : series.points) out.push_back({t[0], t[1], t[3]});
    return out;
}

std::array<Lattice, 3> rasterize(const PhaseSpaceSeries& series, std::size_t grid) {
    if (grid < 2) throw std::domain_error("rasterize needs grid >= 2");
    std::array<Lattice, 3> planes{Lattice(grid, grid), Lattice(grid, grid), Lattice(grid, grid)};
    if (series.points.empty()) return planes;
    for (std::size_t p = 0; p < 3; ++p) {
        const std::size_t iu = 2 * p;
        const std::size_t iv = 2 * p + 1;
        int umin = series.points.front()[iu];
        int umax = umin;
        int vmin = series.points.front()[iv];
        int vmax = vmin;
        for (const auto& t : series.points) {
            umin = std::min(umin, t[iu]);
            umax = std::max(umax, t[iu]);
            vmin = std::min(vmin, t[iv]);
            vmax = std::max(vmax, t[iv]);
        }
        auto cell = [grid](int v, int lo, int hi) -> std::size_t {
            if (hi == lo) return 0;
            return static_cast<std::size_t>(static_cast<std::int64_t>(v - lo) * static_cast<std::int64_t>(grid - 1) /
                                             static_cast<std::int64_t>(hi - lo));
        };
        for (const auto& t : series.points) {
            planes[p].set(cell(t[iv], vmin, vmax), cell(t[iu], umin, umax), true);
        }
    }
    return planes;
}

std::string phase_space_text(const PhaseSpaceSeries& series) {
    std::string s;
    s.reserve(series.points.size() * 32);
    for (const auto& t : series.points) {
        for (std::size_t i = 0; i < 6; ++i) {
            if (i > 0) s.push_back(',');
            s += std::to_string(t[i]);
        }
        s.push_back('\n');
    }
    return s;
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::string s = "step,x,y,z,s1,s2,s3\n";
    for (std::size_t k = 0; k < trajectory.positions.size(); ++k) {
        const auto& p = trajectory.positions[k];
        const auto& st = trajectory.stimuli.values[k];
        s += std::to_string(k) + ',' + std::to_string(p.x) + ',' + std::to_string(p.y) + ',' + std::to_string(p.z) +
             ',' + std::to_string(st[0]) + ',' + std::to_string(st[1]) + ',' + std::to_string(st[2]) + '\n';
    }
    return s;
}

BehavioralComplexity behavioral_complexity(const Trajectory& trajectory, const CompressorId& id,
                                           const CodingTable& table, std::size_t grid) {
    const auto series = project(trajectory);
    BehavioralComplexity out;
    out.c_bits = compressed_size_bits(as_bytes(phase_space_text(series)), id);
    for (const auto& plane : rasterize(series, grid)) out.bdm3 += bdm(plane, table, id).value;
    return out;
}

double ncd(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, const CompressorId& id) {
    if (a.empty() || b.empty()) throw std::domain_error("ncd needs nonempty inputs");
    std::vector<std::uint8_t> ab;
    ab.reserve(a.size() + b.size());
    ab.insert(ab.end(), a.begin(), a.end());
    ab.insert(ab.end(), b.begin(), b.end());
    const auto ca = static_cast<double>(compressed_size_bits(a, id));
    const auto cb = static_cast<double>(compressed_size_bits(b, id));
    const auto cab = static_cast<double>(compressed_size_bits(ab, id));
    return (cab - std::min(ca, cb)) / std::max(ca, cb);
}

std::string stimulus_signs(const StimulusStream& stream, std::size_t steps) {
    if (stream.values.size() < steps) throw std::domain_error("stimulus stream shorter than steps");
    std::string s;
    s.reserve(steps * 4);
    for (std::size_t k = 0; k < steps; ++k) {
        for (int c : stream.values[k]) s.push_back(sign_char(c));
        s.push_back('\n');
    }
    return s;
}

std::string movement_signs(const Trajectory& trajectory) {
    std::string s;
    s.reserve(trajectory.joints.size() * 4);
    std::array<int, 3> prev{0, 0, 0};
    for (const auto& q : trajectory.joints) {
        for (std::size_t j = 0; j < 3; ++j) s.push_back(sign_char(static_cast<long>(q[j]) - prev[j]));
        s.push_back('\n');
        prev = q;
    }
    return s;
}

std::string_view behavior_label_name(BehaviorLabel l) {
    switch (l) {
        case BehaviorLabel::inert: return "inert";
        case BehaviorLabel::random_uncontrollable: return "random-uncontrollable";
        case BehaviorLabel::enveloped: return "enveloped";
        case BehaviorLabel::programmable: return "programmable";
    }
    return "unknown";
}

BehaviorLabel label_behavior(double variability, double controllability, const BehaviorThresholds& th) {
    const bool controllable = controllability >= th.controllability_floor;
    if (variability < th.variability_floor) {
        return controllable ? BehaviorLabel::enveloped : BehaviorLabel::inert;
    }
    if (!controllable) return BehaviorLabel::random_uncontrollable;
    if (std::fabs(variability - controllability) < th.diagonal_band) return BehaviorLabel::programmable;
    return variability > controllability ? BehaviorLabel::random_uncontrollable : BehaviorLabel::enveloped;
}

BehaviorAssessment assess(const AgentSpec& spec, std::size_t steps, std::span<const std::uint64_t> seeds,
                          const CompressorId& id, const BehaviorThresholds& th) {
    if (seeds.size() < 3) throw std::domain_error("assess needs at least three stimulus seeds");
    std::vector<StimulusStream> streams;
    streams.push_back(make_stimulus(StimulusKind::constant, seeds[0], steps));
    streams.push_back(make_stimulus(StimulusKind::periodic, seeds[1], steps));
    for (std::size_t i = 2; i < seeds.size(); ++i) streams.push_back(make_stimulus(StimulusKind::random, seeds[i], steps));

    BehaviorAssessment out;
    out.agent = spec.kind;
    std::vector<std::string> texts;
    std::vector<Trajectory> runs;
    for (const auto& s : streams) {
        runs.push_back(simulate_agent(spec, s, steps));
        texts.push_back(phase_space_text(project(runs.back())));
        out.stream_names.push_back(std::string(stimulus_kind_name(s.kind)) + ":" + std::to_string(s.seed));
        out.per_stream_c_bits.push_back(compressed_size_bits(as_bytes(texts.back()), id));
    }

    double pair_sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        for (std::size_t j = i + 1; j < texts.size(); ++j, ++pairs) {
            if (texts[i] == texts[j]) continue;
            pair_sum += std::clamp(ncd(as_bytes(texts[i]), as_bytes(texts[j]), id), 0.0, 1.0);
        }
    }
    out.variability = pair_sum / static_cast<double>(pairs);

    const auto stim = to_bytes(stimulus_signs(streams[2], steps));
    const auto moves = to_bytes(movement_signs(runs[2]));
    const auto independent =
        to_bytes(stimulus_signs(make_stimulus(StimulusKind::random, mix_seed(seeds[2], 0xC0), steps), steps));
    out.raw_ncd = ncd(stim, moves, id);
    out.ncd_floor = ncd(stim, stim, id);
    out.ncd_ceiling = ncd(stim, independent, id);
    const double span = out.ncd_ceiling - out.ncd_floor;
    out.controllability = span > 0.0 ? 1.0 - std::clamp((out.raw_ncd - out.ncd_floor) / span, 0.0, 1.0) : 0.0;
    out.label = label_behavior(out.variability, out.controllability, th);
    return out;
}

std::vector<StimulusStream> entropy_ordered_environments(std::size_t levels, std::uint64_t seed, std::size_t length) {
    if (levels < 1) throw std::domain_error("need at least one environment");
    std::vector<StimulusStream> envs;
    envs.push_back(make_stimulus(StimulusKind::constant, mix_seed(seed, 0), length));
    std::size_t period = 64;
    for (std::size_t i = 1; i + 1 < levels; ++i, period *= 2) {
        envs.push_back(make_stimulus(StimulusKind::periodic, mix_seed(seed, i), length, period));
    }
    if (levels >= 2) envs.push_back(make_stimulus(StimulusKind::random, mix_seed(seed, levels - 1), length));
    return envs;
}

std::vector<std::uint64_t> environment_sweep(const AgentSpec& spec, std::span<const StimulusStream> environments,
                                             std::size_t steps, const CompressorId& id) {
    std::vector<std::uint64_t> out;
    out.reserve(environments.size());
    for (const auto& env : environments) {
        const auto traj = simulate_agent(spec, env, steps);
        out.push_back(compressed_size_bits(as_bytes(phase_space_text(project(traj))), id));
    }
    return out;
}

}  // namespace ecaprog
