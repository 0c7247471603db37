// ecaprog: command-line front end.
//
// Exit codes: 0 success, 2 usage error, 1 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecaprog/behavior.hpp"
#include "ecaprog/compressor.hpp"
#include "ecaprog/eca.hpp"
#include "ecaprog/envelope.hpp"
#include "ecaprog/json_io.hpp"
#include "ecaprog/lattice.hpp"
#include "ecaprog/programmability.hpp"
#include "ecaprog/run_cache.hpp"
#include "ecaprog/serialize.hpp"
#include "ecaprog/simd.hpp"

using namespace ecaprog;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const std::string& path, std::string_view data) {
    if (path.empty() || path == "-") {
        std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

CompressorId pick_compressor(const std::string& name) {
    try {
        return compressor_by_name(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Configuration make_init(const std::string& mode, std::size_t width, std::uint64_t seed, double density) {
    if (mode == "single") return single_cell_config(width);
    return random_config(width, density, seed);
}

std::string render_svg(const SpaceTimeDiagram& d) {
    constexpr std::size_t px = 4;
    const std::size_t w = d.width() * px;
    const std::size_t h = d.rows.size() * px;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\" shape-rendering=\"crispEdges\">\n";
    s << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"#ffffff\"/>\n";
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
        s << "<g data-row=\"" << r << "\">";
        const auto& row = d.rows[r];
        std::size_t c = 0;
        while (c < d.width()) {
            if (!row.get(c)) {
                ++c;
                continue;
            }
            std::size_t e = c;
            while (e < d.width() && row.get(e)) ++e;
            // one rect per run of black cells
            s << "<rect x=\"" << c * px << "\" y=\"" << r * px << "\" width=\"" << (e - c) * px << "\" height=\"" << px
              << "\" fill=\"#000000\"/>";
            c = e;
        }
        s << "</g>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string with_cached_flag(const std::string& payload, bool cached) {
    auto j = Json::parse(payload);
    j["cached"] = cached;
    return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compression-based behavioural complexity and programmability of ECAs and agents"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ECAPROG_VERSION));

    // shared option storage
    int rule = 30;
    std::size_t width = 100;
    std::size_t t = 100;
    std::size_t t_step = 10;
    std::string init = "random";
    std::uint64_t seed = 1;
    double density = 0.5;
    std::string compressor = "builtin-lzss";
    std::string out;
    bool no_cache = false;
    std::string simd = "auto";

    app.add_option("--simd", simd, "Kernel selection")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    auto add_compressor = [&](CLI::App* sub) {
        sub->add_option("--compressor", compressor, "Compressor name")->capture_default_str();
    };
    auto add_out = [&](CLI::App* sub) { sub->add_option("-o,--out", out, "Output file (default stdout)"); };

    // simulate
    std::string format = "ascii";
    auto* sim = app.add_subcommand("simulate", "Evolve a rule and write the diagram");
    sim->add_option("--rule", rule, "Rule number")->required()->check(CLI::Range(0, 255));
    sim->add_option("--width", width, "Cells per row")->capture_default_str()->check(CLI::Range(3, 1 << 20));
    sim->add_option("--t", t, "Steps")->capture_default_str();
    sim->add_option("--init", init, "Initial condition")->capture_default_str()->check(CLI::IsMember({"single", "random"}));
    sim->add_option("--seed", seed, "Seed for --init random")->capture_default_str();
    sim->add_option("--density", density, "Density for --init random")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    sim->add_option("--format", format, "ascii, packed or svg")->capture_default_str()->check(CLI::IsMember({"ascii", "packed", "svg"}));
    add_out(sim);

    // curve
    auto* curve = app.add_subcommand("curve", "Compressed size against time as CSV");
    curve->add_option("--rule", rule, "Rule number")->required()->check(CLI::Range(0, 255));
    curve->add_option("--width", width, "Cells per row")->capture_default_str()->check(CLI::Range(3, 1 << 20));
    curve->add_option("--t-max", t, "Last step")->capture_default_str()->check(CLI::PositiveNumber);
    curve->add_option("--t-step", t_step, "Sampling interval")->capture_default_str()->check(CLI::PositiveNumber);
    curve->add_option("--init", init, "Initial condition")->capture_default_str()->check(CLI::IsMember({"single", "random"}));
    curve->add_option("--seed", seed, "Seed for --init random")->capture_default_str();
    curve->add_option("--density", density, "Density for --init random")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    add_compressor(curve);
    add_out(curve);

    // classify / scan
    ClassifyParams cp;
    std::string thresholds_file;
    auto add_classify_opts = [&](CLI::App* sub) {
        sub->add_option("--width", cp.width, "Cells per row")->capture_default_str()->check(CLI::Range(3, 1 << 20));
        sub->add_option("--t", cp.t_max, "Steps")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--t-step", cp.t_step, "Curve sampling interval")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--inputs", cp.n_inputs, "Random inputs per rule")->capture_default_str()->check(CLI::Range(2, 100000));
        sub->add_option("--seed", cp.seed, "Input seed")->capture_default_str();
        sub->add_option("--density", cp.density, "Input density")->capture_default_str()->check(CLI::Range(0.0, 1.0));
        sub->add_option("--thresholds", thresholds_file, "JSON file with r1, r2, r3, v0");
        add_compressor(sub);
        add_out(sub);
    };
    auto* cls = app.add_subcommand("classify", "Estimate the Wolfram class of one rule");
    cls->add_option("--rule", rule, "Rule number")->required()->check(CLI::Range(0, 255));
    add_classify_opts(cls);
    auto* scan = app.add_subcommand("scan", "Classify all 256 rules as CSV");
    add_classify_opts(scan);
    scan->add_flag("--no-cache", no_cache, "Bypass the run cache");

    // programmability
    std::size_t n_inputs = 16;
    std::size_t t_max = 200;
    std::size_t p_step = 20;
    std::size_t p_width = 12;
    int fit_degree = 1;
    std::string csv_out;
    auto* prog = app.add_subcommand("programmability", "Programmability coefficient of one rule");
    prog->add_option("--rule", rule, "Rule number")->required()->check(CLI::Range(0, 255));
    prog->add_option("--width", p_width, "Cells per row")->capture_default_str()->check(CLI::Range(3, 1 << 20));
    prog->add_option("--n", n_inputs, "Gray-ordered inputs")->capture_default_str()->check(CLI::Range(2, 1 << 20));
    prog->add_option("--t-max", t_max, "Last sample time")->capture_default_str()->check(CLI::PositiveNumber);
    prog->add_option("--t-step", p_step, "Sampling interval")->capture_default_str()->check(CLI::PositiveNumber);
    prog->add_option("--fit-degree", fit_degree, "1 (line) or 2")->capture_default_str()->check(CLI::IsMember({1, 2}));
    prog->add_option("--csv", csv_out, "Also write the d(t) series as CSV");
    prog->add_flag("--no-cache", no_cache, "Bypass the run cache");
    add_compressor(prog);
    add_out(prog);

    // lattice
    std::string input_file;
    std::string table_file;
    auto* lat = app.add_subcommand("lattice", "Block-decomposition complexity of a 0/1 text lattice");
    lat->add_option("input", input_file, "Lattice file: lines of 0 and 1")->required();
    lat->add_option("--table", table_file, "Coding table file")->required();
    add_compressor(lat);
    add_out(lat);

    // table
    unsigned block = 3;
    std::uint64_t samples = kDefaultTableSamples;
    std::uint64_t table_seed = kDefaultTableSeed;
    auto* tab = app.add_subcommand("table", "Build a coding table from random ECA evolutions");
    tab->add_option("--block", block, "Block size")->capture_default_str()->check(CLI::Range(2, 4));
    tab->add_option("--samples", samples, "Ensemble size")->capture_default_str()->check(CLI::Range(1000, 100000000));
    tab->add_option("--seed", table_seed, "Ensemble seed")->capture_default_str();
    add_out(tab);

    // agent
    std::string kind;
    std::size_t steps = 1000;
    std::vector<std::uint64_t> seeds(kDefaultAssessSeeds.begin(), kDefaultAssessSeeds.end());
    std::string trajectory_out;
    std::size_t levels = 5;
    auto* agent = app.add_subcommand("agent", "Variability / controllability assessment of a reference agent");
    agent->add_option("--kind", kind, "periodic, random or reactive")->required();
    agent->add_option("--steps", steps, "Simulation steps")->capture_default_str()->check(CLI::PositiveNumber);
    agent->add_option("--seeds", seeds, "Stimulus seeds: constant, periodic, random...")->expected(3, 64);
    agent->add_option("--table", table_file, "Coding table; adds bdm3 per stream");
    agent->add_option("--trajectory-csv", trajectory_out, "Write the random-stream trajectory as CSV");
    add_compressor(agent);
    add_out(agent);

    auto* sweep = app.add_subcommand("sweep", "Behavioural complexity over entropy-ordered environments");
    sweep->add_option("--kind", kind, "periodic, random or reactive")->required();
    sweep->add_option("--steps", steps, "Simulation steps")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_option("--levels", levels, "Number of environments")->capture_default_str()->check(CLI::Range(1, 12));
    sweep->add_option("--seed", seed, "Environment seed")->capture_default_str();
    add_compressor(sweep);
    add_out(sweep);

    // compress / decompress
    auto* comp = app.add_subcommand("compress", "Compress a file");
    comp->add_option("input", input_file, "Input file")->required();
    add_compressor(comp);
    add_out(comp);
    auto* decomp = app.add_subcommand("decompress", "Decompress a file");
    decomp->add_option("input", input_file, "Input file")->required();
    add_compressor(decomp);
    add_out(decomp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (simd == "scalar") simd::set_active_isa(simd::Isa::scalar);
        if (simd == "avx2") simd::set_active_isa(simd::Isa::avx2);

        if (*sim) {
            const auto d = evolve(rule_table(rule), make_init(init, width, seed, density), t);
            if (format == "svg") {
                emit(out, render_svg(d));
            } else {
                const auto bytes = serialize_diagram(d, serialization_mode_from_name(format));
                emit(out, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
            }
        } else if (*curve) {
            if (t < t_step) throw UsageError("--t-max must be >= --t-step");
            const auto id = pick_compressor(compressor);
            const auto c = compression_curve(rule_table(rule), make_init(init, width, seed, density), t, t_step, id);
            emit(out, curve_csv_header() + curve_csv_rows(c, init == "single" ? 0 : seed));
        } else if (*cls || *scan) {
            const auto id = pick_compressor(compressor);
            if (cp.t_max < cp.t_step) throw UsageError("--t must be >= --t-step");
            ClassThresholds th;
            if (!thresholds_file.empty()) th = ClassThresholds::from_json_file(thresholds_file);
            if (*cls) {
                const auto e = classify_rule(rule_table(rule), cp, id, th);
                emit(out, to_json(e, cp).dump(2) + "\n");
            } else {
                std::ostringstream canon;
                canon << to_json(cp).dump() << '|' << id.name << '|' << th.r1 << ',' << th.r2 << ',' << th.r3 << ','
                      << th.v0;
                const RunCache cache(default_cache_dir());
                const auto key = RunCache::make_key("scan", canon.str());
                std::optional<std::string> payload;
                if (!no_cache) payload = cache.lookup(key);
                if (!payload) {
                    std::string csv = scan_csv_header();
                    for (int r = 0; r < 256; ++r) csv += scan_csv_row(classify_rule(rule_table(r), cp, id, th));
                    payload = csv;
                    if (!no_cache) cache.store(key, "scan", csv);
                }
                emit(out, *payload);
            }
        } else if (*prog) {
            const auto id = pick_compressor(compressor);
            if (t_max < p_step) throw UsageError("--t-max must be >= --t-step");
            if (p_width < 64 && n_inputs > (std::uint64_t{1} << p_width)) throw UsageError("--n exceeds 2^width");
            std::ostringstream canon;
            canon << "rule=" << rule << ";width=" << p_width << ";n=" << n_inputs << ";t_max=" << t_max
                  << ";t_step=" << p_step << ";fit=" << fit_degree << ";compressor=" << id.name;
            const RunCache cache(default_cache_dir());
            const auto key = RunCache::make_key("programmability", canon.str());
            std::optional<std::string> payload;
            if (!no_cache) payload = cache.lookup(key);
            const bool hit = payload.has_value();
            std::optional<ProgrammabilityReport> report;
            if (!hit) {
                report = programmability_coefficient(rule_table(rule), p_width, n_inputs, t_max, p_step, id, fit_degree);
                payload = to_json(*report).dump();
                if (!no_cache) cache.store(key, "programmability", *payload);
            }
            if (!csv_out.empty()) {
                if (!report) {
                    report = programmability_coefficient(rule_table(rule), p_width, n_inputs, t_max, p_step, id,
                                                         fit_degree);
                }
                emit(csv_out, variability_csv(report->series));
            }
            emit(out, with_cached_flag(*payload, hit));
        } else if (*lat) {
            const auto id = pick_compressor(compressor);
            std::ifstream tin(table_file);
            if (!tin) throw UsageError("cannot open table file " + table_file);
            const auto table = read_coding_table(tin);
            Lattice l;
            try {
                l = Lattice::from_text(read_file(input_file));
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("bad lattice file: ") + e.what());
            }
            auto j = to_json(bdm(l, table, id));
            j["height"] = l.height();
            j["width"] = l.width();
            j["block_size"] = table.block_size;
            emit(out, j.dump(2) + "\n");
        } else if (*tab) {
            std::ostringstream s;
            write_coding_table(s, build_coding_table(block, samples, table_seed));
            emit(out, s.str());
        } else if (*agent || *sweep) {
            AgentKind k;
            try {
                k = agent_kind_from_name(kind);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto id = pick_compressor(compressor);
            const auto spec = reference_agent(k);
            if (*sweep) {
                const auto envs = entropy_ordered_environments(levels, seed, steps);
                const auto values = environment_sweep(spec, envs, steps, id);
                Json envj = Json::array();
                for (const auto& e : envs) {
                    envj.push_back(Json{{"kind", stimulus_kind_name(e.kind)}, {"period", e.period}});
                }
                const Json j{{"agent", agent_kind_name(k)}, {"steps", steps},      {"seed", seed},
                             {"environments", envj},       {"c_bits", values}};
                emit(out, j.dump(2) + "\n");
            } else {
                auto a = assess(spec, steps, seeds, id);
                auto j = to_json(a);
                if (!table_file.empty()) {
                    std::ifstream tin(table_file);
                    if (!tin) throw UsageError("cannot open table file " + table_file);
                    const auto table = read_coding_table(tin);
                    Json b = Json::array();
                    for (std::size_t i = 0; i < seeds.size(); ++i) {
                        const auto sk = i == 0 ? StimulusKind::constant
                                               : (i == 1 ? StimulusKind::periodic : StimulusKind::random);
                        const auto traj = simulate_agent(spec, make_stimulus(sk, seeds[i], steps), steps);
                        b.push_back(behavioral_complexity(traj, id, table).bdm3);
                    }
                    j["per_stream_bdm3"] = b;
                }
                if (!trajectory_out.empty()) {
                    const auto traj = simulate_agent(spec, make_stimulus(StimulusKind::random, seeds[2], steps), steps);
                    emit(trajectory_out, trajectory_csv(traj));
                }
                emit(out, j.dump(2) + "\n");
            }
        } else if (*comp || *decomp) {
            const auto id = pick_compressor(compressor);
            const auto data = read_file(input_file);
            const auto bytes = *comp ? compress(as_bytes(data), id) : decompress(as_bytes(data), id);
            emit(out, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
        }
    } catch (const UsageError& e) {
        std::cerr << "ecaprog: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ecaprog: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
