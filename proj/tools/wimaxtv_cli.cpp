// Command-line front end: run, gen-trace, plot-data, validate.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wimaxtv/config.hpp"
#include "wimaxtv/scenario.hpp"
#include "wimaxtv/traffic.hpp"

using namespace wimaxtv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitScenarioFailure = 1;
constexpr int kExitConfigError = 2;

ScenarioMatrix load_matrix(const std::string& path) {
    if (path.empty()) {
        return default_matrix();
    }
    return parse_config_file(path);
}

void write_plot_files(const std::vector<SummaryRow>& rows, const std::filesystem::path& dir) {
    const std::pair<const char*, PlotAxis> cases[] = {
        {"c1-", PlotAxis::Speed}, {"c2-", PlotAxis::PathLoss}, {"c3-", PlotAxis::ServiceClass}};
    for (const auto& [prefix, axis] : cases) {
        std::vector<SummaryRow> subset;
        for (const auto& r : rows) {
            if (r.scenario_id.rfind(prefix, 0) == 0) {
                subset.push_back(r);
            }
        }
        if (subset.empty()) {
            continue;
        }
        const std::string name = std::string("case") + prefix[1];
        for (const auto& p : emit_plot_data(subset, axis, dir, name)) {
            std::cout << "wrote " << p.string() << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mobile WiMAX downlink simulator for trace-driven mobile TV"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "results";
    unsigned parallel = 0;
    double duration_s = 0.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool full = false;
    bool plots = true;
    auto* run = app.add_subcommand("run", "Run the scenario matrix and write results.csv");
    run->add_option("config", config_path, "Scenario config file (default matrix when omitted)");
    run->add_option("-o,--out", out_dir, "Output directory");
    run->add_option("-j,--parallel", parallel, "Worker threads (default: config value)");
    run->add_option("-d,--duration", duration_s, "Override simulated seconds per scenario");
    run->add_option("-s,--seed", seed, "Override the seed of every scenario")->each([&](const std::string&) {
        seed_set = true;
    });
    run->add_flag("--full", full, "Simulate the full two-hour trace (7200 s)");
    run->add_flag("!--no-plots", plots, "Skip plot data files");

    SyntheticTraceSpec spec;
    std::string trace_out = "synthetic_trace.txt";
    auto* gen = app.add_subcommand("gen-trace", "Write a synthetic MPEG-4 frame-size trace");
    gen->add_option("-o,--out", trace_out, "Output trace file");
    gen->add_option("--seed", spec.seed, "Generator seed");
    gen->add_option("--frames", spec.frames, "Number of frames");
    gen->add_option("--fps", spec.fps, "Frame rate");
    gen->add_option("--mean", spec.mean_size, "Target mean frame size (bytes)");
    gen->add_option("--min", spec.min_size, "Minimum frame size (bytes)");
    gen->add_option("--max", spec.max_size, "Maximum frame size (bytes)");
    gen->add_option("--gop", spec.gop, "GOP pattern of I/P/B frames");

    std::string csv_in;
    std::string plot_dir = "plots";
    auto* plot = app.add_subcommand("plot-data", "Turn a results CSV into per-metric data files");
    plot->add_option("csv", csv_in, "results.csv written by 'run'")->required();
    plot->add_option("-o,--out", plot_dir, "Output directory");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Parse a config and list the scenarios without running");
    validate->add_option("config", validate_path, "Scenario config file (default matrix when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            ScenarioMatrix m;
            try {
                m = load_matrix(validate_path);
            } catch (const ConfigError& e) {
                std::cerr << "config error: " << e.what() << '\n';
                return kExitConfigError;
            }
            std::cout << fmt::format("{} scenarios (case1 {}, case2 {}, case3 {})\n", m.size(), m.case1, m.case2,
                                     m.case3);
            for (const auto& s : m.scenarios) {
                std::cout << fmt::format("  {}  {:<8} {:>5g} km/h  {:<10} {}\n", s.id, s.mcs_mode, s.speed_kmh,
                                         s.pathloss, to_string(s.service_class));
            }
            return kExitOk;
        }

        if (*gen) {
            const auto trace = generate_synthetic_trace(spec);
            write_trace(trace, trace_out);
            const auto st = trace.stats();
            std::cout << fmt::format("wrote {} frames to {}: min {} max {} mean {:.3f} B, mean {:.3f} Mbps\n",
                                     trace.frames.size(), trace_out, st.min_size, st.max_size, st.mean_size,
                                     st.mean_rate_mbps);
            return kExitOk;
        }

        if (*plot) {
            std::ifstream in(csv_in);
            if (!in) {
                std::cerr << "cannot open " << csv_in << '\n';
                return kExitScenarioFailure;
            }
            write_plot_files(read_summary_csv(in), plot_dir);
            return kExitOk;
        }

        ScenarioMatrix m;
        try {
            m = load_matrix(config_path);
            for (auto& s : m.scenarios) {
                if (full) {
                    s.duration = SimTime::from_seconds(7200);
                } else if (duration_s > 0) {
                    s.duration = SimTime::from_seconds_f(duration_s);
                }
                if (seed_set) {
                    s.seed = seed;
                }
                s.validate();
            }
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return kExitConfigError;
        }
        const unsigned workers = parallel > 0 ? parallel : m.parallelism;
        const auto outcomes = run_matrix(m, workers);

        std::filesystem::create_directories(out_dir);
        const auto csv_path = std::filesystem::path(out_dir) / "results.csv";
        {
            std::ofstream out(csv_path);
            write_csv(out, outcomes);
        }
        int failures = 0;
        for (const auto& o : outcomes) {
            if (!o.ok()) {
                ++failures;
                std::cerr << "scenario " << o.config.id << " failed: " << o.error << '\n';
            }
        }
        std::cout << fmt::format("{} of {} scenarios completed; results in {}\n", outcomes.size() - failures,
                                 outcomes.size(), csv_path.string());
        if (plots) {
            const auto rows = summary_rows(outcomes);
            if (!rows.empty()) {
                write_plot_files(rows, std::filesystem::path(out_dir) / "plots");
            }
        }
        return failures ? kExitScenarioFailure : kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitScenarioFailure;
    }
}
