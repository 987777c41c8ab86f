#include "wimaxtv/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace wimaxtv {

namespace {

/// Traces and trajectories keyed by source, loaded once per matrix.
class InputCache {
public:
    ScenarioInputs get(const ScenarioConfig& cfg) {
        const auto& t = cfg.settings.traffic;
        const std::string trace_key = t.video_trace == "synthetic"
                                          ? fmt::format("synthetic:{}:{}:{}", t.synthetic.seed,
                                                        t.synthetic.frames, t.synthetic.fps)
                                          : t.video_trace;
        const std::string traj_key = cfg.settings.mobility.trajectory.string();

        std::lock_guard lock(mu_);
        ScenarioInputs in;
        if (auto it = traces_.find(trace_key); it != traces_.end()) {
            in.video = it->second;
        }
        if (auto it = trajectories_.find(traj_key); it != trajectories_.end()) {
            in.waypoints = it->second;
        }
        if (!in.video || !in.waypoints) {
            const auto loaded = load_inputs(cfg);
            in.video = traces_.emplace(trace_key, loaded.video).first->second;
            in.waypoints = trajectories_.emplace(traj_key, loaded.waypoints).first->second;
        }
        return in;
    }

private:
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const VideoTrace>> traces_;
    std::map<std::string, std::shared_ptr<const std::vector<Point>>> trajectories_;
};

std::string num(double v) { return fmt::format("{:.9g}", v); }

void write_row(std::ostream& out, const ScenarioConfig& c, const std::string& window, const WindowMetrics& w,
               const std::string& handoffs) {
    out << c.id << ',' << window << ',' << c.mcs_mode << ',' << num(c.speed_kmh) << ',' << c.pathloss << ','
        << to_string(c.service_class) << ',' << c.seed << ',' << num(w.plr) << ',' << num(w.mean_e2e_delay_ms) << ','
        << num(w.mean_jitter_ms) << ',' << num(w.throughput_bps) << ',' << num(w.data_dropped_bps) << ','
        << num(w.mean_bler) << ',' << num(w.signed_jitter_ms) << ',' << handoffs << '\n';
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) {
        out.push_back(f);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

}  // namespace

std::vector<ScenarioOutcome> run_matrix(const ScenarioMatrix& m, unsigned parallelism) {
    std::vector<ScenarioOutcome> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].config = m.scenarios[i];
    }
    InputCache cache;
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < m.size(); i = next++) {
            try {
                const auto in = cache.get(m.scenarios[i]);
                out[i].result = run_scenario(m.scenarios[i], in);
            } catch (const std::exception& e) {
                out[i].error = e.what();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(m.size())));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();
    return out;
}

std::string csv_header() {
    return "scenario-id,window,mcs-mode,speed-kmh,pathloss-model,service-class,seed,plr,mean-delay-ms,"
           "mean-jitter-ms,throughput-bps,dropped-bps,mean-bler,signed-jitter-ms,handoffs";
}

void write_csv(std::ostream& out, const std::vector<ScenarioOutcome>& outcomes) {
    std::vector<const ScenarioOutcome*> sorted;
    for (const auto& o : outcomes) {
        if (o.ok()) {
            sorted.push_back(&o);
        }
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto* a, const auto* b) { return a->config.id < b->config.id; });
    out << csv_header() << '\n';
    for (const auto* o : sorted) {
        const auto& rep = o->result->report;
        for (std::size_t w = 0; w < rep.windows.size(); ++w) {
            write_row(out, o->config, std::to_string(w), rep.windows[w], "");
        }
        write_row(out, o->config, "all", rep.summary, std::to_string(rep.handoffs));
    }
}

std::vector<SummaryRow> summary_rows(const std::vector<ScenarioOutcome>& outcomes) {
    std::vector<SummaryRow> rows;
    for (const auto& o : outcomes) {
        if (!o.ok()) {
            continue;
        }
        const auto& c = o.config;
        rows.push_back({c.id, c.mcs_mode, c.speed_kmh, c.pathloss, std::string(to_string(c.service_class)), c.seed,
                        o.result->report.summary});
    }
    return rows;
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != csv_header()) {
        throw std::runtime_error("results CSV: unexpected header");
    }
    std::vector<SummaryRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 15) {
            throw std::runtime_error("results CSV line " + std::to_string(lineno) + ": expected 15 fields");
        }
        if (f[1] != "all") {
            continue;
        }
        try {
            SummaryRow r;
            r.scenario_id = f[0];
            r.mcs_mode = f[2];
            r.speed_kmh = std::stod(f[3]);
            r.pathloss = f[4];
            r.service_class = f[5];
            r.seed = std::stoull(f[6]);
            r.metrics.plr = std::stod(f[7]);
            r.metrics.mean_e2e_delay_ms = std::stod(f[8]);
            r.metrics.mean_jitter_ms = std::stod(f[9]);
            r.metrics.throughput_bps = std::stod(f[10]);
            r.metrics.data_dropped_bps = std::stod(f[11]);
            r.metrics.mean_bler = std::stod(f[12]);
            r.metrics.signed_jitter_ms = std::stod(f[13]);
            rows.push_back(std::move(r));
        } catch (const std::exception&) {
            throw std::runtime_error("results CSV line " + std::to_string(lineno) + ": bad number");
        }
    }
    return rows;
}

}  // namespace wimaxtv
