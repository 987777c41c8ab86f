#include <fmt/format.h>

#include <fstream>
#include <map>

#include "wimaxtv/scenario.hpp"

namespace wimaxtv {

namespace {

struct MetricColumn {
    const char* file;
    const char* label;
    double WindowMetrics::*field;
    bool log_scale;
};

constexpr MetricColumn kColumns[] = {
    {"jitter", "mean |jitter| (ms)", &WindowMetrics::mean_jitter_ms, true},
    {"delay", "mean end-to-end delay (ms)", &WindowMetrics::mean_e2e_delay_ms, false},
    {"dropped", "data dropped (bit/s)", &WindowMetrics::data_dropped_bps, false},
    {"throughput", "throughput (bit/s)", &WindowMetrics::throughput_bps, false},
};

std::string axis_value(const SummaryRow& r, PlotAxis axis) {
    switch (axis) {
        case PlotAxis::Speed:
            return fmt::format("{:g}", r.speed_kmh);
        case PlotAxis::PathLoss:
            return r.pathloss;
        case PlotAxis::ServiceClass:
            return r.service_class;
    }
    return {};
}

const char* axis_name(PlotAxis axis) {
    switch (axis) {
        case PlotAxis::Speed:
            return "speed-kmh";
        case PlotAxis::PathLoss:
            return "pathloss-model";
        case PlotAxis::ServiceClass:
            return "service-class";
    }
    return "";
}

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) {
        v.push_back(x);
    }
}

}  // namespace

std::vector<std::filesystem::path> emit_plot_data(const std::vector<SummaryRow>& rows, PlotAxis axis,
                                                  const std::filesystem::path& out_dir, const std::string& prefix) {
    if (rows.empty()) {
        throw std::invalid_argument("emit_plot_data: no rows");
    }
    std::vector<std::string> xs;
    std::vector<std::string> modes;
    for (const auto& r : rows) {
        push_unique(xs, axis_value(r, axis));
        push_unique(modes, r.mcs_mode);
    }

    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const auto& col : kColumns) {
        std::map<std::pair<std::string, std::string>, std::pair<double, int>> cells;
        for (const auto& r : rows) {
            auto& c = cells[{axis_value(r, axis), r.mcs_mode}];
            c.first += r.metrics.*col.field;
            ++c.second;
        }
        const auto path = out_dir / fmt::format("{}_{}.dat", prefix, col.file);
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        out << "# " << col.label << " by " << axis_name(axis) << "; one column per MCS mode\n";
        if (col.log_scale) {
            out << "# logscale y\n";
        }
        out << "# missing values are '?' (gnuplot: set datafile missing '?')\n";
        out << "# " << axis_name(axis);
        for (const auto& m : modes) {
            out << ' ' << m;
        }
        out << '\n';
        for (const auto& x : xs) {
            out << x;
            for (const auto& m : modes) {
                const auto it = cells.find({x, m});
                if (it == cells.end()) {
                    out << " ?";
                } else {
                    out << ' ' << fmt::format("{:.9g}", it->second.first / it->second.second);
                }
            }
            out << '\n';
        }
        written.push_back(path);
    }
    return written;
}

}  // namespace wimaxtv
