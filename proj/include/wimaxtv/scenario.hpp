#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wimaxtv/config.hpp"
#include "wimaxtv/simulation.hpp"

namespace wimaxtv {

struct ScenarioOutcome {
    ScenarioConfig config;
    std::optional<ScenarioResult> result;
    std::string error;

    bool ok() const { return result.has_value(); }
};

/// Runs every scenario on a pool of `parallelism` workers. Results come back
/// in matrix order whatever the worker count; a failing scenario is reported
/// in its outcome and does not stop the others.
std::vector<ScenarioOutcome> run_matrix(const ScenarioMatrix& m, unsigned parallelism);

std::string csv_header();
/// One row per metric window plus a summary row (window "all") per scenario,
/// sorted by scenario id.
void write_csv(std::ostream& out, const std::vector<ScenarioOutcome>& outcomes);

/// A parsed summary row.
struct SummaryRow {
    std::string scenario_id;
    std::string mcs_mode;
    double speed_kmh = 0.0;
    std::string pathloss;
    std::string service_class;
    std::uint64_t seed = 0;
    WindowMetrics metrics;
};

std::vector<SummaryRow> summary_rows(const std::vector<ScenarioOutcome>& outcomes);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

enum class PlotAxis { Speed, PathLoss, ServiceClass };

/// Writes <prefix>_{jitter,delay,dropped,throughput}.dat: one row per axis
/// value, one column per MCS mode; missing scenarios are '?'. Rows that share
/// an (axis, mode) cell, e.g. repeated seeds, are averaged.
std::vector<std::filesystem::path> emit_plot_data(const std::vector<SummaryRow>& rows, PlotAxis axis,
                                                  const std::filesystem::path& out_dir, const std::string& prefix);

}  // namespace wimaxtv
