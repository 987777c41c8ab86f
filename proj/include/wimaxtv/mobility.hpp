#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "wimaxtv/channel.hpp"
#include "wimaxtv/sim_time.hpp"

namespace wimaxtv {

struct Point {
    double x = 0.0;
    double y = 0.0;
    constexpr bool operator==(const Point&) const = default;
};

double distance(Point a, Point b);

using CellId = std::size_t;

/// Seven tangent hexagonal cells: index 0 at the origin, 1..6 on the ring at
/// sqrt(3) * radius, starting at 30 degrees and going counter-clockwise.
struct CellLayout {
    std::vector<Point> sites;
    double radius_m = 200.0;

    static CellLayout hexagonal(double radius_m = 200.0, std::size_t cells = 7);
    std::size_t size() const { return sites.size(); }
};

/// Piecewise-linear path walked at constant speed.
class Trajectory {
public:
    Trajectory(std::vector<Point> waypoints, double speed_kmh, bool loop);

    const std::vector<Point>& waypoints() const { return waypoints_; }
    double speed_kmh() const { return speed_kmh_; }
    double speed_mps() const { return speed_kmh_ / 3.6; }
    bool loop() const { return loop_; }
    /// Path length in meters, including the closing segment of a loop.
    double length_m() const { return cumulative_.back(); }
    /// Time to walk the full path once.
    SimTime lap_time() const;

    Point position_at(SimTime t) const;

private:
    std::vector<Point> waypoints_;
    std::vector<double> cumulative_;
    double speed_kmh_;
    bool loop_;
};

/// Reads "x y" waypoints (meters), one per line, '#' comments.
std::vector<Point> load_waypoints(const std::filesystem::path& path);

/// Circle of `radius_m` around the cluster centre sampled at `vertices` points.
/// With the default 400 m it runs through all six ring cells, crossing each
/// ring-to-ring boundary.
std::vector<Point> default_loop(double radius_m = 400.0, std::size_t vertices = 24);

struct HandoffPolicy {
    double margin_db = 3.0;
    /// Downlink outage following each handoff.
    SimTime latency = SimTime::from_ms(50);

    void validate() const;
};

/// Hysteresis rule on per-cell received powers: move to the strongest cell
/// only if it beats the current one by more than the margin.
CellId select_serving_cell(std::span<const double> rx_power_dbm, CellId current, double margin_db);

/// Same rule with received powers computed from a deterministic path-loss model.
CellId serving_cell(Point pos, const CellLayout& layout, CellId current, const HandoffPolicy& policy,
                    const PathLossModel& model, const TxBudget& budget);

/// Received power at `pos` from each site.
std::vector<double> received_powers_dbm(Point pos, const CellLayout& layout, const PathLossModel& model,
                                        const TxBudget& budget, std::span<const double> shadow_db = {});

}  // namespace wimaxtv
