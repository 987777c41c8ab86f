#include "wimaxtv/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wimaxtv {

namespace {

// Keeps the path-loss formulas away from log10(0) when the mobile sits on a mast.
constexpr double kMinDistanceM = 1.0;

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

CellLayout CellLayout::hexagonal(double radius_m, std::size_t cells) {
    if (radius_m <= 0.0) {
        throw std::invalid_argument("cell layout: radius must be positive");
    }
    if (cells != 7) {
        throw std::invalid_argument("cell layout: only the 7-cell cluster is supported");
    }
    CellLayout layout;
    layout.radius_m = radius_m;
    layout.sites.push_back({0.0, 0.0});
    const double ring = std::sqrt(3.0) * radius_m;
    for (int k = 0; k < 6; ++k) {
        const double a = (30.0 + 60.0 * k) * M_PI / 180.0;
        layout.sites.push_back({ring * std::cos(a), ring * std::sin(a)});
    }
    return layout;
}

Trajectory::Trajectory(std::vector<Point> waypoints, double speed_kmh, bool loop)
    : waypoints_(std::move(waypoints)), speed_kmh_(speed_kmh), loop_(loop) {
    if (waypoints_.size() < 2) {
        throw std::invalid_argument("trajectory: need at least two waypoints");
    }
    if (!(speed_kmh_ > 0.0)) {
        throw std::invalid_argument("trajectory: speed must be positive");
    }
    cumulative_.push_back(0.0);
    for (std::size_t i = 1; i < waypoints_.size(); ++i) {
        cumulative_.push_back(cumulative_.back() + distance(waypoints_[i - 1], waypoints_[i]));
    }
    if (loop_) {
        cumulative_.push_back(cumulative_.back() + distance(waypoints_.back(), waypoints_.front()));
    }
    if (cumulative_.back() <= 0.0) {
        throw std::invalid_argument("trajectory: zero-length path");
    }
}

SimTime Trajectory::lap_time() const { return SimTime::from_seconds_f(length_m() / speed_mps()); }

Point Trajectory::position_at(SimTime t) const {
    double s = speed_mps() * t.seconds();
    const double total = length_m();
    if (loop_) {
        s = std::fmod(s, total);
    } else if (s >= total) {
        return waypoints_.back();
    }
    // cumulative_[i] is the arc length at the start of segment i.
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    const auto seg = static_cast<std::size_t>(std::distance(cumulative_.begin(), it)) - 1;
    const Point a = waypoints_[seg];
    const Point b = waypoints_[(seg + 1) % waypoints_.size()];
    const double len = cumulative_[seg + 1] - cumulative_[seg];
    const double f = len > 0.0 ? (s - cumulative_[seg]) / len : 0.0;
    return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
}

std::vector<Point> load_waypoints(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open trajectory file " + path.string());
    }
    std::vector<Point> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ss(line);
        Point p;
        if (!(ss >> p.x)) {
            continue;
        }
        std::string extra;
        if (!(ss >> p.y) || (ss >> extra)) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected 'x y'");
        }
        pts.push_back(p);
    }
    return pts;
}

std::vector<Point> default_loop(double radius_m, std::size_t vertices) {
    std::vector<Point> pts;
    pts.reserve(vertices);
    for (std::size_t i = 0; i < vertices; ++i) {
        const double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(vertices);
        pts.push_back({radius_m * std::cos(a), radius_m * std::sin(a)});
    }
    return pts;
}

void HandoffPolicy::validate() const {
    if (margin_db < 0.0) {
        throw std::invalid_argument("handoff: margin must be >= 0");
    }
}

CellId select_serving_cell(std::span<const double> rx_power_dbm, CellId current, double margin_db) {
    if (current >= rx_power_dbm.size()) {
        throw std::out_of_range("select_serving_cell: invalid current cell");
    }
    const auto best = static_cast<CellId>(
        std::distance(rx_power_dbm.begin(), std::max_element(rx_power_dbm.begin(), rx_power_dbm.end())));
    if (best != current && rx_power_dbm[best] > rx_power_dbm[current] + margin_db) {
        return best;
    }
    return current;
}

std::vector<double> received_powers_dbm(Point pos, const CellLayout& layout, const PathLossModel& model,
                                        const TxBudget& budget, std::span<const double> shadow_db) {
    std::vector<double> rx(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const double d = std::max(distance(pos, layout.sites[i]), kMinDistanceM);
        const double s = i < shadow_db.size() ? shadow_db[i] : 0.0;
        rx[i] = budget.eirp_plus_rx_gain_dbm() - path_loss_db(model, d, s);
    }
    return rx;
}

CellId serving_cell(Point pos, const CellLayout& layout, CellId current, const HandoffPolicy& policy,
                    const PathLossModel& model, const TxBudget& budget) {
    const auto rx = received_powers_dbm(pos, layout, model, budget);
    return select_serving_cell(rx, current, policy.margin_db);
}

}  // namespace wimaxtv
