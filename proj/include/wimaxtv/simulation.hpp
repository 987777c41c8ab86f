#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wimaxtv/config.hpp"
#include "wimaxtv/mac.hpp"
#include "wimaxtv/metrics.hpp"
#include "wimaxtv/mobility.hpp"
#include "wimaxtv/traffic.hpp"

namespace wimaxtv {

struct FlowSnapshot {
    std::string name;
    ServiceClassKind service_class = ServiceClassKind::Be;
    FlowCounters counters;
    std::uint64_t queued_packets = 0;
};

struct ScenarioResult {
    MetricsReport report;
    /// Subscriber flows first (video, then audio if enabled), then background.
    std::vector<FlowSnapshot> flows;
    std::size_t media_flows = 0;
    std::uint64_t events = 0;
    std::uint64_t amc_transitions = 0;
    /// One line per fired event when requested.
    std::string event_log;
};

/// Inputs shared read-only between scenarios.
struct ScenarioInputs {
    std::shared_ptr<const VideoTrace> video;
    std::shared_ptr<const std::vector<Point>> waypoints;
};

ScenarioInputs load_inputs(const ScenarioConfig& cfg);

/// Runs one scenario on its own single-threaded engine.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const ScenarioInputs& inputs, bool record_log = false);

}  // namespace wimaxtv
