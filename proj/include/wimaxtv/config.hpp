#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wimaxtv/channel.hpp"
#include "wimaxtv/mac.hpp"
#include "wimaxtv/mobility.hpp"
#include "wimaxtv/phy.hpp"
#include "wimaxtv/sim_time.hpp"
#include "wimaxtv/traffic.hpp"

namespace wimaxtv {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RadioSettings {
    TxBudget tx;
    double frequency_mhz = 2500.0;
    double system_loss = 1.0;
    double bandwidth_mhz = 5.0;
    double noise_figure_db = 7.0;
    double bler_slope = 2.0;
    double erceg_gamma = 4.0;
    double erceg_sigma_db = 8.0;
    double erceg_x_f_db = 0.0;
    double erceg_x_h_db = 0.0;
    double erceg_d0_m = 100.0;
    double shadow_decorrelation_m = 50.0;
    double vehicular_bs_height_m = 15.0;
    int vehicular_sign = +1;

    LinkBudget link_budget() const;
};

struct TrafficSettings {
    /// "synthetic" or a trace file path.
    std::string video_trace = "synthetic";
    SyntheticTraceSpec synthetic;
    double video_fps = 25.0;
    bool audio = true;
    double audio_fps = 21.6;
    std::uint32_t audio_frame_bytes = 160;
    std::uint32_t mtu_payload = 1460;
    std::uint32_t header_bytes = 40;
    bool wrap = true;
    /// Server-to-BS delay standing in for the wired backbone (d_prop + d_proc).
    SimTime wired_delay = SimTime::from_ms(20);
};

struct MacSettings {
    std::int64_t queue_limit_bytes = 1 << 20;
    int rtps_polling_frames = 1;
    int nrtps_polling_frames = 4;
    double ertps_max_sustained_mbps = 1.0;
    double ugs_rate_mbps = 0.64;
    double max_latency_ms = 400.0;

    ServiceClass service_class(ServiceClassKind kind) const;
};

/// Downlink load from the cell's other (stationary) subscriber stations,
/// offered as constant-rate best-effort flows.
struct BackgroundSettings {
    int stations = 4;
    double rate_mbps = 0.6;
    std::uint32_t packet_bytes = 1460;
};

struct MobilitySettings {
    double radius_m = 200.0;
    int cells = 7;
    std::filesystem::path trajectory = std::filesystem::path(WIMAXTV_DATA_DIR) / "trajectory_loop.txt";
    bool loop = true;
    HandoffPolicy handoff;
};

struct SimulationSettings {
    PhyConfig phy;
    RadioSettings radio;
    TrafficSettings traffic;
    MacSettings mac;
    BackgroundSettings background;
    MobilitySettings mobility;
    SimTime window = SimTime::from_seconds(1);
};

/// One simulated run.
struct ScenarioConfig {
    std::string id;
    /// "fixed MCS name" (qpsk12 ... 64qam34) or AMC profile name (amc1, amc2).
    std::string mcs_mode = "amc1";
    double speed_kmh = 50.0;
    /// freespace, erceg, pedestrian or vehicular.
    std::string pathloss = "freespace";
    ServiceClassKind service_class = ServiceClassKind::RtPs;
    std::uint64_t seed = 1;
    SimTime duration = SimTime::from_seconds(300);
    SimulationSettings settings;

    PathLossModel path_loss_model() const;
    /// Throws ConfigError on unknown names or a media flow mapped to UGS.
    void validate() const;
};

struct ScenarioMatrix {
    std::vector<ScenarioConfig> scenarios;
    std::size_t case1 = 0;
    std::size_t case2 = 0;
    std::size_t case3 = 0;
    unsigned parallelism = 1;

    std::size_t size() const { return scenarios.size(); }
};

std::vector<std::string> valid_mcs_modes();
std::vector<std::string> valid_pathloss_models();
std::vector<std::string> valid_service_classes();

/// Parses the sectioned key/value format. An empty input yields the default
/// 99-scenario matrix. Relative paths resolve against `base_dir`.
ScenarioMatrix parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ScenarioMatrix parse_config_file(const std::filesystem::path& path);
ScenarioMatrix default_matrix();

}  // namespace wimaxtv
