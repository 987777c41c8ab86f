#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "wimaxtv/sim_time.hpp"

namespace wimaxtv {

enum class Modulation { Qpsk, Qam16, Qam64 };

struct CodeRate {
    int num = 1;
    int den = 2;
    constexpr bool operator==(const CodeRate&) const = default;
};

/// One row of the mobile WiMAX 5 MHz downlink/uplink rate table.
struct McsEntry {
    Modulation modulation = Modulation::Qpsk;
    CodeRate code_rate;
    double bits_per_symbol = 0.0;
    double min_sinr_db = 0.0;
    double dl_rate_mbps = 0.0;
    double ul_rate_mbps = 0.0;
    int order_index = 0;
    /// Config name, e.g. "qpsk12", "64qam34".
    std::string_view name;

    double dl_rate_bps() const { return dl_rate_mbps * 1e6; }
};

inline constexpr std::size_t kMcsCount = 7;

/// The seven MCS rows, ordered from the most robust (index 0) upwards.
std::span<const McsEntry, kMcsCount> mcs_table();

const McsEntry& mcs_at(int order_index);
std::optional<McsEntry> find_mcs(std::string_view name);

struct PhyConfig {
    SimTime frame_duration = SimTime::from_ms(5);
    /// Share of the TDD frame given to the downlink, in (0, 1].
    double dl_fraction = 2.0 / 3.0;
    double channel_bw_mhz = 5.0;

    void validate() const;
};

/// Downlink bytes available to the MAC in one frame at the given MCS.
std::int64_t frame_capacity_bytes(const McsEntry& mcs, const PhyConfig& cfg);

}  // namespace wimaxtv
