#include "wimaxtv/phy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wimaxtv {

namespace {

constexpr std::array<McsEntry, kMcsCount> kTable{{
    {Modulation::Qpsk, {1, 2}, 1.0, 5.0, 3.17, 2.28, 0, "qpsk12"},
    {Modulation::Qpsk, {3, 4}, 1.5, 8.0, 4.75, 3.43, 1, "qpsk34"},
    {Modulation::Qam16, {1, 2}, 2.0, 10.5, 6.34, 4.57, 2, "16qam12"},
    {Modulation::Qam16, {3, 4}, 3.0, 14.0, 9.5, 6.85, 3, "16qam34"},
    {Modulation::Qam64, {1, 2}, 3.0, 16.0, 9.5, 6.85, 4, "64qam12"},
    {Modulation::Qam64, {2, 3}, 4.0, 18.0, 12.6, 9.14, 5, "64qam23"},
    {Modulation::Qam64, {3, 4}, 4.0, 20.0, 14.26, 10.28, 6, "64qam34"},
}};

}  // namespace

std::span<const McsEntry, kMcsCount> mcs_table() { return kTable; }

const McsEntry& mcs_at(int order_index) {
    if (order_index < 0 || order_index >= static_cast<int>(kMcsCount)) {
        throw std::out_of_range("mcs_at: order index " + std::to_string(order_index));
    }
    return kTable[static_cast<std::size_t>(order_index)];
}

std::optional<McsEntry> find_mcs(std::string_view name) {
    for (const auto& m : kTable) {
        if (m.name == name) {
            return m;
        }
    }
    return std::nullopt;
}

void PhyConfig::validate() const {
    if (!(dl_fraction > 0.0 && dl_fraction <= 1.0)) {
        throw std::invalid_argument("PhyConfig: dl_fraction must be in (0, 1]");
    }
    if (frame_duration.us() <= 0) {
        throw std::invalid_argument("PhyConfig: frame_duration must be positive");
    }
}

std::int64_t frame_capacity_bytes(const McsEntry& mcs, const PhyConfig& cfg) {
    const double bits = mcs.dl_rate_bps() * cfg.frame_duration.seconds() * cfg.dl_fraction;
    // The epsilon keeps exact byte counts (e.g. 2/3 splits) from flooring one short.
    return static_cast<std::int64_t>(std::floor(bits / 8.0 + 1e-9));
}

}  // namespace wimaxtv
