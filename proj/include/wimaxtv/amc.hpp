#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "wimaxtv/phy.hpp"
#include "wimaxtv/sim_time.hpp"

namespace wimaxtv {

struct AmcThresholds {
    double mandatory_exit_db = 0.0;
    double minimum_entry_db = 0.0;
};

/// Entry/exit SINR thresholds for each MCS row, indexed by order_index.
struct AmcProfile {
    std::string name;
    std::array<AmcThresholds, kMcsCount> rows{};

    static AmcProfile amc1();
    /// Conservative profile: every non-floor threshold 6 dB above AMC-1.
    static AmcProfile amc2();

    const AmcThresholds& at(int order_index) const { return rows.at(static_cast<std::size_t>(order_index)); }
    /// Checks entry > exit per row and strictly increasing thresholds.
    void validate() const;
};

std::optional<AmcProfile> find_amc_profile(std::string_view name);

/// Highest-order MCS whose minimum entry threshold is <= sinr; the floor MCS otherwise.
const McsEntry& select_initial(double sinr_db, const AmcProfile& profile);

/// Per-link MCS controller. Fixed mode pins one MCS; adaptive mode runs the
/// entry/exit hysteresis over an AmcProfile. Upgrades may skip levels.
class LinkAdaptation {
public:
    static LinkAdaptation fixed(const McsEntry& mcs);
    static LinkAdaptation adaptive(AmcProfile profile, const McsEntry& initial);
    static LinkAdaptation adaptive(AmcProfile profile);

    const McsEntry& step(double sinr_db, SimTime now);

    const McsEntry& current() const { return *current_; }
    bool is_adaptive() const { return profile_.has_value(); }
    const AmcProfile* profile() const { return profile_ ? &*profile_ : nullptr; }
    SimTime last_change() const { return last_change_; }
    std::size_t transitions() const { return transitions_; }

private:
    LinkAdaptation(std::optional<AmcProfile> profile, const McsEntry& current)
        : profile_(std::move(profile)), current_(&current) {}

    std::optional<AmcProfile> profile_;
    const McsEntry* current_;
    SimTime last_change_;
    std::size_t transitions_ = 0;
    bool primed_ = false;
};

}  // namespace wimaxtv
