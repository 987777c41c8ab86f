#include "wimaxtv/amc.hpp"

#include <stdexcept>

namespace wimaxtv {

AmcProfile AmcProfile::amc1() {
    return AmcProfile{"amc1",
                      {{{-20.0, 2.0},
                        {5.0, 5.9},
                        {8.0, 8.9},
                        {11.0, 11.9},
                        {14.0, 14.9},
                        {17.0, 17.9},
                        {19.0, 19.9}}}};
}

AmcProfile AmcProfile::amc2() {
    return AmcProfile{"amc2",
                      {{{-20.0, 2.0},
                        {11.0, 11.9},
                        {14.0, 14.9},
                        {17.0, 17.9},
                        {20.0, 20.9},
                        {23.0, 23.9},
                        {25.0, 25.9}}}};
}

void AmcProfile::validate() const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!(rows[i].minimum_entry_db > rows[i].mandatory_exit_db)) {
            throw std::invalid_argument("AMC profile " + name + ": entry must exceed exit");
        }
        if (i > 0 && (rows[i].minimum_entry_db <= rows[i - 1].minimum_entry_db ||
                      rows[i].mandatory_exit_db <= rows[i - 1].mandatory_exit_db)) {
            throw std::invalid_argument("AMC profile " + name + ": thresholds must increase with MCS order");
        }
    }
}

std::optional<AmcProfile> find_amc_profile(std::string_view name) {
    if (name == "amc1") {
        return AmcProfile::amc1();
    }
    if (name == "amc2") {
        return AmcProfile::amc2();
    }
    return std::nullopt;
}

const McsEntry& select_initial(double sinr_db, const AmcProfile& profile) {
    for (int i = static_cast<int>(kMcsCount) - 1; i > 0; --i) {
        if (profile.at(i).minimum_entry_db <= sinr_db) {
            return mcs_at(i);
        }
    }
    return mcs_at(0);
}

LinkAdaptation LinkAdaptation::fixed(const McsEntry& mcs) { return LinkAdaptation(std::nullopt, mcs_at(mcs.order_index)); }

LinkAdaptation LinkAdaptation::adaptive(AmcProfile profile, const McsEntry& initial) {
    profile.validate();
    LinkAdaptation la(std::move(profile), mcs_at(initial.order_index));
    la.primed_ = true;
    return la;
}

LinkAdaptation LinkAdaptation::adaptive(AmcProfile profile) {
    profile.validate();
    return LinkAdaptation(std::move(profile), mcs_at(0));
}

const McsEntry& LinkAdaptation::step(double sinr_db, SimTime now) {
    if (!profile_) {
        return *current_;
    }
    const McsEntry* next = current_;
    if (!primed_) {
        current_ = &select_initial(sinr_db, *profile_);
        last_change_ = now;
        primed_ = true;
        return *current_;
    }
    if (sinr_db <= profile_->at(current_->order_index).mandatory_exit_db) {
        next = &select_initial(sinr_db, *profile_);
    } else {
        const McsEntry& best = select_initial(sinr_db, *profile_);
        if (best.order_index > current_->order_index) {
            next = &best;
        }
    }
    if (next != current_) {
        current_ = next;
        last_change_ = now;
        ++transitions_;
    }
    return *current_;
}

}  // namespace wimaxtv
