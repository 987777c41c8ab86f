#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wimaxtv/phy.hpp"

using namespace wimaxtv;

TEST_CASE("mcs table rows") {
    struct Row {
        Modulation m;
        int num, den;
        double bits, sinr, dl, ul;
    };
    const Row expected[] = {
        {Modulation::Qpsk, 1, 2, 1.0, 5.0, 3.17, 2.28},   {Modulation::Qpsk, 3, 4, 1.5, 8.0, 4.75, 3.43},
        {Modulation::Qam16, 1, 2, 2.0, 10.5, 6.34, 4.57}, {Modulation::Qam16, 3, 4, 3.0, 14.0, 9.5, 6.85},
        {Modulation::Qam64, 1, 2, 3.0, 16.0, 9.5, 6.85},  {Modulation::Qam64, 2, 3, 4.0, 18.0, 12.6, 9.14},
        {Modulation::Qam64, 3, 4, 4.0, 20.0, 14.26, 10.28},
    };
    const auto t = mcs_table();
    REQUIRE(t.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) {
        CAPTURE(i);
        CHECK(t[i].modulation == expected[i].m);
        CHECK(t[i].code_rate == CodeRate{expected[i].num, expected[i].den});
        CHECK(t[i].bits_per_symbol == expected[i].bits);
        CHECK(t[i].min_sinr_db == expected[i].sinr);
        CHECK(t[i].dl_rate_mbps == expected[i].dl);
        CHECK(t[i].ul_rate_mbps == expected[i].ul);
        CHECK(t[i].order_index == static_cast<int>(i));
    }
}

TEST_CASE("min sinr nondecreasing, rates nondecreasing") {
    const auto t = mcs_table();
    for (std::size_t i = 1; i < t.size(); ++i) {
        CHECK(t[i].min_sinr_db >= t[i - 1].min_sinr_db);
        CHECK(t[i].dl_rate_mbps >= t[i - 1].dl_rate_mbps);
    }
}

TEST_CASE("lookup by name") {
    CHECK(find_mcs("16qam34")->order_index == 3);
    CHECK(find_mcs("64qam34")->dl_rate_mbps == 14.26);
    CHECK_FALSE(find_mcs("qam256").has_value());
    CHECK_THROWS(mcs_at(7));
    CHECK_THROWS(mcs_at(-1));
}

TEST_CASE("frame capacity") {
    PhyConfig full;
    full.dl_fraction = 1.0;
    // floor(rate * 5 ms / 8)
    CHECK(frame_capacity_bytes(mcs_at(0), full) == 1981);
    CHECK(frame_capacity_bytes(mcs_at(6), full) == 8912);
    PhyConfig cfg;
    CHECK(frame_capacity_bytes(mcs_at(0), cfg) == static_cast<std::int64_t>(std::floor(3.17e6 * 0.005 * 2 / 3 / 8)));
    for (std::size_t i = 0; i < kMcsCount; ++i) {
        CHECK(frame_capacity_bytes(mcs_table()[i], cfg) <= frame_capacity_bytes(mcs_table()[i], full));
    }
    PhyConfig bad;
    bad.dl_fraction = 0.0;
    CHECK_THROWS(bad.validate());
    bad.dl_fraction = 1.5;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("a second of frame capacities matches the rate within frame quantisation") {
    PhyConfig cfg;
    for (const auto& m : mcs_table()) {
        const double per_second = static_cast<double>(frame_capacity_bytes(m, cfg)) * 200.0;
        const double exact = m.dl_rate_bps() * cfg.dl_fraction / 8.0;
        CHECK(per_second <= exact + 1e-6);
        CHECK(exact - per_second < 200.0);
    }
}
