#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wimaxtv/metrics.hpp"

using namespace wimaxtv;

namespace {

MediaPacket pkt(std::uint32_t size, SimTime gen) {
    MediaPacket p;
    p.size = size;
    p.gen_time = gen;
    return p;
}

SimTime ms(std::int64_t v) { return SimTime::from_ms(v); }

}  // namespace

TEST_CASE("plr") {
    CHECK(plr(0, 100).value == 0.0);
    CHECK(plr(1, 999).value == 0.001);
    CHECK(plr(5, 5).value == 0.5);
    const auto undef = plr(0, 0);
    CHECK_FALSE(undef.defined);
    CHECK(undef.value == 0.0);
}

TEST_CASE("delay oracles") {
    const double qpsk = 20.0 + 1460.0 * 8.0 / 3.17e6 * 1000.0;
    CHECK(std::abs(qpsk - 23.68) < 0.005);
    CHECK(std::abs(20.0 + transmission_delay_ms(1460, 3.17e6) - qpsk) < 1e-12);
    CHECK(std::abs(20.0 + transmission_delay_ms(1460, 14.26e6) - 20.82) < 0.005);
    CHECK(e2e_delay_ms(ms(100), ms(123)) == 23.0);

    DelayComponents c;
    c.d_prop_ms = 15.0;
    c.d_proc_ms = 5.0;
    c.d_trans_ms = transmission_delay_ms(1460, 3.17e6);
    CHECK(c.total_ms() == doctest::Approx(qpsk));
    DelayComponents queue_only;
    queue_only.d_queue_ms = 7.5;
    CHECK(queue_only.total_ms() == 7.5);
    c.q_hops = 2;
    CHECK(c.total_ms() == doctest::Approx(2 * qpsk));
    c.d_queue_ms = -1.0;
    CHECK_THROWS(c.total_ms());
}

TEST_CASE("jitter") {
    CHECK(jitter_ms(ms(41), ms(40)) == 1.0);
    CHECK(jitter_ms(ms(80), ms(81)) == -1.0);

    JitterTracker t;
    CHECK_FALSE(t.observe(ms(0), ms(0)).has_value());
    CHECK(*t.observe(ms(40), ms(41)) == 1.0);
    CHECK(*t.observe(ms(80), ms(80)) == -1.0);

    // a constant shift gives zero jitter everywhere
    JitterTracker shifted;
    shifted.observe(ms(0), ms(23));
    for (int i = 1; i < 100; ++i) {
        CHECK(*shifted.observe(ms(40 * i), ms(40 * i + 23)) == 0.0);
    }
}

TEST_CASE("throughput") {
    CHECK(throughput_bps(0, SimTime::from_seconds(1)) == 0.0);
    CHECK(throughput_bps(125000, SimTime::from_seconds(1)) == 1e6);
    CHECK_THROWS(throughput_bps(1, SimTime()));
}

TEST_CASE("acceptability flags") {
    MetricsReport r;
    r.summary.plr = 1e-3;
    r.summary.mean_e2e_delay_ms = 399.9;
    r.summary.mean_jitter_ms = 49.9;
    r.summary.throughput_bps = 637000;
    CHECK(r.plr_acceptable());
    CHECK(r.delay_acceptable());
    CHECK(r.jitter_acceptable());
    CHECK(r.throughput_in_band());
    r.summary.plr = 1.1e-3;
    r.summary.mean_jitter_ms = 50.0;
    r.summary.throughput_bps = 6e6;
    CHECK_FALSE(r.plr_acceptable());
    CHECK_FALSE(r.jitter_acceptable());
    CHECK_FALSE(r.throughput_in_band());
}

TEST_CASE("collector windows and summary") {
    MetricsCollector c(SimTime::from_seconds(3) + ms(500), SimTime::from_seconds(1), 1);
    const auto r0 = c.report();
    CHECK(r0.windows.size() == 4);
    CHECK_FALSE(r0.plr_defined);

    for (int i = 0; i < 75; ++i) {
        const SimTime gen = ms(40 * i);
        c.record_delivery(0, pkt(1000, gen), gen + ms(25));
    }
    c.record_drop(0, pkt(500, ms(10)), ms(10), DropReason::Error);
    c.record_bler(ms(0), 0.2);
    c.record_bler(ms(1500), 0.4);
    c.record_handoff();
    const auto r = c.report();
    CHECK(r.delivered_packets == 75);
    CHECK(r.lost_packets == 1);
    CHECK(r.handoffs == 1);
    CHECK(r.summary.plr == doctest::Approx(1.0 / 76.0));
    CHECK(r.summary.mean_e2e_delay_ms == doctest::Approx(25.0));
    CHECK(r.summary.mean_jitter_ms == 0.0);
    CHECK(r.summary.throughput_bps == doctest::Approx(75000.0 * 8 / 3.5));
    CHECK(r.summary.data_dropped_bps == doctest::Approx(500.0 * 8 / 3.5));
    CHECK(r.summary.mean_bler == doctest::Approx(0.3));
    // 25 deliveries per second window
    CHECK(r.windows[0].throughput_bps == doctest::Approx(25000.0 * 8));
    CHECK(r.windows[1].mean_bler == doctest::Approx(0.4));
    CHECK(r.windows[3].throughput_bps == 0.0);
    for (const auto& w : r.windows) {
        CHECK(w.plr >= 0.0);
        CHECK(w.plr <= 1.0);
    }
}

TEST_CASE("dropping half the packets halves throughput") {
    MetricsCollector full(SimTime::from_seconds(10), SimTime::from_seconds(1), 1);
    MetricsCollector half(SimTime::from_seconds(10), SimTime::from_seconds(1), 1);
    for (int i = 0; i < 250; ++i) {
        const auto p = pkt(1200, ms(40 * i));
        full.record_delivery(0, p, p.gen_time + ms(21));
        if (i % 2 == 0) {
            half.record_delivery(0, p, p.gen_time + ms(21));
        } else {
            half.record_drop(0, p, p.gen_time, DropReason::Expired);
        }
    }
    CHECK(half.report().summary.throughput_bps == doctest::Approx(full.report().summary.throughput_bps / 2));
    CHECK(half.report().summary.plr == 0.5);
}

TEST_CASE("merge adds totals") {
    MetricsCollector a(SimTime::from_seconds(2), SimTime::from_seconds(1), 1);
    MetricsCollector b(SimTime::from_seconds(2), SimTime::from_seconds(1), 1);
    a.record_delivery(0, pkt(100, ms(0)), ms(30));
    b.record_drop(0, pkt(100, ms(0)), ms(1200), DropReason::Overflow);
    b.record_handoff();
    a.merge(b);
    const auto r = a.report();
    CHECK(r.summary.plr == 0.5);
    CHECK(r.handoffs == 1);
    CHECK(r.windows[1].plr == 1.0);
    MetricsCollector other(SimTime::from_seconds(3), SimTime::from_seconds(1), 1);
    CHECK_THROWS(a.merge(other));
}
