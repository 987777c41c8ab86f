#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "wimaxtv/mac.hpp"

using namespace wimaxtv;

namespace {

MediaPacket pkt(std::uint64_t id, std::uint32_t size, SimTime gen = SimTime(), std::uint32_t header = 0) {
    MediaPacket p;
    p.id = id;
    p.size = size;
    p.header = header;
    p.gen_time = gen;
    return p;
}

ServiceFlow flow(std::uint32_t id, ServiceClassKind k, std::int64_t limit = 1 << 20) {
    return ServiceFlow(id, ServiceClass::defaults(k), limit);
}

constexpr double kQpsk12 = 3.17e6;

}  // namespace

TEST_CASE("service class names") {
    for (auto k : {ServiceClassKind::Ugs, ServiceClassKind::ErtPs, ServiceClassKind::RtPs, ServiceClassKind::NrtPs,
                   ServiceClassKind::Be}) {
        CHECK(parse_service_class(to_string(k)) == k);
        CHECK_NOTHROW(ServiceClass::defaults(k).validate());
    }
    CHECK_FALSE(parse_service_class("gold").has_value());
    auto ugs = ServiceClass::defaults(ServiceClassKind::Ugs);
    ugs.min_reserved_rate_mbps = 0.1;
    CHECK_THROWS(ugs.validate());
    auto rt = ServiceClass::defaults(ServiceClassKind::RtPs);
    rt.polling_interval = 0;
    CHECK_THROWS(rt.validate());
}

TEST_CASE("enqueue is drop-tail at the byte limit") {
    auto f = flow(0, ServiceClassKind::RtPs, 3000);
    CHECK(f.enqueue(pkt(0, 1500)));
    CHECK(f.enqueue(pkt(1, 1500)));
    CHECK_FALSE(f.enqueue(pkt(2, 1)));
    CHECK(f.counters().dropped_overflow == 1);
    CHECK(f.counters().enqueued == 3);
    CHECK(f.queued_bytes() == 3000);

    auto exact = flow(1, ServiceClassKind::Be, 1460);
    CHECK(exact.enqueue(pkt(0, 1460)));
}

TEST_CASE("one rtPS flow on a QPSK 1/2 frame") {
    std::vector<ServiceFlow> flows;
    flows.push_back(flow(0, ServiceClassKind::RtPs));
    flows[0].enqueue(pkt(0, 1500));
    flows[0].enqueue(pkt(1, 1500));
    FrameScheduler s;
    const auto a = s.schedule(flows, 1981, 0, SimTime());
    CHECK(a.total() == 1981);
    CHECK(a.granted(0) == 1981);
    RngStream rng(1, "bler");
    const auto out = transmit(a, flows, 0.0, rng, SimTime(), kQpsk12);
    CHECK(out.delivered.size() == 1);
    CHECK(flows[0].queued_bytes() == 1019);
}

TEST_CASE("BE only gets leftover capacity") {
    std::vector<ServiceFlow> flows;
    flows.push_back(flow(0, ServiceClassKind::Be));
    flows.push_back(flow(1, ServiceClassKind::RtPs));
    for (int i = 0; i < 4; ++i) {
        flows[0].enqueue(pkt(static_cast<std::uint64_t>(i), 1000));
        flows[1].enqueue(pkt(static_cast<std::uint64_t>(i), 1000));
    }
    FrameScheduler s;
    const auto a = s.schedule(flows, 1981, 0, SimTime());
    CHECK(a.granted(1) == 1981);
    CHECK(a.granted(0) == 0);

    const auto b = s.schedule(flows, 5000, 0, SimTime());
    CHECK(b.granted(1) == 4000);
    CHECK(b.granted(0) == 1000);
    CHECK(b.grants.front().flow_index == 1);
}

TEST_CASE("no flows, empty allocation") {
    std::vector<ServiceFlow> none;
    FrameScheduler s;
    const auto a = s.schedule(none, 1981, 0, SimTime());
    CHECK(a.grants.empty());
    CHECK(a.total() == 0);
}

TEST_CASE("strict priority order across classes") {
    std::vector<ServiceFlow> flows;
    flows.push_back(flow(0, ServiceClassKind::Be));
    flows.push_back(flow(1, ServiceClassKind::NrtPs));
    flows.push_back(flow(2, ServiceClassKind::RtPs));
    flows.push_back(flow(3, ServiceClassKind::ErtPs));
    for (auto& f : flows) {
        f.enqueue(pkt(0, 400));
    }
    FrameScheduler s;
    const auto a = s.schedule(flows, 100000, 0, SimTime());
    REQUIRE(a.grants.size() == 4);
    CHECK(a.grants[0].flow_index == 3);
    CHECK(a.grants[1].flow_index == 2);
    CHECK(a.grants[2].flow_index == 1);
    CHECK(a.grants[3].flow_index == 0);
}

TEST_CASE("polling intervals gate rtPS and nrtPS") {
    std::vector<ServiceFlow> flows;
    flows.push_back(flow(0, ServiceClassKind::NrtPs));
    for (int i = 0; i < 20; ++i) {
        flows[0].enqueue(pkt(static_cast<std::uint64_t>(i), 100));
    }
    FrameScheduler s;
    for (std::int64_t frame = 0; frame < 8; ++frame) {
        const auto a = s.schedule(flows, 150, frame, SimTime());
        CHECK((a.total() > 0) == (frame % 4 == 0));
    }
}

TEST_CASE("ertPS is capped per frame and silent when empty") {
    std::vector<ServiceFlow> flows;
    flows.push_back(flow(0, ServiceClassKind::ErtPs));
    FrameScheduler s;
    CHECK(s.schedule(flows, 8000, 0, SimTime()).total() == 0);
    for (int i = 0; i < 5; ++i) {
        flows[0].enqueue(pkt(static_cast<std::uint64_t>(i), 1460));
    }
    // 1.0 Mbps over 5 ms = 625 bytes
    CHECK(s.schedule(flows, 8000, 0, SimTime()).total() == 625);
}

TEST_CASE("UGS receives its fixed grant every frame, padding when idle") {
    std::vector<ServiceFlow> flows;
    flows.push_back(flow(0, ServiceClassKind::Ugs));
    flows.push_back(flow(1, ServiceClassKind::Be));
    flows[1].enqueue(pkt(0, 5000));
    FrameScheduler s;
    const auto a = s.schedule(flows, 1000, 0, SimTime());
    CHECK(a.granted(0) == 400);  // 0.64 Mbps * 5 ms / 8
    CHECK(a.granted(1) == 600);
    RngStream rng(1, "bler");
    transmit(a, flows, 0.0, rng, SimTime(), kQpsk12);
    CHECK(flows[1].queued_bytes() == 4400);
}

TEST_CASE("expired real-time packets are dropped before granting") {
    std::vector<ServiceFlow> flows;
    flows.push_back(flow(0, ServiceClassKind::RtPs));
    flows.push_back(flow(1, ServiceClassKind::Be));
    auto p = pkt(0, 100);
    p.deadline = SimTime::from_ms(400);
    flows[0].enqueue(p);
    flows[1].enqueue(p);
    FrameScheduler s;
    CHECK(s.schedule(flows, 10, 0, SimTime::from_ms(400)).expired.empty());
    const auto a = s.schedule(flows, 10, 0, SimTime::from_ms(405));
    REQUIRE(a.expired.size() == 1);
    CHECK(a.expired[0].first == 0);
    CHECK(flows[0].counters().dropped_expired == 1);
    CHECK(flows[1].queued_packets() == 1);
}

TEST_CASE("transmit with bler 0 and 1") {
    for (double p : {0.0, 1.0}) {
        std::vector<ServiceFlow> flows;
        flows.push_back(flow(0, ServiceClassKind::RtPs));
        for (int i = 0; i < 10; ++i) {
            flows[0].enqueue(pkt(static_cast<std::uint64_t>(i), 100));
        }
        FrameScheduler s;
        RngStream rng(3, "bler");
        const auto out = transmit(s.schedule(flows, 5000, 0, SimTime()), flows, p, rng, SimTime(), kQpsk12);
        CHECK(out.delivered.size() == (p == 0.0 ? 10u : 0u));
        CHECK(out.errored.size() == (p == 0.0 ? 0u : 10u));
        CHECK(flows[0].counters().dropped_error == (p == 0.0 ? 0u : 10u));
    }
}

TEST_CASE("bler 0.1 over 1e5 packets") {
    std::vector<ServiceFlow> flows;
    flows.push_back(flow(0, ServiceClassKind::RtPs, std::int64_t{1} << 40));
    for (int i = 0; i < 100000; ++i) {
        flows[0].enqueue(pkt(static_cast<std::uint64_t>(i), 100));
    }
    FrameScheduler s;
    RngStream rng(2024, "bler");
    std::size_t errored = 0;
    std::size_t total = 0;
    while (!flows[0].empty()) {
        const auto out = transmit(s.schedule(flows, 8000, 0, SimTime()), flows, 0.1, rng, SimTime(), kQpsk12);
        errored += out.errored.size();
        total += out.errored.size() + out.delivered.size();
    }
    CHECK(total == 100000);
    CHECK(std::abs(static_cast<double>(errored) / 1e5 - 0.1) < 0.005);
}

TEST_CASE("completion times follow cumulative air time") {
    std::vector<ServiceFlow> flows;
    flows.push_back(flow(0, ServiceClassKind::RtPs));
    flows[0].enqueue(pkt(0, 1460));
    flows[0].enqueue(pkt(1, 1460));
    FrameScheduler s;
    RngStream rng(3, "bler");
    const auto out = transmit(s.schedule(flows, 10000, 0, SimTime()), flows, 0.0, rng, SimTime::from_ms(20), kQpsk12);
    REQUIRE(out.delivered.size() == 2);
    CHECK(out.delivered[0].at.us() == 20000 + std::llround(1460 * 8 / kQpsk12 * 1e6));
    CHECK(out.delivered[1].at.us() == 20000 + std::llround(2920 * 8 / kQpsk12 * 1e6));
}

TEST_CASE("random mixes: grant bound, conservation, FIFO and priority") {
    RngStream rng(77, "mac-property");
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ServiceFlow> flows;
        const int n = 1 + static_cast<int>(rng.uniform() * 6);
        for (int i = 0; i < n; ++i) {
            const auto kind = static_cast<ServiceClassKind>(static_cast<int>(rng.uniform() * 5));
            flows.push_back(flow(static_cast<std::uint32_t>(i), kind, 20000 + static_cast<std::int64_t>(rng.uniform() * 40000)));
        }
        FrameScheduler s;
        std::vector<std::uint64_t> next_id(flows.size(), 0);
        std::vector<std::uint64_t> last_done(flows.size(), 0);
        std::vector<bool> any_done(flows.size(), false);
        for (std::int64_t frame = 0; frame < 200; ++frame) {
            const SimTime now = SimTime::from_ms(5 * frame);
            for (std::size_t i = 0; i < flows.size(); ++i) {
                if (rng.uniform() < 0.5) {
                    auto p = pkt(next_id[i]++, 1 + static_cast<std::uint32_t>(rng.uniform() * 1460), now, 40);
                    p.deadline = now + SimTime::from_ms(100);
                    flows[i].enqueue(p);
                }
            }
            const std::int64_t cap = static_cast<std::int64_t>(rng.uniform() * 4000);
            const auto a = s.schedule(flows, cap, frame, now);
            CHECK(a.total() <= cap);
            int prev_rank = -1;
            for (const auto& g : a.grants) {
                const int rank = static_cast<int>(flows[g.flow_index].service_class().kind);
                CHECK(rank >= prev_rank);
                prev_rank = rank;
            }
            const auto out = transmit(a, flows, 0.05, rng, now, kQpsk12);
            std::vector<TxRecord> done = out.delivered;
            done.insert(done.end(), out.errored.begin(), out.errored.end());
            std::stable_sort(done.begin(), done.end(), [](const TxRecord& x, const TxRecord& y) { return x.at < y.at; });
            for (const auto& r : done) {
                if (any_done[r.flow_index]) {
                    CHECK(r.packet.id > last_done[r.flow_index]);
                }
                any_done[r.flow_index] = true;
                last_done[r.flow_index] = r.packet.id;
            }
        }
        for (const auto& f : flows) {
            const auto& c = f.counters();
            CHECK(c.enqueued == c.delivered + c.dropped() + f.queued_packets());
            CHECK(f.queued_bytes() <= f.queue_limit());
        }
    }
}

TEST_CASE("rtPS beats BE under scarcity with equal demand") {
    std::vector<ServiceFlow> flows;
    flows.push_back(flow(0, ServiceClassKind::Be));
    flows.push_back(flow(1, ServiceClassKind::RtPs));
    FrameScheduler s;
    RngStream rng(5, "bler");
    std::uint64_t id = 0;
    for (std::int64_t frame = 0; frame < 1000; ++frame) {
        const SimTime now = SimTime::from_ms(5 * frame);
        for (auto& f : flows) {
            auto p = pkt(id++, 1000, now);
            p.deadline = now + SimTime::from_ms(400);
            f.enqueue(p);
        }
        transmit(s.schedule(flows, 1500, frame, now), flows, 0.0, rng, now, kQpsk12);
        CHECK(flows[1].counters().delivered >= flows[0].counters().delivered);
    }
}
