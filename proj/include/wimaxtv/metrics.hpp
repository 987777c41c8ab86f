#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wimaxtv/mac.hpp"
#include "wimaxtv/sim_time.hpp"
#include "wimaxtv/traffic.hpp"

namespace wimaxtv {

/// Acceptability bounds for video-on-demand delivery.
namespace qos_bounds {
inline constexpr double kMaxPlr = 1e-3;
inline constexpr double kMaxDelayMs = 400.0;
inline constexpr double kMaxJitterMs = 50.0;
/// Advisory rate band; read as kbps.
inline constexpr double kMinThroughputKbps = 221.0;
inline constexpr double kMaxThroughputKbps = 5311.0;
}  // namespace qos_bounds

/// Per-element delay terms, each in ms; the end-to-end delay is
/// q_hops * (proc + queue + trans + prop).
struct DelayComponents {
    int q_hops = 1;
    double d_proc_ms = 0.0;
    double d_queue_ms = 0.0;
    double d_trans_ms = 0.0;
    double d_prop_ms = 0.0;

    double total_ms() const;
};

struct PlrValue {
    double value = 0.0;
    /// False when nothing was lost or received; value is then 0.
    bool defined = true;
};

PlrValue plr(std::uint64_t lost, std::uint64_t received);

/// Air time of `bytes` at `rate_bps`, in ms.
double transmission_delay_ms(std::int64_t bytes, double rate_bps);

/// Delivery time minus generation time, in ms.
double e2e_delay_ms(SimTime gen_time, SimTime delivered_at);

/// t_actual - t_expected, in ms (signed).
double jitter_ms(SimTime t_actual, SimTime t_expected);

double throughput_bps(std::uint64_t delivered_bytes, SimTime window);

/// Per-flow jitter: the expected arrival is the previous arrival plus the
/// generation spacing of the two packets (40 ms between video frames, 0
/// between packets of one frame). The first packet of a flow yields nothing.
class JitterTracker {
public:
    /// Returns the jitter sample in ms, or nothing for the first packet.
    std::optional<double> observe(SimTime gen_time, SimTime arrival);

private:
    bool seen_ = false;
    SimTime last_gen_;
    SimTime last_arrival_;
};

struct WindowMetrics {
    double plr = 0.0;
    double mean_e2e_delay_ms = 0.0;
    double mean_jitter_ms = 0.0;
    double signed_jitter_ms = 0.0;
    double throughput_bps = 0.0;
    double data_dropped_bps = 0.0;
    double mean_bler = 0.0;
};

struct MetricsReport {
    WindowMetrics summary;
    bool plr_defined = true;
    std::uint64_t delivered_packets = 0;
    std::uint64_t lost_packets = 0;
    std::uint64_t handoffs = 0;
    std::vector<WindowMetrics> windows;

    bool plr_acceptable() const { return plr_defined && summary.plr <= qos_bounds::kMaxPlr; }
    bool delay_acceptable() const { return summary.mean_e2e_delay_ms < qos_bounds::kMaxDelayMs; }
    bool jitter_acceptable() const { return summary.mean_jitter_ms < qos_bounds::kMaxJitterMs; }
    /// Advisory only.
    bool throughput_in_band() const;
};

/// Accumulates delivery, loss and BLER observations for the subscriber's media
/// flows and folds them into per-window and whole-run averages.
class MetricsCollector {
public:
    MetricsCollector(SimTime duration, SimTime window, std::size_t flows);

    void record_delivery(std::size_t flow, const MediaPacket& pkt, SimTime at);
    void record_drop(std::size_t flow, const MediaPacket& pkt, SimTime at, DropReason reason);
    void record_bler(SimTime at, double bler);
    void record_handoff() { ++handoffs_; }

    /// Adds another collector's totals (same duration and window).
    void merge(const MetricsCollector& other);

    MetricsReport report() const;

private:
    struct Acc {
        std::uint64_t delivered = 0;
        std::uint64_t lost = 0;
        std::uint64_t delivered_bytes = 0;
        std::uint64_t dropped_bytes = 0;
        double delay_sum_ms = 0.0;
        double jitter_abs_sum_ms = 0.0;
        double jitter_sum_ms = 0.0;
        std::uint64_t jitter_samples = 0;
        double bler_sum = 0.0;
        std::uint64_t bler_samples = 0;

        void add(const Acc& o);
        WindowMetrics finish(SimTime span) const;
    };

    Acc& bin(SimTime at);

    SimTime duration_;
    SimTime window_;
    std::vector<Acc> windows_;
    Acc total_;
    std::vector<JitterTracker> jitter_;
    std::uint64_t handoffs_ = 0;
};

}  // namespace wimaxtv
