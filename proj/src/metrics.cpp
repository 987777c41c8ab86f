#include "wimaxtv/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace wimaxtv {

double DelayComponents::total_ms() const {
    if (q_hops < 0 || d_proc_ms < 0 || d_queue_ms < 0 || d_trans_ms < 0 || d_prop_ms < 0) {
        throw std::invalid_argument("delay components must be non-negative");
    }
    return q_hops * (d_proc_ms + d_queue_ms + d_trans_ms + d_prop_ms);
}

PlrValue plr(std::uint64_t lost, std::uint64_t received) {
    if (lost + received == 0) {
        return {0.0, false};
    }
    return {static_cast<double>(lost) / static_cast<double>(lost + received), true};
}

double transmission_delay_ms(std::int64_t bytes, double rate_bps) {
    return static_cast<double>(bytes) * 8.0 / rate_bps * 1e3;
}

double e2e_delay_ms(SimTime gen_time, SimTime delivered_at) {
    return static_cast<double>(delivered_at.us() - gen_time.us()) / 1e3;
}

double jitter_ms(SimTime t_actual, SimTime t_expected) {
    return static_cast<double>(t_actual.us() - t_expected.us()) / 1e3;
}

double throughput_bps(std::uint64_t delivered_bytes, SimTime window) {
    if (window.us() <= 0) {
        throw std::invalid_argument("throughput: window must be positive");
    }
    return static_cast<double>(delivered_bytes) * 8.0 / window.seconds();
}

std::optional<double> JitterTracker::observe(SimTime gen_time, SimTime arrival) {
    std::optional<double> out;
    if (seen_) {
        const std::int64_t expected = last_arrival_.us() + (gen_time.us() - last_gen_.us());
        out = static_cast<double>(arrival.us() - expected) / 1e3;
    }
    seen_ = true;
    last_gen_ = gen_time;
    last_arrival_ = arrival;
    return out;
}

bool MetricsReport::throughput_in_band() const {
    const double kbps = summary.throughput_bps / 1e3;
    return kbps >= qos_bounds::kMinThroughputKbps && kbps <= qos_bounds::kMaxThroughputKbps;
}

void MetricsCollector::Acc::add(const Acc& o) {
    delivered += o.delivered;
    lost += o.lost;
    delivered_bytes += o.delivered_bytes;
    dropped_bytes += o.dropped_bytes;
    delay_sum_ms += o.delay_sum_ms;
    jitter_abs_sum_ms += o.jitter_abs_sum_ms;
    jitter_sum_ms += o.jitter_sum_ms;
    jitter_samples += o.jitter_samples;
    bler_sum += o.bler_sum;
    bler_samples += o.bler_samples;
}

WindowMetrics MetricsCollector::Acc::finish(SimTime span) const {
    WindowMetrics w;
    w.plr = plr(lost, delivered).value;
    w.mean_e2e_delay_ms = delivered ? delay_sum_ms / static_cast<double>(delivered) : 0.0;
    if (jitter_samples) {
        w.mean_jitter_ms = jitter_abs_sum_ms / static_cast<double>(jitter_samples);
        w.signed_jitter_ms = jitter_sum_ms / static_cast<double>(jitter_samples);
    }
    w.throughput_bps = throughput_bps(delivered_bytes, span);
    w.data_dropped_bps = throughput_bps(dropped_bytes, span);
    w.mean_bler = bler_samples ? bler_sum / static_cast<double>(bler_samples) : 0.0;
    return w;
}

MetricsCollector::MetricsCollector(SimTime duration, SimTime window, std::size_t flows)
    : duration_(duration), window_(window), jitter_(flows) {
    if (duration.us() <= 0 || window.us() <= 0) {
        throw std::invalid_argument("metrics: duration and window must be positive");
    }
    const auto n = (duration.us() + window.us() - 1) / window.us();
    windows_.resize(static_cast<std::size_t>(n));
}

MetricsCollector::Acc& MetricsCollector::bin(SimTime at) {
    const auto idx = std::min<std::int64_t>(at.us() / window_.us(), static_cast<std::int64_t>(windows_.size()) - 1);
    return windows_[static_cast<std::size_t>(idx)];
}

void MetricsCollector::record_delivery(std::size_t flow, const MediaPacket& pkt, SimTime at) {
    const double delay = e2e_delay_ms(pkt.gen_time, at);
    const auto j = jitter_.at(flow).observe(pkt.gen_time, at);
    for (Acc* a : {&bin(at), &total_}) {
        ++a->delivered;
        a->delivered_bytes += pkt.size;
        a->delay_sum_ms += delay;
        if (j) {
            a->jitter_abs_sum_ms += std::abs(*j);
            a->jitter_sum_ms += *j;
            ++a->jitter_samples;
        }
    }
}

void MetricsCollector::record_drop(std::size_t, const MediaPacket& pkt, SimTime at, DropReason) {
    for (Acc* a : {&bin(at), &total_}) {
        ++a->lost;
        a->dropped_bytes += pkt.size;
    }
}

void MetricsCollector::record_bler(SimTime at, double p) {
    for (Acc* a : {&bin(at), &total_}) {
        a->bler_sum += p;
        ++a->bler_samples;
    }
}

void MetricsCollector::merge(const MetricsCollector& other) {
    if (other.window_ != window_ || other.windows_.size() != windows_.size()) {
        throw std::invalid_argument("metrics merge: window layout differs");
    }
    for (std::size_t i = 0; i < windows_.size(); ++i) {
        windows_[i].add(other.windows_[i]);
    }
    total_.add(other.total_);
    handoffs_ += other.handoffs_;
}

MetricsReport MetricsCollector::report() const {
    MetricsReport r;
    r.summary = total_.finish(duration_);
    r.plr_defined = total_.delivered + total_.lost > 0;
    r.delivered_packets = total_.delivered;
    r.lost_packets = total_.lost;
    r.handoffs = handoffs_;
    r.windows.reserve(windows_.size());
    for (std::size_t i = 0; i < windows_.size(); ++i) {
        const std::int64_t begin = static_cast<std::int64_t>(i) * window_.us();
        const std::int64_t span = std::min(window_.us(), duration_.us() - begin);
        r.windows.push_back(windows_[i].finish(SimTime::from_us(span)));
    }
    return r;
}

}  // namespace wimaxtv
