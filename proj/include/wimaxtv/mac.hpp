#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wimaxtv/rng.hpp"
#include "wimaxtv/sim_time.hpp"
#include "wimaxtv/traffic.hpp"

namespace wimaxtv {

/// 802.16 scheduling classes, declared in strict priority order.
enum class ServiceClassKind { Ugs = 0, ErtPs, RtPs, NrtPs, Be };

std::string_view to_string(ServiceClassKind k);
std::optional<ServiceClassKind> parse_service_class(std::string_view name);

struct ServiceClass {
    ServiceClassKind kind = ServiceClassKind::RtPs;
    /// 0 means uncapped (not allowed for UGS / ertPS).
    double max_sustained_rate_mbps = 0.0;
    double min_reserved_rate_mbps = 0.0;
    /// Packets older than this are discarded (rtPS / ertPS only).
    double max_latency_ms = 400.0;
    /// Served only on frames where frame_index % polling_interval == 0.
    int polling_interval = 1;

    static ServiceClass defaults(ServiceClassKind kind);
    void validate() const;
    bool expires_packets() const { return kind == ServiceClassKind::RtPs || kind == ServiceClassKind::ErtPs; }
    /// Per-frame byte cap from the max sustained rate; nullopt when uncapped.
    std::optional<std::int64_t> frame_byte_cap(SimTime frame_duration) const;
};

struct FlowCounters {
    std::uint64_t enqueued = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped_expired = 0;
    std::uint64_t dropped_error = 0;
    std::uint64_t dropped_overflow = 0;
    std::uint64_t dropped_handoff = 0;

    std::uint64_t dropped() const { return dropped_expired + dropped_error + dropped_overflow + dropped_handoff; }
};

enum class DropReason { Expired, Error, Overflow, Handoff };
std::string_view to_string(DropReason r);

struct QueuedPacket {
    MediaPacket packet;
    /// Wire bytes still to send.
    std::int64_t remaining = 0;
    bool corrupted = false;
};

/// A downlink MAC connection with a drop-tail FIFO.
class ServiceFlow {
public:
    ServiceFlow(std::uint32_t id, ServiceClass cls, std::int64_t queue_limit_bytes = 1 << 20);

    std::uint32_t id() const { return id_; }
    const ServiceClass& service_class() const { return class_; }
    const FlowCounters& counters() const { return counters_; }
    std::int64_t queue_limit() const { return queue_limit_; }
    std::int64_t queued_bytes() const { return queued_bytes_; }
    std::size_t queued_packets() const { return queue_.size(); }
    bool empty() const { return queue_.empty(); }
    const std::deque<QueuedPacket>& queue() const { return queue_; }

    /// Appends the packet unless it would push the queue past its byte limit.
    bool enqueue(const MediaPacket& pkt);
    /// Counts an offered packet that is lost because the link is in handoff.
    void discard_in_handoff(const MediaPacket& pkt);
    /// Drops every queued packet whose deadline is before `now`.
    std::vector<MediaPacket> drop_expired(SimTime now);

    /// Sends up to `bytes` wire bytes from the head. Used by transmit().
    template <typename OnChunk, typename OnComplete>
    std::int64_t send(std::int64_t bytes, OnChunk&& on_chunk, OnComplete&& on_complete);

private:
    std::uint32_t id_;
    ServiceClass class_;
    std::int64_t queue_limit_;
    std::deque<QueuedPacket> queue_;
    std::int64_t queued_bytes_ = 0;
    FlowCounters counters_;
};

struct Grant {
    std::size_t flow_index = 0;
    std::int64_t bytes = 0;
};

/// Grants for one downlink subframe, in transmission order.
struct FrameAllocation {
    std::vector<Grant> grants;
    std::int64_t capacity = 0;
    /// Packets discarded for missing their deadline before granting.
    std::vector<std::pair<std::size_t, MediaPacket>> expired;

    std::int64_t total() const;
    std::int64_t granted(std::size_t flow_index) const;
};

/// Strict-priority scheduler UGS > ertPS > rtPS > nrtPS > BE with round robin
/// inside each class. Keeps the round-robin position between frames.
class FrameScheduler {
public:
    explicit FrameScheduler(SimTime frame_duration = SimTime::from_ms(5)) : frame_duration_(frame_duration) {}

    FrameAllocation schedule(std::span<ServiceFlow> flows, std::int64_t capacity, std::int64_t frame_index,
                             SimTime now);

private:
    SimTime frame_duration_;
    std::array<std::size_t, 5> rr_start_{};
};

struct TxRecord {
    std::size_t flow_index = 0;
    MediaPacket packet;
    SimTime at;
};

struct TxOutcome {
    std::vector<TxRecord> delivered;
    std::vector<TxRecord> errored;
};

/// Sends the granted bytes. Every packet fragment sent in this frame fails
/// independently with probability bler_p; a packet with any failed fragment is
/// counted dropped-error on completion (no ARQ). Completion times are the frame
/// start plus the cumulative air time at `dl_rate_bps`.
TxOutcome transmit(const FrameAllocation& alloc, std::span<ServiceFlow> flows, double bler_p, RngStream& rng,
                   SimTime frame_start, double dl_rate_bps);

}  // namespace wimaxtv
