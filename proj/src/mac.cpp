#include "wimaxtv/mac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wimaxtv {

std::string_view to_string(ServiceClassKind k) {
    switch (k) {
        case ServiceClassKind::Ugs:
            return "ugs";
        case ServiceClassKind::ErtPs:
            return "ertps";
        case ServiceClassKind::RtPs:
            return "rtps";
        case ServiceClassKind::NrtPs:
            return "nrtps";
        case ServiceClassKind::Be:
            return "be";
    }
    return "?";
}

std::optional<ServiceClassKind> parse_service_class(std::string_view name) {
    for (auto k : {ServiceClassKind::Ugs, ServiceClassKind::ErtPs, ServiceClassKind::RtPs, ServiceClassKind::NrtPs,
                   ServiceClassKind::Be}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view to_string(DropReason r) {
    switch (r) {
        case DropReason::Expired:
            return "expired";
        case DropReason::Error:
            return "error";
        case DropReason::Overflow:
            return "overflow";
        case DropReason::Handoff:
            return "handoff";
    }
    return "?";
}

ServiceClass ServiceClass::defaults(ServiceClassKind kind) {
    ServiceClass c;
    c.kind = kind;
    switch (kind) {
        case ServiceClassKind::Ugs:
            c.max_sustained_rate_mbps = c.min_reserved_rate_mbps = 0.64;
            break;
        case ServiceClassKind::ErtPs:
            c.max_sustained_rate_mbps = c.min_reserved_rate_mbps = 1.0;
            break;
        case ServiceClassKind::RtPs:
            c.min_reserved_rate_mbps = 0.5;
            break;
        case ServiceClassKind::NrtPs:
            c.min_reserved_rate_mbps = 0.2;
            c.polling_interval = 4;
            break;
        case ServiceClassKind::Be:
            break;
    }
    return c;
}

void ServiceClass::validate() const {
    if (max_sustained_rate_mbps < 0.0 || min_reserved_rate_mbps < 0.0) {
        throw std::invalid_argument("service class: rates must be >= 0");
    }
    if (polling_interval < 1) {
        throw std::invalid_argument("service class: polling interval must be >= 1 frame");
    }
    if (kind == ServiceClassKind::Ugs && max_sustained_rate_mbps != min_reserved_rate_mbps) {
        throw std::invalid_argument("service class: UGS needs max sustained == min reserved");
    }
    if ((kind == ServiceClassKind::Ugs || kind == ServiceClassKind::ErtPs) && max_sustained_rate_mbps <= 0.0) {
        throw std::invalid_argument("service class: UGS/ertPS need a positive max sustained rate");
    }
    if (expires_packets() && max_latency_ms <= 0.0) {
        throw std::invalid_argument("service class: max latency must be positive");
    }
}

std::optional<std::int64_t> ServiceClass::frame_byte_cap(SimTime frame_duration) const {
    if (max_sustained_rate_mbps <= 0.0) {
        return std::nullopt;
    }
    return static_cast<std::int64_t>(std::floor(max_sustained_rate_mbps * 1e6 * frame_duration.seconds() / 8.0));
}

ServiceFlow::ServiceFlow(std::uint32_t id, ServiceClass cls, std::int64_t queue_limit_bytes)
    : id_(id), class_(cls), queue_limit_(queue_limit_bytes) {
    class_.validate();
    if (queue_limit_ <= 0) {
        throw std::invalid_argument("service flow: queue limit must be positive");
    }
}

bool ServiceFlow::enqueue(const MediaPacket& pkt) {
    ++counters_.enqueued;
    if (queued_bytes_ + pkt.wire_size() > queue_limit_) {
        ++counters_.dropped_overflow;
        return false;
    }
    queue_.push_back({pkt, pkt.wire_size(), false});
    queued_bytes_ += pkt.wire_size();
    return true;
}

void ServiceFlow::discard_in_handoff(const MediaPacket&) {
    ++counters_.enqueued;
    ++counters_.dropped_handoff;
}

std::vector<MediaPacket> ServiceFlow::drop_expired(SimTime now) {
    std::vector<MediaPacket> out;
    // Deadlines follow generation order, so expired packets sit at the head.
    while (!queue_.empty() && queue_.front().packet.deadline < now) {
        out.push_back(queue_.front().packet);
        queued_bytes_ -= queue_.front().remaining;
        queue_.pop_front();
        ++counters_.dropped_expired;
    }
    return out;
}

template <typename OnChunk, typename OnComplete>
std::int64_t ServiceFlow::send(std::int64_t bytes, OnChunk&& on_chunk, OnComplete&& on_complete) {
    std::int64_t used = 0;
    while (used < bytes && !queue_.empty()) {
        auto& head = queue_.front();
        const std::int64_t chunk = std::min(head.remaining, bytes - used);
        used += chunk;
        head.remaining -= chunk;
        queued_bytes_ -= chunk;
        if (on_chunk(chunk)) {
            head.corrupted = true;
        }
        if (head.remaining == 0) {
            const bool ok = !head.corrupted;
            const MediaPacket pkt = head.packet;
            queue_.pop_front();
            if (ok) {
                ++counters_.delivered;
            } else {
                ++counters_.dropped_error;
            }
            on_complete(pkt, ok, used);
        }
    }
    return used;
}

std::int64_t FrameAllocation::total() const {
    std::int64_t t = 0;
    for (const auto& g : grants) {
        t += g.bytes;
    }
    return t;
}

std::int64_t FrameAllocation::granted(std::size_t flow_index) const {
    std::int64_t t = 0;
    for (const auto& g : grants) {
        if (g.flow_index == flow_index) {
            t += g.bytes;
        }
    }
    return t;
}

namespace {

void add_grant(FrameAllocation& alloc, std::size_t flow, std::int64_t bytes) {
    if (bytes <= 0) {
        return;
    }
    if (!alloc.grants.empty() && alloc.grants.back().flow_index == flow) {
        alloc.grants.back().bytes += bytes;
    } else {
        alloc.grants.push_back({flow, bytes});
    }
}

}  // namespace

FrameAllocation FrameScheduler::schedule(std::span<ServiceFlow> flows, std::int64_t capacity,
                                         std::int64_t frame_index, SimTime now) {
    FrameAllocation alloc;
    alloc.capacity = capacity;

    for (std::size_t i = 0; i < flows.size(); ++i) {
        if (flows[i].service_class().expires_packets()) {
            for (auto& pkt : flows[i].drop_expired(now)) {
                alloc.expired.emplace_back(i, std::move(pkt));
            }
        }
    }

    std::int64_t left = capacity;
    const auto polled = [&](const ServiceFlow& f) { return frame_index % f.service_class().polling_interval == 0; };

    // UGS: unsolicited fixed grant every frame, whether or not data is queued.
    for (std::size_t i = 0; i < flows.size() && left > 0; ++i) {
        const auto& cls = flows[i].service_class();
        if (cls.kind != ServiceClassKind::Ugs) {
            continue;
        }
        const std::int64_t g = std::min(left, cls.frame_byte_cap(frame_duration_).value_or(0));
        add_grant(alloc, i, g);
        left -= g;
    }

    for (auto kind : {ServiceClassKind::ErtPs, ServiceClassKind::RtPs, ServiceClassKind::NrtPs, ServiceClassKind::Be}) {
        const auto k = static_cast<std::size_t>(kind);
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < flows.size(); ++i) {
            if (flows[i].service_class().kind == kind) {
                members.push_back(i);
            }
        }
        if (members.empty()) {
            continue;
        }
        const std::size_t start = rr_start_[k] % members.size();
        rr_start_[k] = start + 1;
        if (left <= 0) {
            continue;
        }

        // Per-member state: packet cursor into the queue, bytes of that packet
        // still ungranted, and remaining per-frame cap.
        struct Cursor {
            std::size_t flow;
            std::size_t pkt = 0;
            std::int64_t pkt_left = 0;
            std::int64_t cap = 0;
        };
        std::vector<Cursor> active;
        for (std::size_t j = 0; j < members.size(); ++j) {
            const std::size_t i = members[(start + j) % members.size()];
            const auto& f = flows[i];
            if (f.empty() || !polled(f)) {
                continue;
            }
            Cursor c{i};
            c.pkt_left = f.queue().front().remaining;
            c.cap = f.service_class().frame_byte_cap(frame_duration_).value_or(std::numeric_limits<std::int64_t>::max());
            active.push_back(c);
        }

        // Packet-by-packet round robin until capacity or demand runs out.
        bool progress = true;
        while (left > 0 && progress) {
            progress = false;
            for (auto& c : active) {
                if (left <= 0) {
                    break;
                }
                const auto& q = flows[c.flow].queue();
                if (c.pkt >= q.size() || c.cap <= 0) {
                    continue;
                }
                const std::int64_t g = std::min({c.pkt_left, left, c.cap});
                add_grant(alloc, c.flow, g);
                left -= g;
                c.cap -= g;
                c.pkt_left -= g;
                progress = true;
                if (c.pkt_left == 0 && ++c.pkt < q.size()) {
                    c.pkt_left = q[c.pkt].remaining;
                }
            }
        }
    }
    return alloc;
}

TxOutcome transmit(const FrameAllocation& alloc, std::span<ServiceFlow> flows, double bler_p, RngStream& rng,
                   SimTime frame_start, double dl_rate_bps) {
    if (!(dl_rate_bps > 0.0)) {
        throw std::invalid_argument("transmit: downlink rate must be positive");
    }
    TxOutcome out;
    std::int64_t offset = 0;
    const auto air_time = [&](std::int64_t bytes) {
        return SimTime::from_us(std::llround(static_cast<double>(bytes) * 8.0 / dl_rate_bps * 1e6));
    };
    for (const auto& g : alloc.grants) {
        auto& flow = flows[g.flow_index];
        const std::int64_t base = offset;
        const std::int64_t used = flow.send(
            g.bytes, [&](std::int64_t) { return rng.bernoulli(bler_p); },
            [&](const MediaPacket& pkt, bool ok, std::int64_t upto) {
                TxRecord rec{g.flow_index, pkt, frame_start + air_time(base + upto)};
                (ok ? out.delivered : out.errored).push_back(std::move(rec));
            });
        // Unused UGS grant bytes are padding and still occupy the frame.
        offset += std::max(used, g.bytes);
    }
    return out;
}

}  // namespace wimaxtv
