#include "wimaxtv/simulation.hpp"

#include <fmt/format.h>

#include <variant>

#include "wimaxtv/amc.hpp"
#include "wimaxtv/engine.hpp"
#include "wimaxtv/rng.hpp"

namespace wimaxtv {

namespace {

struct FrameTick {
    std::int64_t index = 0;
};
struct MediaArrival {
    std::size_t flow = 0;
    Emission emission;
};
struct HandoffComplete {
    CellId cell = 0;
};
using SimEvent = std::variant<FrameTick, MediaArrival, HandoffComplete>;

LinkAdaptation make_link_adaptation(const std::string& mode) {
    if (auto m = find_mcs(mode)) {
        return LinkAdaptation::fixed(*m);
    }
    if (auto p = find_amc_profile(mode)) {
        return LinkAdaptation::adaptive(*p);
    }
    throw ConfigError("unknown MCS mode '" + mode + "'");
}

/// Constant-rate best-effort source for one background station.
struct BackgroundSource {
    std::size_t flow = 0;
    SimTime next;
    SimTime interval;
};

class ScenarioRun {
public:
    ScenarioRun(const ScenarioConfig& cfg, const ScenarioInputs& in, bool record_log)
        : cfg_(cfg),
          s_(cfg.settings),
          layout_(CellLayout::hexagonal(s_.mobility.radius_m, static_cast<std::size_t>(s_.mobility.cells))),
          trajectory_(*in.waypoints, cfg.speed_kmh, s_.mobility.loop),
          model_(cfg.path_loss_model()),
          link_(s_.radio.link_budget()),
          shadow_rng_(cfg.seed, "shadowing"),
          bler_rng_(cfg.seed, "bler"),
          shadowing_(layout_.size(), shadow_sigma_db(model_), s_.radio.shadow_decorrelation_m, shadow_rng_),
          la_(make_link_adaptation(cfg.mcs_mode)),
          scheduler_(s_.phy.frame_duration),
          record_log_(record_log) {
        const auto& t = s_.traffic;
        const ServiceClass media_class = s_.mac.service_class(cfg.service_class);

        sources_.emplace_back(in.video, t.video_fps, t.wrap);
        flows_.emplace_back(0, media_class, s_.mac.queue_limit_bytes);
        names_.push_back("video");
        if (t.audio) {
            sources_.emplace_back(t.audio_frame_bytes, t.audio_fps, FrameType::Audio);
            flows_.emplace_back(1, media_class, s_.mac.queue_limit_bytes);
            names_.push_back("audio");
        }
        media_flows_ = flows_.size();

        const auto& bg = s_.background;
        const ServiceClass be = s_.mac.service_class(ServiceClassKind::Be);
        for (int i = 0; i < bg.stations; ++i) {
            const std::size_t idx = flows_.size();
            flows_.emplace_back(static_cast<std::uint32_t>(idx), be, s_.mac.queue_limit_bytes);
            names_.push_back("background-" + std::to_string(i));
            const SimTime interval = SimTime::from_seconds_f(bg.packet_bytes * 8.0 / (bg.rate_mbps * 1e6));
            // Stagger the stations across one packet interval.
            const SimTime offset = SimTime::from_us(interval.us() * i / std::max(bg.stations, 1));
            background_.push_back({idx, offset, interval});
        }

        metrics_.emplace(cfg.duration, s_.window, media_flows_);
    }

    ScenarioResult run() {
        last_pos_ = trajectory_.position_at(SimTime());
        {
            const auto rx = rx_powers(last_pos_);
            serving_ = select_serving_cell(rx, 0, 0.0);
        }
        for (std::size_t i = 0; i < sources_.size(); ++i) {
            schedule_next_emission(i);
        }
        engine_.schedule(SimTime(), FrameTick{0});
        engine_.run_until(cfg_.duration, [this](const auto& ev, auto&) { dispatch(ev); });

        ScenarioResult r;
        r.report = metrics_->report();
        r.media_flows = media_flows_;
        r.events = engine_.fired();
        r.amc_transitions = la_.transitions();
        r.event_log = std::move(log_);
        for (std::size_t i = 0; i < flows_.size(); ++i) {
            r.flows.push_back(
                {names_[i], flows_[i].service_class().kind, flows_[i].counters(), flows_[i].queued_packets()});
        }
        return r;
    }

private:
    using Event = Engine<SimEvent>::Event;

    void dispatch(const Event& ev) {
        if (record_log_) {
            log_ += fmt::format("{} {} {}\n", ev.fire_at.us(), ev.seq, ev.payload.index());
        }
        std::visit([this](const auto& p) { handle(p); }, ev.payload);
    }

    std::vector<double> rx_powers(Point pos) const {
        std::vector<double> shadow(layout_.size());
        for (std::size_t i = 0; i < shadow.size(); ++i) {
            shadow[i] = shadowing_.value(i);
        }
        return received_powers_dbm(pos, layout_, model_, s_.radio.tx, shadow);
    }

    bool in_outage(SimTime t) const { return t < outage_until_; }

    void schedule_next_emission(std::size_t i) {
        const auto at = sources_[i].peek_time();
        if (!at) {
            return;
        }
        const SimTime arrival = *at + s_.traffic.wired_delay;
        if (arrival > cfg_.duration) {
            return;
        }
        auto e = sources_[i].next();
        engine_.schedule(arrival, MediaArrival{i, *e});
    }

    void handle(const MediaArrival& a) {
        const SimTime now = engine_.now();
        auto& flow = flows_[a.flow];
        const auto& cls = flow.service_class();
        for (std::uint32_t size : packetize(a.emission.size, s_.traffic.mtu_payload)) {
            MediaPacket pkt;
            pkt.id = next_packet_id_++;
            pkt.flow = flow.id();
            pkt.size = size;
            pkt.header = s_.traffic.header_bytes;
            pkt.gen_time = a.emission.gen_time;
            pkt.frame_id = a.emission.frame_index;
            if (cls.expires_packets()) {
                pkt.deadline = pkt.gen_time + SimTime::from_us(std::llround(cls.max_latency_ms * 1e3));
            }
            if (in_outage(now)) {
                flow.discard_in_handoff(pkt);
                metrics_->record_drop(a.flow, pkt, now, DropReason::Handoff);
            } else if (!flow.enqueue(pkt)) {
                metrics_->record_drop(a.flow, pkt, now, DropReason::Overflow);
            }
        }
        schedule_next_emission(a.flow);
    }

    void handle(const HandoffComplete&) {}

    void generate_background(SimTime now) {
        for (auto& b : background_) {
            while (b.next <= now) {
                MediaPacket pkt;
                pkt.id = next_packet_id_++;
                pkt.flow = static_cast<std::uint32_t>(b.flow);
                pkt.size = s_.background.packet_bytes;
                pkt.header = s_.traffic.header_bytes;
                pkt.gen_time = b.next;
                flows_[b.flow].enqueue(pkt);
                b.next += b.interval;
            }
        }
    }

    void handle(const FrameTick& tick) {
        const SimTime now = engine_.now();
        const Point pos = trajectory_.position_at(now);
        shadowing_.advance(distance(pos, last_pos_));
        last_pos_ = pos;
        const auto rx = rx_powers(pos);

        if (!in_outage(now)) {
            const CellId target = select_serving_cell(rx, serving_, s_.mobility.handoff.margin_db);
            if (target != serving_) {
                serving_ = target;
                metrics_->record_handoff();
                outage_until_ = now + s_.mobility.handoff.latency;
                engine_.schedule(outage_until_, HandoffComplete{target});
            }
        }

        generate_background(now);

        if (!in_outage(now)) {
            transmit_frame(tick.index, now, rx[serving_]);
        }

        const SimTime next = now + s_.phy.frame_duration;
        if (next <= cfg_.duration) {
            engine_.schedule(next, FrameTick{tick.index + 1});
        }
    }

    void transmit_frame(std::int64_t index, SimTime now, double serving_rx_dbm) {
        const double sinr = serving_rx_dbm - link_.noise_floor_dbm;
        const McsEntry& mcs = la_.step(sinr, now);
        const double p = bler(sinr, mcs, link_);
        metrics_->record_bler(now, p);

        const auto alloc = scheduler_.schedule(flows_, frame_capacity_bytes(mcs, s_.phy), index, now);
        for (const auto& [flow, pkt] : alloc.expired) {
            if (flow < media_flows_) {
                metrics_->record_drop(flow, pkt, now, DropReason::Expired);
            }
        }
        const auto tx = transmit(alloc, flows_, p, bler_rng_, now, mcs.dl_rate_bps());
        for (const auto& d : tx.delivered) {
            if (d.flow_index < media_flows_) {
                metrics_->record_delivery(d.flow_index, d.packet, d.at);
            }
        }
        for (const auto& e : tx.errored) {
            if (e.flow_index < media_flows_) {
                metrics_->record_drop(e.flow_index, e.packet, e.at, DropReason::Error);
            }
        }
    }

    const ScenarioConfig& cfg_;
    const SimulationSettings& s_;
    CellLayout layout_;
    Trajectory trajectory_;
    PathLossModel model_;
    LinkBudget link_;
    RngStream shadow_rng_;
    RngStream bler_rng_;
    ShadowingProcess shadowing_;
    LinkAdaptation la_;
    FrameScheduler scheduler_;
    Engine<SimEvent> engine_;

    std::vector<MediaSource> sources_;
    std::vector<ServiceFlow> flows_;
    std::vector<std::string> names_;
    std::size_t media_flows_ = 0;
    std::vector<BackgroundSource> background_;
    std::optional<MetricsCollector> metrics_;

    CellId serving_ = 0;
    SimTime outage_until_;
    Point last_pos_;
    std::uint64_t next_packet_id_ = 0;
    bool record_log_;
    std::string log_;
};

}  // namespace

ScenarioInputs load_inputs(const ScenarioConfig& cfg) {
    ScenarioInputs in;
    const auto& t = cfg.settings.traffic;
    if (t.video_trace == "synthetic") {
        in.video = std::make_shared<const VideoTrace>(generate_synthetic_trace(t.synthetic));
    } else {
        in.video = std::make_shared<const VideoTrace>(load_trace(t.video_trace, t.video_fps));
    }
    in.waypoints = std::make_shared<const std::vector<Point>>(load_waypoints(cfg.settings.mobility.trajectory));
    return in;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const ScenarioInputs& inputs, bool record_log) {
    cfg.validate();
    if (!inputs.video || !inputs.waypoints) {
        throw std::invalid_argument("run_scenario: missing trace or trajectory");
    }
    ScenarioRun run(cfg, inputs, record_log);
    return run.run();
}

}  // namespace wimaxtv
