#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wimaxtv/sim_time.hpp"

namespace wimaxtv {

enum class FrameType : char { I = 'I', P = 'P', B = 'B', Audio = 'A' };

struct TraceFrame {
    std::uint32_t size = 0;
    FrameType type = FrameType::P;
};

struct TraceStats {
    std::uint32_t min_size = 0;
    std::uint32_t max_size = 0;
    double mean_size = 0.0;
    double peak_rate_mbps = 0.0;
    double mean_rate_mbps = 0.0;
};

struct VideoTrace {
    std::vector<TraceFrame> frames;
    double nominal_fps = 25.0;
    std::string name;

    TraceStats stats() const;
    /// Trace length at the nominal frame rate.
    double duration_s() const { return static_cast<double>(frames.size()) / nominal_fps; }
};

class TraceParseError : public std::runtime_error {
public:
    TraceParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Reads a frame-size trace. Accepted line forms ('#' starts a comment):
///   size
///   index size
///   index type size        (type one of I, P, B, A)
VideoTrace load_trace(const std::filesystem::path& path, double nominal_fps = 25.0);
void write_trace(const VideoTrace& trace, const std::filesystem::path& path);

/// Target statistics for the synthetic trace generator. Defaults are the
/// Matrix III MPEG-4 Part 2 figures at 25 fps.
struct SyntheticTraceSpec {
    std::size_t frames = 180000;
    double fps = 25.0;
    double mean_size = 3189.068;
    std::uint32_t min_size = 8;
    std::uint32_t max_size = 36450;
    std::string gop = "IBBPBBPBBPBB";
    /// Relative mean size of I, P and B frames before normalisation.
    double weight_i = 5.0;
    double weight_p = 2.0;
    double weight_b = 1.0;
    /// Log-normal shape parameter per frame type.
    double sigma = 0.6;
    std::uint64_t seed = 2014;
};

/// GOP-structured log-normal trace, clamped to [min, max] and rescaled so the
/// sample mean matches the target. The extreme sizes are pinned to one frame each.
VideoTrace generate_synthetic_trace(const SyntheticTraceSpec& spec);

struct MediaPacket {
    std::uint64_t id = 0;
    std::uint32_t flow = 0;
    /// Application payload bytes.
    std::uint32_t size = 0;
    /// Header bytes that occupy air time but are not application data.
    std::uint32_t header = 0;
    SimTime gen_time;
    std::uint64_t frame_id = 0;
    SimTime deadline = SimTime::max();

    std::int64_t wire_size() const { return static_cast<std::int64_t>(size) + header; }
};

/// Splits a frame into ceil(size / mtu_payload) packets; all full-size except
/// a final remainder. Returns the payload sizes.
std::vector<std::uint32_t> packetize(std::uint32_t frame_size, std::uint32_t mtu_payload);

/// One generated media frame.
struct Emission {
    std::uint64_t frame_index = 0;
    SimTime gen_time;
    std::uint32_t size = 0;
    FrameType type = FrameType::P;
};

/// Plays frames at a fixed rate. Emission i is at round(i * 1e6 / fps) us, so
/// non-integer periods (21.6 fps audio) never accumulate drift.
class MediaSource {
public:
    /// Trace-driven source (video).
    MediaSource(std::shared_ptr<const VideoTrace> trace, double fps, bool wrap);
    /// Constant-size source (audio).
    MediaSource(std::uint32_t frame_size, double fps, FrameType type);

    /// Next frame, or nullopt once a non-wrapping trace is exhausted.
    std::optional<Emission> next();
    std::optional<SimTime> peek_time() const;
    SimTime emission_time(std::uint64_t i) const;
    double fps() const { return fps_; }
    SimTime nominal_interval() const { return SimTime::from_seconds_f(1.0 / fps_); }

private:
    std::shared_ptr<const VideoTrace> trace_;
    std::uint32_t constant_size_ = 0;
    FrameType constant_type_ = FrameType::Audio;
    double fps_;
    bool wrap_ = true;
    std::uint64_t cursor_ = 0;
};

}  // namespace wimaxtv
