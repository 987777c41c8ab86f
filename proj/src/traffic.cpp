#include "wimaxtv/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "wimaxtv/rng.hpp"

namespace wimaxtv {

namespace {

std::optional<FrameType> parse_type(const std::string& s) {
    if (s.size() != 1) {
        return std::nullopt;
    }
    switch (s[0]) {
        case 'I':
            return FrameType::I;
        case 'P':
            return FrameType::P;
        case 'B':
            return FrameType::B;
        case 'A':
            return FrameType::Audio;
        default:
            return std::nullopt;
    }
}

std::optional<std::uint32_t> parse_size(const std::string& s) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size() || v < 1 || v > UINT32_MAX) {
            return std::nullopt;
        }
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

TraceStats VideoTrace::stats() const {
    TraceStats st;
    if (frames.empty()) {
        return st;
    }
    st.min_size = UINT32_MAX;
    double sum = 0.0;
    for (const auto& f : frames) {
        st.min_size = std::min(st.min_size, f.size);
        st.max_size = std::max(st.max_size, f.size);
        sum += f.size;
    }
    st.mean_size = sum / static_cast<double>(frames.size());
    st.peak_rate_mbps = st.max_size * 8.0 * nominal_fps / 1e6;
    st.mean_rate_mbps = st.mean_size * 8.0 * nominal_fps / 1e6;
    return st;
}

VideoTrace load_trace(const std::filesystem::path& path, double nominal_fps) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open trace file " + path.string());
    }
    VideoTrace trace;
    trace.nominal_fps = nominal_fps;
    trace.name = path.stem().string();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        const auto fail = [&](const std::string& why) {
            return TraceParseError(path.string() + ":" + std::to_string(lineno) + ": " + why, lineno);
        };
        TraceFrame frame;
        std::optional<std::uint32_t> size;
        switch (tok.size()) {
            case 1:
                size = parse_size(tok[0]);
                break;
            case 2:
                size = parse_size(tok[1]);
                break;
            case 3: {
                const auto type = parse_type(tok[1]);
                if (!type) {
                    throw fail("unknown frame type '" + tok[1] + "'");
                }
                frame.type = *type;
                size = parse_size(tok[2]);
                break;
            }
            default:
                throw fail("expected 'size', 'index size' or 'index type size'");
        }
        if (!size) {
            throw fail("frame size must be a positive integer");
        }
        frame.size = *size;
        trace.frames.push_back(frame);
    }
    if (trace.frames.empty()) {
        throw TraceParseError("trace file " + path.string() + " has no frames", 0);
    }
    return trace;
}

void write_trace(const VideoTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write trace file " + path.string());
    }
    const auto st = trace.stats();
    out << "# " << trace.name << ": " << trace.frames.size() << " frames at " << trace.nominal_fps << " fps\n";
    out << "# min " << st.min_size << " max " << st.max_size << " mean " << st.mean_size << " bytes\n";
    out << "# index type size_bytes\n";
    for (std::size_t i = 0; i < trace.frames.size(); ++i) {
        out << i << ' ' << static_cast<char>(trace.frames[i].type) << ' ' << trace.frames[i].size << '\n';
    }
}

VideoTrace generate_synthetic_trace(const SyntheticTraceSpec& spec) {
    if (spec.frames < 2 || spec.min_size < 1 || spec.max_size < spec.min_size || spec.gop.empty() ||
        !(spec.mean_size > spec.min_size && spec.mean_size < spec.max_size) || spec.fps <= 0.0) {
        throw std::invalid_argument("synthetic trace: inconsistent target statistics");
    }
    std::vector<FrameType> types;
    for (char c : spec.gop) {
        const auto t = parse_type(std::string(1, c));
        if (!t || *t == FrameType::Audio) {
            throw std::invalid_argument("synthetic trace: GOP pattern must use I, P, B");
        }
        types.push_back(*t);
    }
    const auto weight = [&](FrameType t) {
        return t == FrameType::I ? spec.weight_i : t == FrameType::P ? spec.weight_p : spec.weight_b;
    };
    double gop_weight = 0.0;
    for (auto t : types) {
        gop_weight += weight(t);
    }
    gop_weight /= static_cast<double>(types.size());

    RngStream rng(spec.seed, "synthetic-trace");
    std::vector<double> raw(spec.frames);
    std::vector<FrameType> frame_types(spec.frames);
    for (std::size_t i = 0; i < spec.frames; ++i) {
        const FrameType t = types[i % types.size()];
        const double mean = spec.mean_size * weight(t) / gop_weight;
        const double mu = std::log(mean) - 0.5 * spec.sigma * spec.sigma;
        raw[i] = std::exp(rng.normal(mu, spec.sigma));
        frame_types[i] = t;
    }

    const double lo = spec.min_size;
    const double hi = spec.max_size;
    std::vector<std::uint32_t> sizes(spec.frames);
    double scale = 1.0;
    for (int iter = 0; iter < 50; ++iter) {
        double sum = 0.0;
        for (std::size_t i = 0; i < spec.frames; ++i) {
            sizes[i] = static_cast<std::uint32_t>(std::lround(std::clamp(raw[i] * scale, lo, hi)));
            sum += sizes[i];
        }
        const double mean = sum / static_cast<double>(spec.frames);
        if (std::abs(mean - spec.mean_size) < 1e-4 * spec.mean_size) {
            break;
        }
        scale *= spec.mean_size / mean;
    }
    const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
    *mn = spec.min_size;
    *mx = spec.max_size;

    VideoTrace trace;
    trace.nominal_fps = spec.fps;
    trace.name = "synthetic";
    trace.frames.reserve(spec.frames);
    for (std::size_t i = 0; i < spec.frames; ++i) {
        trace.frames.push_back({sizes[i], frame_types[i]});
    }
    return trace;
}

std::vector<std::uint32_t> packetize(std::uint32_t frame_size, std::uint32_t mtu_payload) {
    if (mtu_payload == 0) {
        throw std::invalid_argument("packetize: mtu payload must be positive");
    }
    std::vector<std::uint32_t> out;
    out.reserve(frame_size / mtu_payload + 1);
    std::uint32_t left = frame_size;
    while (left > mtu_payload) {
        out.push_back(mtu_payload);
        left -= mtu_payload;
    }
    if (left > 0) {
        out.push_back(left);
    }
    return out;
}

MediaSource::MediaSource(std::shared_ptr<const VideoTrace> trace, double fps, bool wrap)
    : trace_(std::move(trace)), fps_(fps), wrap_(wrap) {
    if (!trace_ || trace_->frames.empty()) {
        throw std::invalid_argument("media source: empty trace");
    }
    if (!(fps_ > 0.0)) {
        throw std::invalid_argument("media source: fps must be positive");
    }
}

MediaSource::MediaSource(std::uint32_t frame_size, double fps, FrameType type)
    : constant_size_(frame_size), constant_type_(type), fps_(fps) {
    if (frame_size == 0 || !(fps_ > 0.0)) {
        throw std::invalid_argument("media source: frame size and fps must be positive");
    }
}

SimTime MediaSource::emission_time(std::uint64_t i) const {
    return SimTime::from_us(std::llround(static_cast<double>(i) * 1e6 / fps_));
}

std::optional<SimTime> MediaSource::peek_time() const {
    if (trace_ && !wrap_ && cursor_ >= trace_->frames.size()) {
        return std::nullopt;
    }
    return emission_time(cursor_);
}

std::optional<Emission> MediaSource::next() {
    const auto at = peek_time();
    if (!at) {
        return std::nullopt;
    }
    Emission e;
    e.frame_index = cursor_;
    e.gen_time = *at;
    if (trace_) {
        const auto& f = trace_->frames[cursor_ % trace_->frames.size()];
        e.size = f.size;
        e.type = f.type;
    } else {
        e.size = constant_size_;
        e.type = constant_type_;
    }
    ++cursor_;
    return e;
}

}  // namespace wimaxtv
