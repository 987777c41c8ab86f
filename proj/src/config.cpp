#include "wimaxtv/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "wimaxtv/amc.hpp"

namespace wimaxtv {

namespace {

const std::vector<std::string> kDefaultModes{"qpsk12", "qpsk34", "16qam12", "16qam34", "64qam12",
                                             "64qam23", "64qam34", "amc1",    "amc2"};

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        out += (out.empty() ? "" : ", ") + s;
    }
    return out;
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

/// Sections of "key = value" pairs. Reads consume keys so leftovers can be
/// reported as typos.
class KeyValueFile {
public:
    explicit KeyValueFile(std::istream& in) {
        std::string line;
        std::string section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            line = trim(line);
            if (line.empty()) {
                continue;
            }
            if (line.front() == '[') {
                if (line.back() != ']') {
                    throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
                }
                section = trim(line.substr(1, line.size() - 2));
                sections_[section];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
            }
            if (section.empty()) {
                throw ConfigError("line " + std::to_string(lineno) + ": key outside of a [section]");
            }
            const std::string key = trim(line.substr(0, eq));
            auto& sec = sections_[section];
            if (sec.count(key)) {
                throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
            }
            sec[key] = Entry{trim(line.substr(eq + 1)), lineno};
        }
    }

    bool has_section(const std::string& s) const { return sections_.count(s) > 0; }

    const Entry* take(const std::string& section, const std::string& key) {
        auto s = sections_.find(section);
        if (s == sections_.end()) {
            return nullptr;
        }
        auto k = s->second.find(key);
        if (k == s->second.end()) {
            return nullptr;
        }
        k->second.used = true;
        return &k->second;
    }

    void check_all_used(const std::vector<std::string>& known_sections) const {
        for (const auto& [name, keys] : sections_) {
            if (std::find(known_sections.begin(), known_sections.end(), name) == known_sections.end()) {
                throw ConfigError("unknown section [" + name + "]; valid sections: " + join(known_sections));
            }
            for (const auto& [key, e] : keys) {
                if (!e.used) {
                    throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + key + "' in [" + name +
                                      "]");
                }
            }
        }
    }

private:
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

class Reader {
public:
    Reader(KeyValueFile& f, std::string section) : f_(f), section_(std::move(section)) {}

    void get(const std::string& key, double& out) {
        if (const auto* e = f_.take(section_, key)) {
            out = number(*e, key);
        }
    }
    void get(const std::string& key, int& out) {
        if (const auto* e = f_.take(section_, key)) {
            out = static_cast<int>(integer(*e, key));
        }
    }
    void get(const std::string& key, std::uint32_t& out) {
        if (const auto* e = f_.take(section_, key)) {
            const auto v = integer(*e, key);
            if (v < 0) {
                fail(*e, key, "must be non-negative");
            }
            out = static_cast<std::uint32_t>(v);
        }
    }
    void get(const std::string& key, std::int64_t& out) {
        if (const auto* e = f_.take(section_, key)) {
            out = integer(*e, key);
        }
    }
    void get(const std::string& key, std::uint64_t& out) {
        if (const auto* e = f_.take(section_, key)) {
            const auto v = integer(*e, key);
            if (v < 0) {
                fail(*e, key, "must be non-negative");
            }
            out = static_cast<std::uint64_t>(v);
        }
    }
    void get(const std::string& key, bool& out) {
        if (const auto* e = f_.take(section_, key)) {
            const auto& v = e->value;
            if (v == "true" || v == "on" || v == "yes" || v == "1") {
                out = true;
            } else if (v == "false" || v == "off" || v == "no" || v == "0") {
                out = false;
            } else {
                fail(*e, key, "expected a boolean");
            }
        }
    }
    void get(const std::string& key, std::string& out) {
        if (const auto* e = f_.take(section_, key)) {
            out = e->value;
        }
    }
    void get_ms(const std::string& key, SimTime& out) {
        double ms = out.ms();
        get(key, ms);
        if (ms < 0) {
            throw ConfigError("[" + section_ + "] " + key + ": must be non-negative");
        }
        out = SimTime::from_us(std::llround(ms * 1e3));
    }
    void get_s(const std::string& key, SimTime& out) {
        double s = out.seconds();
        get(key, s);
        if (s <= 0) {
            throw ConfigError("[" + section_ + "] " + key + ": must be positive");
        }
        out = SimTime::from_seconds_f(s);
    }
    void get_list(const std::string& key, std::vector<std::string>& out) {
        if (const auto* e = f_.take(section_, key)) {
            out.clear();
            std::stringstream ss(e->value);
            for (std::string item; std::getline(ss, item, ',');) {
                item = trim(item);
                if (!item.empty()) {
                    out.push_back(item);
                }
            }
            if (out.empty()) {
                fail(*e, key, "empty list");
            }
        }
    }

private:
    [[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& why) const {
        throw ConfigError("line " + std::to_string(e.line) + ": [" + section_ + "] " + key + ": " + why);
    }
    double number(const Entry& e, const std::string& key) const {
        try {
            std::size_t used = 0;
            const double v = std::stod(e.value, &used);
            if (used == e.value.size()) {
                return v;
            }
        } catch (const std::exception&) {
        }
        fail(e, key, "expected a number, got '" + e.value + "'");
    }
    std::int64_t integer(const Entry& e, const std::string& key) const {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(e.value, &used);
            if (used == e.value.size()) {
                return v;
            }
        } catch (const std::exception&) {
        }
        fail(e, key, "expected an integer, got '" + e.value + "'");
    }

    KeyValueFile& f_;
    std::string section_;
};

bool is_mcs_mode(const std::string& s) { return find_mcs(s).has_value() || find_amc_profile(s).has_value(); }

ServiceClassKind class_or_throw(const std::string& s) {
    const auto k = parse_service_class(s);
    if (!k) {
        throw ConfigError("unknown service class '" + s + "'; valid: " + join(valid_service_classes()));
    }
    return *k;
}

double speed_or_throw(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size() && v > 0) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("invalid speed '" + s + "' (km/h, must be > 0)");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_relative() && !base.empty()) {
        return base / path;
    }
    return path;
}

}  // namespace

LinkBudget RadioSettings::link_budget() const {
    LinkBudget lb;
    lb.noise_floor_dbm = thermal_noise_floor_dbm(bandwidth_mhz * 1e6, noise_figure_db);
    lb.bler_slope = bler_slope;
    return lb;
}

ServiceClass MacSettings::service_class(ServiceClassKind kind) const {
    ServiceClass c = ServiceClass::defaults(kind);
    c.max_latency_ms = max_latency_ms;
    switch (kind) {
        case ServiceClassKind::Ugs:
            c.max_sustained_rate_mbps = c.min_reserved_rate_mbps = ugs_rate_mbps;
            break;
        case ServiceClassKind::ErtPs:
            c.max_sustained_rate_mbps = c.min_reserved_rate_mbps = ertps_max_sustained_mbps;
            c.polling_interval = rtps_polling_frames;
            break;
        case ServiceClassKind::RtPs:
            c.polling_interval = rtps_polling_frames;
            break;
        case ServiceClassKind::NrtPs:
            c.polling_interval = nrtps_polling_frames;
            break;
        case ServiceClassKind::Be:
            break;
    }
    return c;
}

PathLossModel ScenarioConfig::path_loss_model() const {
    const auto& r = settings.radio;
    if (pathloss == "freespace") {
        return FreeSpaceParams{r.tx, r.system_loss, r.frequency_mhz};
    }
    if (pathloss == "erceg") {
        auto p = ErcegParams::for_frequency(r.frequency_mhz, r.erceg_d0_m);
        p.gamma = r.erceg_gamma;
        p.shadow_sigma_db = r.erceg_sigma_db;
        p.x_f_db = r.erceg_x_f_db;
        p.x_h_db = r.erceg_x_h_db;
        return p;
    }
    if (pathloss == "pedestrian") {
        return PedestrianParams{r.frequency_mhz};
    }
    if (pathloss == "vehicular") {
        return VehicularParams{r.vehicular_bs_height_m, r.frequency_mhz, r.vehicular_sign};
    }
    throw ConfigError("unknown path-loss model '" + pathloss + "'; valid: " + join(valid_pathloss_models()));
}

void ScenarioConfig::validate() const {
    const auto where = [&] { return "scenario " + id + ": "; };
    if (!is_mcs_mode(mcs_mode)) {
        throw ConfigError(where() + "unknown MCS mode '" + mcs_mode + "'; valid: " + join(valid_mcs_modes()));
    }
    if (!(speed_kmh > 0)) {
        throw ConfigError(where() + "speed must be positive");
    }
    if (service_class == ServiceClassKind::Ugs) {
        throw ConfigError(where() +
                          "UGS carries constant-rate grants and cannot serve the variable-rate audio/video flows");
    }
    if (duration.us() <= 0) {
        throw ConfigError(where() + "duration must be positive");
    }
    try {
        std::visit(
            [](const auto& p) {
                if constexpr (requires { p.validate(); }) {
                    p.validate();
                }
            },
            path_loss_model());
        settings.phy.validate();
        settings.mobility.handoff.validate();
        settings.mac.service_class(service_class).validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(where() + e.what());
    }
    const auto& t = settings.traffic;
    if (t.mtu_payload == 0 || t.video_fps <= 0 || (t.audio && (t.audio_fps <= 0 || t.audio_frame_bytes == 0))) {
        throw ConfigError(where() + "traffic rates and sizes must be positive");
    }
    if (settings.window.us() <= 0) {
        throw ConfigError(where() + "metrics window must be positive");
    }
    if (settings.mobility.cells != 7) {
        throw ConfigError(where() + "only the 7-cell hexagonal cluster is supported");
    }
    const auto& bg = settings.background;
    if (bg.stations < 0 || (bg.stations > 0 && (bg.rate_mbps <= 0 || bg.packet_bytes == 0))) {
        throw ConfigError(where() + "background stations need a positive rate and packet size");
    }
}

std::vector<std::string> valid_mcs_modes() { return kDefaultModes; }
std::vector<std::string> valid_pathloss_models() { return {"freespace", "erceg", "pedestrian", "vehicular"}; }
std::vector<std::string> valid_service_classes() { return {"ugs", "ertps", "rtps", "nrtps", "be"}; }

ScenarioMatrix parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    KeyValueFile f(in);
    SimulationSettings s;
    std::uint64_t seed = 1;
    SimTime duration = SimTime::from_seconds(300);
    SimTime full_duration = SimTime::from_seconds(7200);
    bool full = false;
    unsigned parallelism = 1;

    {
        Reader r(f, "run");
        r.get("seed", seed);
        r.get_s("duration_s", duration);
        r.get_s("full_duration_s", full_duration);
        r.get("full", full);
        r.get_s("window_s", s.window);
        int par = 1;
        r.get("parallel", par);
        if (par < 1) {
            throw ConfigError("[run] parallel must be >= 1");
        }
        parallelism = static_cast<unsigned>(par);
    }
    {
        Reader r(f, "topology");
        r.get("radius_m", s.mobility.radius_m);
        r.get("cells", s.mobility.cells);
        r.get("frequency_mhz", s.radio.frequency_mhz);
        r.get("bandwidth_mhz", s.radio.bandwidth_mhz);
        s.phy.channel_bw_mhz = s.radio.bandwidth_mhz;
    }
    {
        Reader r(f, "radio");
        r.get("tx_power_dbm", s.radio.tx.tx_power_dbm);
        r.get("g_tx_dbi", s.radio.tx.g_tx_dbi);
        r.get("g_rx_dbi", s.radio.tx.g_rx_dbi);
        r.get("system_loss", s.radio.system_loss);
        r.get("noise_figure_db", s.radio.noise_figure_db);
        r.get("bler_slope", s.radio.bler_slope);
        if (s.radio.bler_slope <= 0) {
            throw ConfigError("[radio] bler_slope must be positive");
        }
    }
    {
        Reader r(f, "erceg");
        r.get("gamma", s.radio.erceg_gamma);
        r.get("sigma_db", s.radio.erceg_sigma_db);
        r.get("x_f_db", s.radio.erceg_x_f_db);
        r.get("x_h_db", s.radio.erceg_x_h_db);
        r.get("d0_m", s.radio.erceg_d0_m);
        r.get("decorrelation_m", s.radio.shadow_decorrelation_m);
    }
    {
        Reader r(f, "vehicular");
        r.get("bs_height_m", s.radio.vehicular_bs_height_m);
        r.get("sign_21logf", s.radio.vehicular_sign);
    }
    {
        Reader r(f, "phy");
        SimTime frame = s.phy.frame_duration;
        r.get_ms("frame_ms", frame);
        s.phy.frame_duration = frame;
        r.get("dl_fraction", s.phy.dl_fraction);
    }
    {
        Reader r(f, "mobility");
        std::string traj;
        r.get("trajectory", traj);
        if (!traj.empty()) {
            s.mobility.trajectory = resolve(base_dir, traj);
        }
        r.get("loop", s.mobility.loop);
        r.get("handoff_margin_db", s.mobility.handoff.margin_db);
        r.get_ms("handoff_latency_ms", s.mobility.handoff.latency);
    }
    {
        Reader r(f, "traffic");
        auto& t = s.traffic;
        std::string trace;
        r.get("video_trace", trace);
        if (!trace.empty()) {
            t.video_trace = trace == "synthetic" ? trace : resolve(base_dir, trace).string();
        }
        r.get("video_fps", t.video_fps);
        r.get("synthetic_seed", t.synthetic.seed);
        r.get("synthetic_frames", t.synthetic.frames);
        r.get("audio", t.audio);
        r.get("audio_fps", t.audio_fps);
        r.get("audio_frame_bytes", t.audio_frame_bytes);
        r.get("mtu_payload", t.mtu_payload);
        r.get("header_bytes", t.header_bytes);
        r.get("wrap", t.wrap);
        r.get_ms("wired_delay_ms", t.wired_delay);
        t.synthetic.fps = t.video_fps;
    }
    {
        Reader r(f, "mac");
        auto& m = s.mac;
        r.get("queue_limit_bytes", m.queue_limit_bytes);
        r.get("rtps_polling_frames", m.rtps_polling_frames);
        r.get("nrtps_polling_frames", m.nrtps_polling_frames);
        r.get("ertps_max_sustained_mbps", m.ertps_max_sustained_mbps);
        r.get("ugs_rate_mbps", m.ugs_rate_mbps);
        r.get("max_latency_ms", m.max_latency_ms);
    }
    {
        Reader r(f, "background");
        r.get("stations", s.background.stations);
        r.get("rate_mbps", s.background.rate_mbps);
        r.get("packet_bytes", s.background.packet_bytes);
    }

    struct CaseSpec {
        bool enabled = true;
        std::vector<std::string> speeds;
        std::vector<std::string> pathloss;
        std::vector<std::string> classes;
        std::vector<std::string> modes = kDefaultModes;
    };
    CaseSpec c1{true, {"50", "100", "150"}, {"freespace"}, {"rtps"}};
    CaseSpec c2{true, {"50"}, valid_pathloss_models(), {"rtps"}};
    CaseSpec c3{true, {"50"}, {"freespace"}, {"rtps", "ertps", "nrtps", "be"}};
    {
        Reader r(f, "case1");
        r.get("enabled", c1.enabled);
        r.get_list("speeds_kmh", c1.speeds);
        r.get_list("mcs_modes", c1.modes);
        r.get_list("pathloss", c1.pathloss);
        r.get_list("service_class", c1.classes);
    }
    {
        Reader r(f, "case2");
        r.get("enabled", c2.enabled);
        r.get_list("speed_kmh", c2.speeds);
        r.get_list("pathloss_models", c2.pathloss);
        r.get_list("mcs_modes", c2.modes);
        r.get_list("service_class", c2.classes);
    }
    {
        Reader r(f, "case3");
        r.get("enabled", c3.enabled);
        r.get_list("speed_kmh", c3.speeds);
        r.get_list("pathloss", c3.pathloss);
        r.get_list("service_classes", c3.classes);
        r.get_list("mcs_modes", c3.modes);
    }
    f.check_all_used({"run", "topology", "radio", "erceg", "vehicular", "phy", "mobility", "traffic", "mac",
                      "background", "case1", "case2", "case3"});

    ScenarioMatrix m;
    m.parallelism = parallelism;
    const SimTime run_for = full ? full_duration : duration;
    const auto add_case = [&](const CaseSpec& c, int number) {
        if (!c.enabled) {
            return std::size_t{0};
        }
        std::size_t n = 0;
        // Outer loop is the case's varied axis; MCS modes are innermost.
        for (const auto& sp : c.speeds) {
            for (const auto& pl : c.pathloss) {
                for (const auto& cl : c.classes) {
                    for (const auto& mode : c.modes) {
                        ScenarioConfig sc;
                        char id[32];
                        std::snprintf(id, sizeof id, "c%d-%02zu", number, n);
                        sc.id = id;
                        sc.mcs_mode = mode;
                        sc.speed_kmh = speed_or_throw(sp);
                        sc.pathloss = pl;
                        sc.service_class = class_or_throw(cl);
                        sc.seed = seed;
                        sc.duration = run_for;
                        sc.settings = s;
                        sc.validate();
                        m.scenarios.push_back(std::move(sc));
                        ++n;
                    }
                }
            }
        }
        return n;
    };
    m.case1 = add_case(c1, 1);
    m.case2 = add_case(c2, 2);
    m.case3 = add_case(c3, 3);
    return m;
}

ScenarioMatrix parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    return parse_config(in, path.parent_path());
}

ScenarioMatrix default_matrix() {
    std::istringstream empty;
    return parse_config(empty);
}

}  // namespace wimaxtv
