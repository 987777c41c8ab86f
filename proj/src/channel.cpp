#include "wimaxtv/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace wimaxtv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void FreeSpaceParams::validate() const {
    if (system_loss < 1.0) {
        throw std::invalid_argument("free space: system loss must be >= 1");
    }
    if (frequency_mhz <= 0.0) {
        throw std::invalid_argument("free space: frequency must be positive");
    }
}

ErcegParams ErcegParams::for_frequency(double frequency_mhz, double d0_m) {
    ErcegParams p;
    p.d0_m = d0_m;
    FreeSpaceParams fs;
    fs.frequency_mhz = frequency_mhz;
    p.intercept_db = free_space_path_loss(d0_m, fs);
    return p;
}

void ErcegParams::validate() const {
    if (d0_m <= 0.0 || gamma <= 0.0 || shadow_sigma_db < 0.0) {
        throw std::invalid_argument("erceg: need d0 > 0, gamma > 0, sigma >= 0");
    }
}

void VehicularParams::validate() const {
    if (!(bs_height_m > 0.0 && bs_height_m < 250.0)) {
        throw std::invalid_argument("vehicular: base station height must be in (0, 250) m");
    }
    if (sign_21logf != 1 && sign_21logf != -1) {
        throw std::invalid_argument("vehicular: frequency term sign must be +1 or -1");
    }
}

double free_space_path_loss(double distance_m, const FreeSpaceParams& p) {
    p.validate();
    if (!(distance_m > 0.0)) {
        throw std::domain_error("free space path loss: distance must be > 0");
    }
    const double lambda = kSpeedOfLight / (p.frequency_mhz * 1e6);
    return 20.0 * std::log10(4.0 * M_PI * distance_m / lambda) + 10.0 * std::log10(p.system_loss);
}

double erceg_path_loss(double distance_m, const ErcegParams& p, double shadow_db) {
    p.validate();
    const double d = std::max(distance_m, p.d0_m);
    return p.intercept_db + 10.0 * p.gamma * std::log10(d / p.d0_m) + p.x_f_db + p.x_h_db + shadow_db;
}

double erceg_path_loss(double distance_m, const ErcegParams& p, RngStream& shadow) {
    return erceg_path_loss(distance_m, p, shadow.normal(0.0, p.shadow_sigma_db));
}

double pedestrian_path_loss(double r_km, double f_mhz) {
    if (!(r_km > 0.0) || !(f_mhz > 0.0)) {
        throw std::domain_error("pedestrian path loss: R and f must be > 0");
    }
    return 40.0 * std::log10(r_km) + 30.0 * std::log10(f_mhz) + 49.0;
}

double vehicular_path_loss(double r_km, const VehicularParams& p) {
    p.validate();
    if (!(r_km > 0.0)) {
        throw std::domain_error("vehicular path loss: R must be > 0");
    }
    return 40.0 * (1.0 - 4e-3 * p.bs_height_m) * std::log10(r_km) - 18.0 * std::log10(p.bs_height_m) +
           p.sign_21logf * 21.0 * std::log10(p.frequency_mhz) + 80.0;
}

double path_loss_db(const PathLossModel& model, double distance_m, double shadow_db) {
    return std::visit(
        Overloaded{
            [&](const FreeSpaceParams& p) { return free_space_path_loss(distance_m, p); },
            [&](const ErcegParams& p) { return erceg_path_loss(distance_m, p, shadow_db); },
            [&](const PedestrianParams& p) { return pedestrian_path_loss(distance_m / 1000.0, p.frequency_mhz); },
            [&](const VehicularParams& p) { return vehicular_path_loss(distance_m / 1000.0, p); },
        },
        model);
}

double shadow_sigma_db(const PathLossModel& model) {
    if (const auto* e = std::get_if<ErcegParams>(&model)) {
        return e->shadow_sigma_db;
    }
    return 0.0;
}

std::string_view path_loss_name(const PathLossModel& model) {
    return std::visit(Overloaded{
                          [](const FreeSpaceParams&) { return std::string_view("freespace"); },
                          [](const ErcegParams&) { return std::string_view("erceg"); },
                          [](const PedestrianParams&) { return std::string_view("pedestrian"); },
                          [](const VehicularParams&) { return std::string_view("vehicular"); },
                      },
                      model);
}

double thermal_noise_floor_dbm(double bandwidth_hz, double noise_figure_db) {
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double sinr_db(const TxBudget& tx, double path_loss, const LinkBudget& lb) {
    return tx.eirp_plus_rx_gain_dbm() - path_loss - lb.noise_floor_dbm;
}

double bler(double sinr, const McsEntry& mcs, const LinkBudget& lb) {
    const double x = lb.bler_slope * (sinr - mcs.min_sinr_db);
    // exp overflows past ~709; the limits are exact in double anyway.
    if (x > 700.0) {
        return 0.0;
    }
    if (x < -700.0) {
        return 1.0;
    }
    return 1.0 / (1.0 + std::exp(x));
}

ShadowingProcess::ShadowingProcess(std::size_t tracks, double sigma_db, double decorrelation_m, RngStream& rng)
    : sigma_(sigma_db), decorrelation_m_(decorrelation_m), rng_(&rng), values_(tracks, 0.0) {
    if (decorrelation_m <= 0.0) {
        throw std::invalid_argument("shadowing: decorrelation distance must be positive");
    }
    if (sigma_ > 0.0) {
        for (auto& v : values_) {
            v = rng_->normal(0.0, sigma_);
        }
    }
}

void ShadowingProcess::advance(double moved_m) {
    if (sigma_ <= 0.0 || moved_m <= 0.0) {
        return;
    }
    const double rho = std::exp(-moved_m / decorrelation_m_);
    const double innovation = sigma_ * std::sqrt(1.0 - rho * rho);
    for (auto& v : values_) {
        v = rho * v + rng_->normal(0.0, innovation);
    }
}

}  // namespace wimaxtv
