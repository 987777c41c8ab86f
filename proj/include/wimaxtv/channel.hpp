#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "wimaxtv/phy.hpp"
#include "wimaxtv/rng.hpp"

namespace wimaxtv {

/// Transmit side of the link budget (dBm / dBi).
struct TxBudget {
    double tx_power_dbm = 43.0;
    double g_tx_dbi = 15.0;
    double g_rx_dbi = -1.0;

    double eirp_plus_rx_gain_dbm() const { return tx_power_dbm + g_tx_dbi + g_rx_dbi; }
};

/// Friis free-space model. The loss factor is linear (>= 1).
struct FreeSpaceParams {
    TxBudget budget;
    double system_loss = 1.0;
    double frequency_mhz = 2500.0;

    void validate() const;
};

/// Erceg suburban fixed model. Defaults describe hilly terrain with
/// moderate-to-heavy tree density (exponent 4, 8 dB shadowing).
struct ErcegParams {
    double intercept_db = 0.0;
    double d0_m = 100.0;
    double gamma = 4.0;
    double shadow_sigma_db = 8.0;
    double x_f_db = 0.0;
    double x_h_db = 0.0;

    /// Intercept set to the free-space loss at d0 for the given carrier.
    static ErcegParams for_frequency(double frequency_mhz, double d0_m = 100.0);
    void validate() const;
};

struct PedestrianParams {
    double frequency_mhz = 2500.0;
};

struct VehicularParams {
    double bs_height_m = 15.0;
    double frequency_mhz = 2500.0;
    /// +1 gives the usual loss that grows with frequency; -1 reproduces the
    /// printed "-21 log10 f" variant, which is nonphysical at WiMAX carriers.
    int sign_21logf = +1;

    void validate() const;
};

/// Receiver noise and the SINR -> BLER abstraction.
struct LinkBudget {
    double noise_floor_dbm = -100.01;
    /// Logistic steepness per dB.
    double bler_slope = 2.0;
};

using PathLossModel = std::variant<FreeSpaceParams, ErcegParams, PedestrianParams, VehicularParams>;

inline constexpr double kSpeedOfLight = 299792458.0;

/// 20 log10(4 pi d / lambda) + 10 log10(L).
double free_space_path_loss(double distance_m, const FreeSpaceParams& p);

/// Erceg loss with an explicit shadowing term; distances below d0 clamp to d0.
double erceg_path_loss(double distance_m, const ErcegParams& p, double shadow_db);
/// Erceg loss with s ~ N(0, sigma) drawn from `shadow`.
double erceg_path_loss(double distance_m, const ErcegParams& p, RngStream& shadow);

/// Outdoor-to-indoor / pedestrian: 40 log10 R + 30 log10 f + 49 (R in km, f in MHz).
double pedestrian_path_loss(double r_km, double f_mhz);

/// Vehicular: 40(1 - 4e-3 dhb) log10 R - 18 log10 dhb +/- 21 log10 f + 80.
double vehicular_path_loss(double r_km, const VehicularParams& p);

/// Loss for any model at a distance in meters. The shadowing value is added
/// for Erceg and ignored by the deterministic models.
double path_loss_db(const PathLossModel& model, double distance_m, double shadow_db = 0.0);
double shadow_sigma_db(const PathLossModel& model);
std::string_view path_loss_name(const PathLossModel& model);

/// kTB noise: -174 dBm/Hz + 10 log10(B) + NF.
double thermal_noise_floor_dbm(double bandwidth_hz, double noise_figure_db);

/// Received power minus the noise floor; no interference term.
double sinr_db(const TxBudget& tx, double path_loss_db, const LinkBudget& lb);

/// Logistic block error probability centred on the MCS minimum SINR.
double bler(double sinr_db, const McsEntry& mcs, const LinkBudget& lb);

/// Spatially correlated log-normal shadowing, one independent track per base
/// station. Successive samples decorrelate as exp(-moved / decorrelation_m).
class ShadowingProcess {
public:
    ShadowingProcess(std::size_t tracks, double sigma_db, double decorrelation_m, RngStream& rng);

    /// Advances all tracks by the distance the mobile moved since the last call.
    void advance(double moved_m);
    double value(std::size_t track) const { return values_.at(track); }
    double sigma_db() const { return sigma_; }

private:
    double sigma_;
    double decorrelation_m_;
    RngStream* rng_;
    std::vector<double> values_;
};

}  // namespace wimaxtv
