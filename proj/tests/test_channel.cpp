#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wimaxtv/channel.hpp"
#include "wimaxtv/phy.hpp"

using namespace wimaxtv;

namespace {

// Independent scalar evaluations of the printed formulas.
double oracle_friis(double d_m, double f_mhz, double loss) {
    const double lambda = 299792458.0 / (f_mhz * 1e6);
    return 20.0 * std::log10(4.0 * std::numbers::pi * d_m / lambda) + 10.0 * std::log10(loss);
}

double oracle_erceg(double d_m, double h, double d0, double gamma, double xf, double xh, double s) {
    return h + 10.0 * gamma * std::log10(d_m / d0) + xf + xh + s;
}

}  // namespace

TEST_CASE("free space oracle values") {
    FreeSpaceParams p;
    CHECK(std::abs(free_space_path_loss(100.0, p) - 80.40) < 0.01);
    CHECK(std::abs(free_space_path_loss(200.0, p) - 86.42) < 0.01);
    CHECK(std::abs(free_space_path_loss(100.0, p) - oracle_friis(100.0, 2500.0, 1.0)) < 1e-9);
    FreeSpaceParams lossy;
    lossy.system_loss = 2.0;
    lossy.frequency_mhz = 3500.0;
    CHECK(std::abs(free_space_path_loss(321.0, lossy) - oracle_friis(321.0, 3500.0, 2.0)) < 1e-9);
    CHECK_THROWS(free_space_path_loss(0.0, p));
}

TEST_CASE("free space doubling adds 20 log10 2") {
    for (double f : {700.0, 2500.0, 5800.0}) {
        for (double d : {1.0, 37.0, 100.0, 4000.0}) {
            FreeSpaceParams p;
            p.frequency_mhz = f;
            p.system_loss = 1.7;
            CHECK(std::abs(free_space_path_loss(2 * d, p) - free_space_path_loss(d, p) - 6.0206) < 1e-4);
            CHECK(std::abs(free_space_path_loss(2 * d, p) - free_space_path_loss(d, p) - 20.0 * std::log10(2.0)) <
                  1e-9);
        }
    }
}

TEST_CASE("erceg closed form") {
    auto p = ErcegParams::for_frequency(2500.0);
    CHECK(std::abs(p.intercept_db - oracle_friis(100.0, 2500.0, 1.0)) < 1e-9);
    p.shadow_sigma_db = 0.0;
    CHECK(erceg_path_loss(p.d0_m, p, 0.0) == p.intercept_db);
    CHECK(std::abs(erceg_path_loss(10 * p.d0_m, p, 0.0) - (p.intercept_db + 40.0)) < 1e-9);
    p.x_f_db = 1.25;
    p.x_h_db = -0.5;
    p.gamma = 3.6;
    for (double d : {100.0, 150.0, 333.3, 2000.0}) {
        CHECK(std::abs(erceg_path_loss(d, p, 0.7) - oracle_erceg(d, p.intercept_db, 100.0, 3.6, 1.25, -0.5, 0.7)) <
              1e-9);
    }
    // below d0 clamps
    CHECK(erceg_path_loss(10.0, p, 0.0) == erceg_path_loss(100.0, p, 0.0));
}

TEST_CASE("erceg shadowing is zero mean with the configured spread") {
    auto p = ErcegParams::for_frequency(2500.0);
    p.shadow_sigma_db = 8.0;
    RngStream rng(11, "shadowing");
    const double base = erceg_path_loss(250.0, p, 0.0);
    const int n = 100000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = erceg_path_loss(250.0, p, rng) - base;
        sum += s;
        sq += s * s;
    }
    CHECK(std::abs(sum / n) < 0.1);
    CHECK(std::sqrt(sq / n) == doctest::Approx(8.0).epsilon(0.02));
}

TEST_CASE("pedestrian oracle values") {
    const double oracle = 40.0 * std::log10(0.2) + 30.0 * std::log10(2500.0) + 49.0;
    CHECK(std::abs(pedestrian_path_loss(0.2, 2500.0) - oracle) < 1e-9);
    CHECK(std::abs(pedestrian_path_loss(0.2, 2500.0) - 122.98) < 0.01);
    CHECK(pedestrian_path_loss(1.0, 1.0) == doctest::Approx(49.0));
    CHECK(std::abs(pedestrian_path_loss(2.0, 2500.0) - pedestrian_path_loss(0.2, 2500.0) - 40.0) < 1e-9);
}

TEST_CASE("vehicular oracle values") {
    VehicularParams p;
    const double oracle = 40.0 * (1.0 - 4e-3 * 15.0) * std::log10(0.2) - 18.0 * std::log10(15.0) +
                          21.0 * std::log10(2500.0) + 80.0;
    CHECK(std::abs(vehicular_path_loss(0.2, p) - oracle) < 1e-9);
    CHECK(std::abs(vehicular_path_loss(0.2, p) - 103.91) < 0.01);
    CHECK(std::abs(vehicular_path_loss(1.0, p) - (-18.0 * std::log10(15.0) + 21.0 * std::log10(2500.0) + 80.0)) <
          1e-9);

    // The printed minus sign makes the loss negative at WiMAX carriers, which
    // is why +1 is the default.
    VehicularParams printed;
    printed.sign_21logf = -1;
    CHECK(std::abs(vehicular_path_loss(0.2, printed) - (103.91 - 42.0 * std::log10(2500.0))) < 0.01);
    CHECK(std::abs(vehicular_path_loss(0.2, printed) - (-38.81)) < 0.01);
    CHECK(vehicular_path_loss(0.2, printed) < 0.0);

    VehicularParams bad;
    bad.bs_height_m = 250.0;
    CHECK_THROWS(vehicular_path_loss(0.2, bad));
    bad.bs_height_m = 0.0;
    CHECK_THROWS(vehicular_path_loss(0.2, bad));
}

TEST_CASE("deterministic models are nondecreasing in distance") {
    const PathLossModel models[] = {FreeSpaceParams{}, ErcegParams::for_frequency(2500.0), PedestrianParams{},
                                    VehicularParams{}};
    for (const auto& m : models) {
        double prev = -1e9;
        for (double d = 1.0; d < 5000.0; d *= 1.07) {
            const double pl = path_loss_db(m, d, 0.0);
            CHECK(pl >= prev);
            prev = pl;
        }
    }
    CHECK(path_loss_name(models[2]) == "pedestrian");
    CHECK(shadow_sigma_db(models[1]) == 8.0);
    CHECK(shadow_sigma_db(models[0]) == 0.0);
}

TEST_CASE("noise floor and sinr") {
    CHECK(std::abs(thermal_noise_floor_dbm(5e6, 7.0) - (-100.01)) < 0.005);
    TxBudget tx;
    LinkBudget lb;
    CHECK(std::abs(sinr_db(tx, 122.98, lb) - 34.03) < 1e-9);
    CHECK(std::abs(sinr_db(tx, 132.98, lb) - (sinr_db(tx, 122.98, lb) - 10.0)) < 1e-9);
}

TEST_CASE("bler logistic") {
    LinkBudget lb;
    const auto& q = mcs_at(0);
    const auto& top = mcs_at(6);
    CHECK(bler(q.min_sinr_db, q, lb) == doctest::Approx(0.5));
    CHECK(bler(top.min_sinr_db, top, lb) == doctest::Approx(0.5));
    CHECK(bler(1e6, q, lb) == 0.0);
    CHECK(bler(-1e6, q, lb) == 1.0);
    double prev = 1.0;
    for (double s = -30.0; s <= 50.0; s += 0.25) {
        const double b = bler(s, top, lb);
        CHECK(b <= prev);
        CHECK(b >= 0.0);
        CHECK(b <= 1.0);
        CHECK(bler(s, top, lb) >= bler(s, q, lb));
        prev = b;
    }
    // below 1e-3 roughly 3.5 dB above the threshold
    CHECK(bler(q.min_sinr_db + 3.5, q, lb) < 1e-3);
    CHECK(bler(q.min_sinr_db + 3.0, q, lb) > 1e-3);
}

TEST_CASE("shadowing process keeps its spread and correlates over short moves") {
    RngStream rng(5, "shadowing");
    ShadowingProcess proc(7, 8.0, 50.0, rng);
    const int n = 100000;
    double sum = 0.0;
    double sq = 0.0;
    double lag = 0.0;
    double prev = proc.value(3);
    for (int i = 0; i < n; ++i) {
        proc.advance(5.0);
        const double v = proc.value(3);
        sum += v;
        sq += v * v;
        lag += v * prev;
        prev = v;
    }
    const double var = sq / n - (sum / n) * (sum / n);
    CHECK(std::sqrt(var) == doctest::Approx(8.0).epsilon(0.05));
    CHECK(lag / n / var == doctest::Approx(std::exp(-5.0 / 50.0)).epsilon(0.02));

    RngStream r2(5, "shadowing");
    ShadowingProcess frozen(2, 8.0, 50.0, r2);
    const double v0 = frozen.value(0);
    frozen.advance(0.0);
    CHECK(frozen.value(0) == v0);
}
