#pragma once

// Stochastic WLAN cell: Gaussian ("amoebic") coverage radius and the
// log-distance path loss model with optional shadowing.

#include "vho/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vho {

struct CellModel {
    double mean_radius = 50.0;        // m
    double sigma_radius = 5.0;        // m
    double tx_power_dbm = 20.0;       // dBm
    double ref_distance = 1.0;        // m, d0
    double ref_path_loss_db = 40.0;   // dB, PL(d0)
    double path_loss_exponent = 3.0;  // beta
    double shadow_sigma_db = 4.0;     // dB

    /// Throws std::invalid_argument on a hard violation. Returns soft
    /// warnings (e.g. sigma_radius above mean_radius / 3).
    std::vector<std::string> validate() const;

    /// F2 = 10 * beta, the dB-per-decade slope of the path loss.
    double slope_db_per_decade() const noexcept { return 10.0 * path_loss_exponent; }

    friend bool operator==(const CellModel&, const CellModel&) = default;
};

/// Radius draw from Normal(mean_radius, sigma_radius^2) truncated to r > 0.
/// Throws std::runtime_error after kMaxRadiusRejections consecutive
/// non-positive draws.
double sample_radius(const CellModel& cell, RngStream& rng);

/// Same as sample_radius, also reporting how many draws were rejected.
double sample_radius(const CellModel& cell, RngStream& rng, std::uint64_t& rejections);

inline constexpr int kMaxRadiusRejections = 1000;

/// Mean received power at `distance` (shadowing off).
/// Throws std::domain_error when distance < ref_distance.
double rss_at_distance(const CellModel& cell, double distance);

/// Received power with a zero-mean Gaussian shadowing term of
/// shadow_sigma_db, drawn i.i.d. per call.
double rss_at_distance(const CellModel& cell, double distance, RngStream& rng);

/// (1/n) sum g(r_i) over n radius draws.
template <class Fn>
double monte_carlo_expectation(Fn&& g, const CellModel& cell, std::uint64_t n, RngStream& rng)
{
    if (n == 0) {
        throw std::invalid_argument("monte_carlo_expectation: n >= 1 required");
    }
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        sum += g(sample_radius(cell, rng));
    }
    return sum / static_cast<double>(n);
}

} // namespace vho
