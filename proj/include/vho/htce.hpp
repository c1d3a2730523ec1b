#pragma once

// Handover triggering condition estimation: when and where an MN leaving
// the WLAN cell should start the handover back to the cellular network.

#include "vho/channel.hpp"
#include "vho/hne.hpp"
#include "vho/rng.hpp"
#include "vho/sampling.hpp"

#include <cstdint>
#include <optional>
#include <variant>

namespace vho {

struct TriggerGeometry {
    double r1 = 50.0;   // m, entry radius
    double r2 = 50.0;   // m, exit radius
    double d_a = 0.0;   // m, entry point to reference point C
    double theta = kPi; // rad

    void validate() const;
    double chord() const { return traversal_distance(r1, r2, theta); }
};

struct TriggerConfig {
    double p_break_target = 0.02;
    double channel_adjustment = 0.0; // m^2, C_a
    double chi = 0.1;                // boundary fraction
    double data_rate = 60.0;         // packets/s

    void validate() const;

    friend bool operator==(const TriggerConfig&, const TriggerConfig&) = default;
};

/// D_d = chord - D_a.
double exit_distance(const TriggerGeometry& geom);

/// t_t = D_d / v. Throws std::invalid_argument unless v > 0.
double boundary_traversal_time(const TriggerGeometry& geom, double v);

struct LiteralFormula {};

struct SamplingOracle {
    std::uint64_t samples = 1'000'000;
    RngStream rng{0, 0};
};

using BreakdownMode = std::variant<LiteralFormula, SamplingOracle>;

enum class BreakdownBranch { TriggerOutsideCell, AmpleMargin, Interior };

struct BreakdownResult {
    double probability = 0.0;
    double unclamped = 0.0;
    bool clamped = false;
    BreakdownBranch branch = BreakdownBranch::Interior;
};

/// Connection-breakdown probability.
///   r2 < r_s                 -> 1
///   tau_d < (r2 - r_s) / v   -> 0
///   otherwise LiteralFormula evaluates the closed form as stated (which carries
///   an additive 1 - pi) and clamps it; SamplingOracle returns the fraction
///   of sampled angles whose boundary traversal time (chord - d_a) / v is
///   below tau_d.
BreakdownResult breakdown_probability(const TriggerGeometry& geom, double v, double tau_d, double r_s,
    const BreakdownMode& mode);

/// The interior branch integrated exactly: P(chord(theta) < d_a + tau_d v).
/// This is the quantity SamplingOracle estimates.
double breakdown_probability_exact(const TriggerGeometry& geom, double v, double tau_d);

/// Trigger radius from the literal closed form
///   r_s = sqrt((r1 Psi - sqrt(D_a^2 - r1^2 + 2 D_a tau_d v + tau_d^2 v^2 + r1^2 Psi^2))^2 - C_a),
///   Psi = cos((pi / 2) (P_Break + pi - 1)).
/// Throws std::domain_error("trigger radius undefined for these parameters")
/// with the offending radicand when either square root is negative.
double trigger_radius(const TriggerGeometry& geom, double v, double tau_d, const TriggerConfig& config);

// ---------------------------------------------------------------------------
// Exit model used by the Monte-Carlo engine.
//
// The MN is inside the WLAN session only if its chord reaches the region
// where the RSS exceeds the threshold, i.e. comes closer than r_s to the AP.
// The handover is triggered at the outbound crossing of the r_s circle; the
// connection breaks if the remaining path to the cell edge takes less than
// tau_d, or if the exit radius is below r_s (the trigger never fires).

struct ExitOutcome {
    bool session = false;    // chord enters the r_s disc
    bool triggered = false;  // outbound crossing happens before exit
    bool breakdown = false;
    double usage = 0.0;      // fraction of cell dwell spent before the trigger
    double remaining = 0.0;  // m, trigger point to exit
};

ExitOutcome trace_exit(const Trajectory& trajectory, double r_s, double v, double tau_d);

struct ExitModel {
    CellModel cell;
    bool equal_radii = true;
};

struct SessionStats {
    std::uint64_t trials = 0;
    std::uint64_t sessions = 0;
    std::uint64_t breakdowns = 0;
    double usage_sum = 0.0;
    double usage_sq_sum = 0.0;
    double remaining_sum = 0.0;
    std::uint64_t radius_rejections = 0;

    double breakdown_fraction() const noexcept;
    double usage_mean() const noexcept;
    std::optional<double> usage_stderr() const noexcept;
    std::optional<double> breakdown_stderr() const noexcept;

    SessionStats& operator+=(const SessionStats& other) noexcept;
};

/// Simulates n trajectories; trial i uses rng.substream(i).
SessionStats simulate_sessions(const ExitModel& model, double r_s, double v, double tau_d, std::uint64_t n,
    const RngStream& rng);

/// Trials [first, last) of the same sequence.
SessionStats simulate_sessions(const ExitModel& model, double r_s, double v, double tau_d, std::uint64_t first,
    std::uint64_t last, const RngStream& rng);

/// Largest r_s whose sampled breakdown fraction does not exceed p_target.
/// All bisection steps reuse the same n trajectories.
double calibrated_trigger_radius(const ExitModel& model, double v, double tau_d, double p_target, std::uint64_t n,
    const RngStream& rng);

struct UsageEstimate {
    double trigger_radius = 0.0;
    double usage = 0.0;
    std::optional<double> stderr_usage;
    double breakdown = 0.0;
    std::uint64_t sessions = 0;
};

/// Calibrates r_s at config.p_break_target on substream 0 of `rng`, then
/// measures usage over n fresh trajectories on substream 1.
UsageEstimate wlan_usage_fraction(const ExitModel& model, double v, double tau_d, const TriggerConfig& config,
    std::uint64_t n, const RngStream& rng);

// ---------------------------------------------------------------------------
// RSS thresholds and packet loss.

/// RSS at r_s including one shadowing draw.
double rss_threshold_static(const CellModel& cell, double r_s, RngStream& rng);

/// RSS_B - 10 beta log10(1 - (tau_b + delta) v / r2). Throws std::domain_error
/// ("MN too fast for seamless handover in this cell") if (tau_b + delta) v >= r2.
double rss_threshold_adaptive(const CellModel& cell, double r2, double v, const LatencyBudget& budget,
    double rss_at_border);

/// Fixed threshold for boundary fraction chi: RSS_B - 10 beta log10(1 - chi).
double rss_threshold_fixed(const CellModel& cell, double chi, double rss_at_border);

/// Mean RSS at the cell edge r2.
double border_rss(const CellModel& cell, double r2);

/// Lost packets with a fixed threshold, clamped at zero.
double packet_loss(const CellModel& cell, double r2, double v, double fixed_threshold, double adaptive_threshold,
    double rss_at_border, double data_rate);

} // namespace vho
