#pragma once

// Monte-Carlo sweeps over velocity (or cell-radius spread) driving the HNE
// and HTCE engines.
//
// Reproducibility: trial i of every sweep point draws from substream i of a
// fixed per-purpose stream, so all points see the same sampled cells
// (common random numbers) and results never depend on the thread count.
// Trials are reduced in fixed chunks of kChunkTrials, in chunk order.

#include "vho/channel.hpp"
#include "vho/hne.hpp"
#include "vho/htce.hpp"
#include "vho/table.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vho {

enum class SweepParameter { Velocity, SigmaRadius };

std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string& s);

/// A fixed RSS threshold in dBm, or the adaptive threshold itself.
struct FixedThreshold {
    bool adaptive = false;
    double dbm = 0.0;

    std::string label() const;

    friend bool operator==(const FixedThreshold&, const FixedThreshold&) = default;
};

struct SweepConfig {
    SweepParameter parameter = SweepParameter::Velocity;
    std::vector<double> values{1, 2, 5, 10, 15, 20, 25, 30};
    std::uint64_t trials_per_point = 1'000'000;
    std::uint64_t seed = 20140901;
    bool equal_radii = true;
    unsigned threads = 1;                // 0 = hardware concurrency
    double velocity = 10.0;              // m/s, used when sweeping sigma_radius
    double target_pu = 0.02;
    double target_pf = 0.02;
    std::vector<double> p_break_targets{0.02, 0.3, 0.7};
    std::vector<FixedThreshold> fixed_thresholds{{false, -72.0}, {false, -70.0}, {false, -68.0}};
    std::uint64_t calibration_samples = 200'000;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct GraSettings {
    double zeta = 0.5;
    std::vector<double> zeta_sweep{0.3, 0.5, 0.7};

    friend bool operator==(const GraSettings&, const GraSettings&) = default;
};

struct Scenario {
    CellModel cell;
    MobilityProfile mobility;
    LatencyBudget budget;
    TriggerConfig trigger;
    double d_a = 0.0; // m, entry point to reference point C
    SweepConfig sweep;
    GraSettings gra;

    /// Throws std::invalid_argument on the first violation; returns soft warnings.
    std::vector<std::string> validate() const;

    /// (velocity, sigma_radius) at sweep point k.
    double velocity_at(std::size_t k) const;
    CellModel cell_at(std::size_t k) const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline constexpr std::uint64_t kChunkTrials = 4096;

struct HneRow {
    double sweep_value = 0.0;
    double velocity = 0.0;
    double sigma_radius = 0.0;
    // Thresholds meeting the targets on average over the sampled cell radii.
    std::optional<double> n_threshold;
    std::optional<double> m_threshold;
    // Closed-form thresholds for the fixed design radii r1, r2.
    std::optional<double> n_closed_form;
    std::optional<double> m_closed_form;
    std::optional<double> pu_design; // radius-averaged P(N < T <= tau_t)
    std::optional<double> pf_design; // radius-averaged P(M < T <= tau_a)
    // Per attempt: P(T <= tau_t | T > N), likewise for failures.
    std::optional<double> pu;
    std::optional<double> pu_stderr;
    std::optional<double> pf;
    std::optional<double> pf_stderr;
    // Joint: P(N < T <= tau_t) over all trials.
    std::optional<double> pu_joint;
    std::optional<double> pu_joint_stderr;
    std::optional<double> pf_joint;
    std::optional<double> pf_joint_stderr;
    std::uint64_t trials = 0;
    std::uint64_t pu_attempts = 0;
    std::uint64_t unnecessary = 0;
    std::uint64_t pf_attempts = 0;
    std::uint64_t failures = 0;
    std::uint64_t radius_rejections = 0;
    std::string error;
};

struct HneSummary {
    std::vector<HneRow> rows;
    Table table() const;
};

struct HtceRow {
    double p_break_target = 0.0;
    double sweep_value = 0.0;
    double velocity = 0.0;
    double sigma_radius = 0.0;
    std::optional<double> trigger_radius;         // calibrated against sampled sessions
    std::optional<double> trigger_distance;       // mean_radius - trigger_radius
    std::optional<double> trigger_radius_literal; // closed form, may be undefined
    std::optional<double> breakdown;              // fraction of sessions that broke
    std::optional<double> breakdown_stderr;
    std::optional<double> breakdown_literal;      // closed form at the calibrated radius, clamped
    bool literal_clamped = false;
    std::optional<double> usage;
    std::optional<double> usage_stderr;
    std::optional<double> mean_remaining; // m, trigger point to exit
    std::uint64_t trials = 0;
    std::uint64_t sessions = 0;
    std::uint64_t breakdowns = 0;
    std::uint64_t radius_rejections = 0;
    std::string error;
};

struct PacketLossRow {
    FixedThreshold threshold;
    double sweep_value = 0.0;
    double velocity = 0.0;
    double sigma_radius = 0.0;
    std::optional<double> packet_loss;
    std::optional<double> packet_loss_stderr;
    std::uint64_t trials = 0;
    std::uint64_t evaluated = 0; // trials where the adaptive threshold exists
    std::uint64_t lossy = 0;     // trials with loss > 0
    std::uint64_t radius_rejections = 0;
    std::string error;
};

struct HtceSummary {
    std::vector<HtceRow> rows;            // grouped by p_break_target, then sweep value
    std::vector<PacketLossRow> loss_rows; // grouped by threshold, then sweep value
    std::uint64_t literal_clamps = 0;    // closed-form breakdown values clamped to [0, 1]
    std::uint64_t literal_undefined = 0; // points where the closed-form radius has no real value

    Table table() const;
    Table loss_table() const;
};

HneSummary run_hne_sweep(const Scenario& scenario);
HtceSummary run_htce_sweep(const Scenario& scenario);

} // namespace vho
