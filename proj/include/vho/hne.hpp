#pragma once

// Handover necessity estimation.
//
// A mobile node (MN) crosses the WLAN cell along a chord from an entry point
// at distance r1 from the AP to an exit point at distance r2. The angle
// between entry and exit, seen from the AP, has CDF (2*pi - t)*t / pi^2 on
// [0, pi], and the dwell time is the chord length divided by the speed.
// Thresholds N (unnecessary handover) and M (handover failure) invert the
// dwell-time CDF so that the designed probabilities are met.

#include "vho/channel.hpp"

#include <numbers>
#include <optional>

namespace vho {

inline constexpr double kPi = std::numbers::pi;

struct MobilityProfile {
    double v_min = 1.0;  // m/s
    double v_max = 30.0; // m/s
    double r1 = 50.0;    // m, entry radius
    double r2 = 50.0;    // m, exit radius

    /// Bound of the traversal angle; fixed.
    static constexpr double theta_bound() noexcept { return kPi; }

    void validate() const;

    friend bool operator==(const MobilityProfile&, const MobilityProfile&) = default;
};

struct LatencyBudget {
    double tau_a = 1.6;  // s, moving-in latency
    double tau_d = 0.4;  // s, moving-out latency
    double tau_b = 0.3;  // s, boundary notification latency
    double delta = 0.05; // s, one-way packet delay

    double tau_t() const noexcept { return tau_a + tau_d; }

    void validate() const;

    friend bool operator==(const LatencyBudget&, const LatencyBudget&) = default;
};

enum class HandoverDecision { Necessary, Unnecessary };

/// How the failure threshold's auxiliary angle is formed.
enum class FailureAngleConvention {
    OwnLatency,   ///< z recomputed from tau_a (dimensionally consistent, default)
    SharedAngle,  ///< z taken from tau_t for both thresholds
};

double theta_cdf(double theta) noexcept;
double theta_pdf(double theta) noexcept;

/// Chord length between points at radii r1, r2 separated by angle theta.
/// Evaluated as sqrt((r1 - r2)^2 + 4 r1 r2 sin^2(theta / 2)), which equals the
/// cosine rule but keeps precision for small angles.
double traversal_distance(double r1, double r2, double theta);

/// Inverse of traversal_distance in theta, clamped to [0, pi].
double chord_angle(double r1, double r2, double distance) noexcept;

/// Throws std::invalid_argument unless v > 0 and 0 <= theta <= pi.
double traversal_time(const MobilityProfile& profile, double theta, double v);

/// Dwell-time density. Zero outside (|r1-r2|/v, (r1+r2)/v); within
/// kEndpointOffset of an endpoint it is evaluated at the offset point.
double traversal_time_pdf(const MobilityProfile& profile, double v, double t);

/// P(T <= t) for the dwell time T, in closed form.
double traversal_time_cdf(const MobilityProfile& profile, double v, double t);

inline constexpr double kEndpointOffset = 1e-12;

/// P(N < T <= tau_t). Throws std::domain_error("latency exceeds maximum
/// dwell") if tau_t > (r1 + r2) / v and std::invalid_argument unless
/// 0 <= n_threshold <= tau_t.
double prob_unnecessary(const MobilityProfile& profile, double v, const LatencyBudget& budget, double n_threshold);

/// P(M < T <= tau_a), same contract as prob_unnecessary with tau_a.
double prob_failure(const MobilityProfile& profile, double v, const LatencyBudget& budget, double m_threshold);

/// Threshold N meeting target_pu. Closed form first, verified by forward
/// evaluation, with bracketed root finding as fallback.
/// Throws std::domain_error naming the achievable maximum if target_pu
/// exceeds P(T <= tau_t).
double threshold_unnecessary(const MobilityProfile& profile, double v, const LatencyBudget& budget, double target_pu);

double threshold_failure(const MobilityProfile& profile, double v, const LatencyBudget& budget, double target_pf,
    FailureAngleConvention convention = FailureAngleConvention::OwnLatency);

/// Necessary iff predicted_dwell > max(N, M).
HandoverDecision handover_necessary(const MobilityProfile& profile, double v, const LatencyBudget& budget,
    double target_pu, double target_pf, double predicted_dwell);

/// Design against the stochastic cell: the window probability
/// P(threshold < T <= tau) averaged over the radius distribution of `cell`
/// (Normal truncated to r > 0). With equal_radii the exit radius repeats the
/// entry radius, otherwise the two are independent. The average is a
/// deterministic Simpson quadrature over +/- 8 sigma.
double expected_window_probability(const CellModel& cell, bool equal_radii, double v, double tau, double threshold);

/// Threshold in [0, tau] whose radius-averaged window probability equals
/// target. Throws std::domain_error naming the achievable maximum.
double expected_threshold(const CellModel& cell, bool equal_radii, double v, double tau, double target);

namespace hne_detail {

/// Closed-form threshold for latency `tau`: picks the +/- branch with the
/// auxiliary angle inside [0, pi]. Empty when neither branch qualifies.
std::optional<double> threshold_closed_form(double r1, double r2, double v, double tau, double target);

/// Same, but with the auxiliary angle z taken from `z_latency` instead of tau.
std::optional<double> threshold_closed_form(double r1, double r2, double v, double z_latency, double tau,
    double target);

/// Bisection on P(threshold < T <= tau) = target over the dwell support.
double threshold_bisection(double r1, double r2, double v, double tau, double target);

/// P(threshold < T <= tau) without argument checks, clamped to [0, 1].
double window_probability(double r1, double r2, double v, double tau, double threshold);

} // namespace hne_detail

} // namespace vho
