#include "vho/hne.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace vho {

namespace {

constexpr double kPi2 = kPi * kPi;

// Forward check tolerance before falling back to bisection.
constexpr double kForwardTolerance = 1e-6;

double angle_cdf(double y) noexcept { return (2.0 * kPi - y) * y / kPi2; }

void require_speed(double v)
{
    if (!(v > 0.0)) {
        throw std::invalid_argument("v > 0 required");
    }
}

void require_support(double r1, double r2, double v, double tau, const char* latency_name)
{
    if (tau > (r1 + r2) / v) {
        std::ostringstream os;
        os << "latency exceeds maximum dwell: " << latency_name << " = " << tau << " s > (r1 + r2)/v = "
           << (r1 + r2) / v << " s";
        throw std::domain_error(os.str());
    }
}

double window_checked(const MobilityProfile& profile, double v, double tau, double threshold, const char* name)
{
    profile.validate();
    require_speed(v);
    require_support(profile.r1, profile.r2, v, tau, name);
    if (!(threshold >= 0.0) || threshold > tau) {
        std::ostringstream os;
        os << "threshold " << threshold << " s must lie in [0, " << name << " = " << tau << " s]";
        throw std::invalid_argument(os.str());
    }
    return hne_detail::window_probability(profile.r1, profile.r2, v, tau, threshold);
}

double threshold_checked(const MobilityProfile& profile, double v, double tau, double z_tau, double target,
    const char* name, bool verify)
{
    profile.validate();
    require_speed(v);
    if (!(target > 0.0 && target < 1.0)) {
        throw std::invalid_argument("target probability must lie in (0, 1)");
    }
    require_support(profile.r1, profile.r2, v, tau, name);
    const double reachable = angle_cdf(chord_angle(profile.r1, profile.r2, tau * v));
    if (target > reachable) {
        std::ostringstream os;
        os << "target probability " << target << " unachievable; P(T <= " << name << ") = " << reachable
           << " is the achievable maximum";
        throw std::domain_error(os.str());
    }

    const auto closed = hne_detail::threshold_closed_form(profile.r1, profile.r2, v, z_tau, tau, target);
    if (!verify) {
        if (!closed) {
            throw std::domain_error("no admissible branch for the threshold angle");
        }
        return *closed;
    }
    if (closed) {
        const double forward = hne_detail::window_probability(profile.r1, profile.r2, v, tau, *closed);
        if (std::abs(forward - target) <= kForwardTolerance) {
            return *closed;
        }
    }
    return hne_detail::threshold_bisection(profile.r1, profile.r2, v, tau, target);
}

struct RadiusNode {
    double r;
    double w;
};

// Simpson nodes for the truncated Gaussian radius, weights summing to one.
std::vector<RadiusNode> radius_nodes(const CellModel& cell, int intervals)
{
    if (cell.sigma_radius == 0.0) {
        return {{cell.mean_radius, 1.0}};
    }
    std::vector<RadiusNode> nodes;
    const double lo = -8.0;
    const double h = 16.0 / intervals;
    double total = 0.0;
    for (int i = 0; i <= intervals; ++i) {
        const double x = lo + h * i;
        const double r = cell.mean_radius + cell.sigma_radius * x;
        if (!(r > 0.0)) continue;
        const double simpson = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double w = simpson * std::exp(-0.5 * x * x);
        nodes.push_back({r, w});
        total += w;
    }
    for (auto& n : nodes) n.w /= total;
    return nodes;
}

template <class Fn>
double radius_average(const std::vector<RadiusNode>& nodes, bool equal_radii, Fn f)
{
    double sum = 0.0;
    for (const auto& a : nodes) {
        if (equal_radii) {
            sum += a.w * f(a.r, a.r);
            continue;
        }
        for (const auto& b : nodes) sum += a.w * b.w * f(a.r, b.r);
    }
    return sum;
}

int quadrature_intervals(bool equal_radii) { return equal_radii ? 320 : 160; }

} // namespace

void MobilityProfile::validate() const
{
    if (!(v_min > 0.0) || !(v_max >= v_min)) {
        throw std::invalid_argument("mobility: 0 < v_min <= v_max required");
    }
    if (!(r1 > 0.0) || !(r2 > 0.0)) {
        throw std::invalid_argument("mobility: r1 > 0 and r2 > 0 required");
    }
}

void LatencyBudget::validate() const
{
    if (!(tau_a >= 0.0) || !(tau_d >= 0.0) || !(tau_b >= 0.0) || !(delta >= 0.0)) {
        throw std::invalid_argument("latency: all latencies must be >= 0");
    }
}

double theta_cdf(double theta) noexcept
{
    if (theta < 0.0) return 0.0;
    if (theta > kPi) return 1.0;
    return angle_cdf(theta);
}

double theta_pdf(double theta) noexcept
{
    if (theta < 0.0 || theta > kPi) return 0.0;
    return 2.0 * (kPi - theta) / kPi2;
}

double traversal_distance(double r1, double r2, double theta)
{
    const double s = std::sin(0.5 * theta);
    return std::sqrt((r1 - r2) * (r1 - r2) + 4.0 * r1 * r2 * s * s);
}

double chord_angle(double r1, double r2, double distance) noexcept
{
    // sin^2(theta / 2) and cos^2(theta / 2) from factored differences, so
    // both ends of [0, pi] keep full precision.
    const double gap = std::abs(r1 - r2);
    const double sum = r1 + r2;
    const double s2 = (distance - gap) * (distance + gap) / (4.0 * r1 * r2);
    if (s2 <= 0.5) {
        return 2.0 * std::asin(std::sqrt(std::clamp(s2, 0.0, 1.0)));
    }
    const double c2 = (sum - distance) * (sum + distance) / (4.0 * r1 * r2);
    return kPi - 2.0 * std::asin(std::sqrt(std::clamp(c2, 0.0, 1.0)));
}

double traversal_time(const MobilityProfile& profile, double theta, double v)
{
    require_speed(v);
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw std::invalid_argument("traversal angle must lie in [0, pi]");
    }
    return traversal_distance(profile.r1, profile.r2, theta) / v;
}

double traversal_time_pdf(const MobilityProfile& profile, double v, double t)
{
    require_speed(v);
    const double r1 = profile.r1;
    const double r2 = profile.r2;
    const double lo = std::abs(r1 - r2) / v;
    const double hi = (r1 + r2) / v;
    if (t < lo || t > hi) {
        return 0.0;
    }
    t = std::clamp(t, lo + kEndpointOffset, hi - kEndpointOffset);

    // 4 r1^2 r2^2 - (r1^2 + r2^2 - d^2)^2 factored so that neither endpoint
    // suffers cancellation.
    const double d = t * v;
    const double gap = std::abs(r1 - r2);
    const double radicand = (d - gap) * (d + gap) * (r1 + r2 - d) * (r1 + r2 + d);
    if (!(radicand > 0.0)) {
        return 0.0;
    }
    const double theta = chord_angle(r1, r2, d);
    return 4.0 * v * d * (kPi - theta) / (kPi2 * std::sqrt(radicand));
}

double traversal_time_cdf(const MobilityProfile& profile, double v, double t)
{
    require_speed(v);
    if (t <= 0.0) return 0.0;
    return angle_cdf(chord_angle(profile.r1, profile.r2, t * v));
}

double prob_unnecessary(const MobilityProfile& profile, double v, const LatencyBudget& budget, double n_threshold)
{
    budget.validate();
    return window_checked(profile, v, budget.tau_t(), n_threshold, "tau_t");
}

double prob_failure(const MobilityProfile& profile, double v, const LatencyBudget& budget, double m_threshold)
{
    budget.validate();
    return window_checked(profile, v, budget.tau_a, m_threshold, "tau_a");
}

double threshold_unnecessary(const MobilityProfile& profile, double v, const LatencyBudget& budget, double target_pu)
{
    budget.validate();
    const double tau = budget.tau_t();
    return threshold_checked(profile, v, tau, tau, target_pu, "tau_t", true);
}

double threshold_failure(const MobilityProfile& profile, double v, const LatencyBudget& budget, double target_pf,
    FailureAngleConvention convention)
{
    budget.validate();
    if (convention == FailureAngleConvention::SharedAngle) {
        return threshold_checked(profile, v, budget.tau_a, budget.tau_t(), target_pf, "tau_a", false);
    }
    return threshold_checked(profile, v, budget.tau_a, budget.tau_a, target_pf, "tau_a", true);
}

HandoverDecision handover_necessary(const MobilityProfile& profile, double v, const LatencyBudget& budget,
    double target_pu, double target_pf, double predicted_dwell)
{
    const double n = threshold_unnecessary(profile, v, budget, target_pu);
    const double m = threshold_failure(profile, v, budget, target_pf);
    return predicted_dwell > std::max(n, m) ? HandoverDecision::Necessary : HandoverDecision::Unnecessary;
}

double expected_window_probability(const CellModel& cell, bool equal_radii, double v, double tau, double threshold)
{
    cell.validate();
    require_speed(v);
    const auto nodes = radius_nodes(cell, quadrature_intervals(equal_radii));
    return radius_average(nodes, equal_radii,
        [&](double r1, double r2) { return hne_detail::window_probability(r1, r2, v, tau, threshold); });
}

double expected_threshold(const CellModel& cell, bool equal_radii, double v, double tau, double target)
{
    cell.validate();
    require_speed(v);
    if (!(target > 0.0 && target < 1.0)) {
        throw std::invalid_argument("target probability must lie in (0, 1)");
    }
    if (!(tau >= 0.0)) {
        throw std::invalid_argument("latency must be >= 0");
    }
    const auto nodes = radius_nodes(cell, quadrature_intervals(equal_radii));
    auto window = [&](double threshold) {
        return radius_average(nodes, equal_radii,
            [&](double r1, double r2) { return hne_detail::window_probability(r1, r2, v, tau, threshold); });
    };
    const double reachable = window(0.0);
    if (target > reachable) {
        std::ostringstream os;
        os << "target probability " << target << " unachievable; radius-averaged P(T <= " << tau
           << " s) = " << reachable << " is the achievable maximum";
        throw std::domain_error(os.str());
    }
    double lo = 0.0;
    double hi = tau;
    for (int i = 0; i < 100 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (window(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace hne_detail {

double window_probability(double r1, double r2, double v, double tau, double threshold)
{
    const double upper = angle_cdf(chord_angle(r1, r2, tau * v));
    const double lower = angle_cdf(chord_angle(r1, r2, threshold * v));
    return std::clamp(upper - lower, 0.0, 1.0);
}

std::optional<double> threshold_closed_form(double r1, double r2, double v, double tau, double target)
{
    return threshold_closed_form(r1, r2, v, tau, tau, target);
}

std::optional<double> threshold_closed_form(double r1, double r2, double v, double z_latency, double tau,
    double target)
{
    const double z = chord_angle(r1, r2, z_latency * v);
    // pi^2 (1 + p) - 2 pi z + z^2, written as (pi - z)^2 + pi^2 p.
    const double root = std::sqrt((kPi - z) * (kPi - z) + kPi2 * target);

    std::optional<double> best;
    double best_err = 0.0;
    for (const double y : {kPi - root, kPi + root}) {
        if (!(y >= 0.0 && y <= kPi)) {
            continue;
        }
        const double threshold = traversal_distance(r1, r2, y) / v;
        const double err = std::abs(window_probability(r1, r2, v, tau, std::min(threshold, tau)) - target);
        if (!best || err < best_err) {
            best = threshold;
            best_err = err;
        }
    }
    return best;
}

double threshold_bisection(double r1, double r2, double v, double tau, double target)
{
    // window_probability is non-increasing in the threshold.
    double lo = std::abs(r1 - r2) / v;
    double hi = tau;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (window_probability(r1, r2, v, tau, mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace hne_detail

} // namespace vho
