#include "vho/htce.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace vho {

namespace {

void require_speed(double v)
{
    if (!(v > 0.0)) {
        throw std::invalid_argument("v > 0 required");
    }
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

double psi(double p_break) { return std::cos(0.5 * kPi * (p_break + kPi - 1.0)); }

double fraction_below(const std::vector<Trajectory>& sample, double r_s, double v, double tau_d)
{
    std::uint64_t sessions = 0;
    std::uint64_t breaks = 0;
    for (const auto& t : sample) {
        const auto out = trace_exit(t, r_s, v, tau_d);
        sessions += out.session;
        breaks += out.session && out.breakdown;
    }
    return sessions == 0 ? 0.0 : static_cast<double>(breaks) / static_cast<double>(sessions);
}

} // namespace

void TriggerGeometry::validate() const
{
    if (!(r1 >= 0.0 && r2 >= 0.0 && d_a >= 0.0)) {
        throw std::invalid_argument("trigger geometry: lengths must be >= 0");
    }
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw std::invalid_argument("trigger geometry: theta must lie in [0, pi]");
    }
    if (d_a > chord() * (1.0 + 1e-12)) {
        throw std::invalid_argument("trigger geometry: d_a exceeds the chord length");
    }
}

void TriggerConfig::validate() const
{
    if (!(p_break_target > 0.0 && p_break_target < 1.0)) {
        throw std::invalid_argument("trigger: 0 < p_break_target < 1 required");
    }
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw std::invalid_argument("trigger: chi must lie in [0, 1]");
    }
    if (!(data_rate >= 0.0)) {
        throw std::invalid_argument("trigger: data_rate >= 0 required");
    }
    if (!std::isfinite(channel_adjustment)) {
        throw std::invalid_argument("trigger: channel_adjustment must be finite");
    }
}

double exit_distance(const TriggerGeometry& geom)
{
    geom.validate();
    return std::max(geom.chord() - geom.d_a, 0.0);
}

double boundary_traversal_time(const TriggerGeometry& geom, double v)
{
    require_speed(v);
    return exit_distance(geom) / v;
}

BreakdownResult breakdown_probability(const TriggerGeometry& geom, double v, double tau_d, double r_s,
    const BreakdownMode& mode)
{
    geom.validate();
    require_speed(v);
    BreakdownResult out;
    if (geom.r2 < r_s) {
        out.probability = out.unclamped = 1.0;
        out.branch = BreakdownBranch::TriggerOutsideCell;
        return out;
    }
    if (tau_d < (geom.r2 - r_s) / v) {
        out.probability = out.unclamped = 0.0;
        out.branch = BreakdownBranch::AmpleMargin;
        return out;
    }
    out.branch = BreakdownBranch::Interior;

    if (std::holds_alternative<LiteralFormula>(mode)) {
        const double r1 = geom.r1;
        const double r2 = geom.r2;
        const double da = geom.d_a;
        const double b = (r1 * r1 + r2 * r2 - 2.0 * da * tau_d * v - tau_d * tau_d * v * v - da * da) / (2.0 * r1 * r2);
        out.unclamped = 1.0 - kPi + (2.0 / kPi) * std::acos(clamp_unit(b));
        out.probability = std::clamp(out.unclamped, 0.0, 1.0);
        out.clamped = out.probability != out.unclamped;
        return out;
    }

    const auto& oracle = std::get<SamplingOracle>(mode);
    if (oracle.samples == 0) {
        throw std::invalid_argument("sampling oracle needs at least one sample");
    }
    RngStream rng = oracle.rng;
    const double reach = tau_d * v;
    std::uint64_t below = 0;
    for (std::uint64_t i = 0; i < oracle.samples; ++i) {
        const double dd = std::max(traversal_distance(geom.r1, geom.r2, theta_sampler(rng)) - geom.d_a, 0.0);
        below += dd < reach;
    }
    out.probability = out.unclamped = static_cast<double>(below) / static_cast<double>(oracle.samples);
    return out;
}

double breakdown_probability_exact(const TriggerGeometry& geom, double v, double tau_d)
{
    require_speed(v);
    return theta_cdf(chord_angle(geom.r1, geom.r2, geom.d_a + tau_d * v));
}

double trigger_radius(const TriggerGeometry& geom, double v, double tau_d, const TriggerConfig& config)
{
    config.validate();
    require_speed(v);
    const double r1 = geom.r1;
    const double da = geom.d_a;
    const double reach = tau_d * v;
    const double p = psi(config.p_break_target);

    const double inner = da * da - r1 * r1 + 2.0 * da * reach + reach * reach + r1 * r1 * p * p;
    if (inner < 0.0) {
        std::ostringstream os;
        os << "trigger radius undefined for these parameters (inner radicand " << inner << ")";
        throw std::domain_error(os.str());
    }
    const double bracket = r1 * p - std::sqrt(inner);
    const double outer = bracket * bracket - config.channel_adjustment;
    if (outer < 0.0) {
        std::ostringstream os;
        os << "trigger radius undefined for these parameters (radicand " << outer << ")";
        throw std::domain_error(os.str());
    }
    return std::sqrt(outer);
}

ExitOutcome trace_exit(const Trajectory& trajectory, double r_s, double v, double tau_d)
{
    const double r1 = trajectory.r_entry;
    const double r2 = trajectory.r_exit;
    const double chord = traversal_distance(r1, r2, trajectory.theta);
    ExitOutcome out;

    if (!(chord > 0.0)) {
        out.session = r1 < r_s;
        out.breakdown = out.session;
        out.usage = out.session ? 1.0 : 0.0;
        return out;
    }

    // Foot of the perpendicular from the AP, measured from the entry point.
    const double foot = (r1 * r1 - r2 * r2 + chord * chord) / (2.0 * chord);
    const double closest_sq = std::max(r1 * r1 - foot * foot, 0.0);
    double nearest = 0.0;
    if (foot < 0.0) {
        nearest = r1;
    } else if (foot > chord) {
        nearest = r2;
    } else {
        nearest = std::sqrt(closest_sq);
    }
    out.session = nearest < r_s;
    if (!out.session) {
        return out;
    }
    if (r2 < r_s) {
        out.breakdown = true;
        out.usage = 1.0;
        return out;
    }
    out.triggered = true;
    const double crossing = std::clamp(foot + std::sqrt(std::max(r_s * r_s - closest_sq, 0.0)), 0.0, chord);
    out.remaining = chord - crossing;
    out.usage = crossing / chord;
    out.breakdown = out.remaining < tau_d * v;
    return out;
}

double SessionStats::breakdown_fraction() const noexcept
{
    return sessions == 0 ? 0.0 : static_cast<double>(breakdowns) / static_cast<double>(sessions);
}

double SessionStats::usage_mean() const noexcept
{
    return sessions == 0 ? 0.0 : usage_sum / static_cast<double>(sessions);
}

std::optional<double> SessionStats::usage_stderr() const noexcept
{
    if (sessions < 2) return std::nullopt;
    const double n = static_cast<double>(sessions);
    const double mean = usage_sum / n;
    const double var = std::max(usage_sq_sum / n - mean * mean, 0.0) * n / (n - 1.0);
    return std::sqrt(var / n);
}

std::optional<double> SessionStats::breakdown_stderr() const noexcept
{
    if (sessions < 2) return std::nullopt;
    const double p = breakdown_fraction();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(sessions));
}

SessionStats& SessionStats::operator+=(const SessionStats& o) noexcept
{
    trials += o.trials;
    sessions += o.sessions;
    breakdowns += o.breakdowns;
    usage_sum += o.usage_sum;
    usage_sq_sum += o.usage_sq_sum;
    remaining_sum += o.remaining_sum;
    radius_rejections += o.radius_rejections;
    return *this;
}

SessionStats simulate_sessions(const ExitModel& model, double r_s, double v, double tau_d, std::uint64_t n,
    const RngStream& rng)
{
    return simulate_sessions(model, r_s, v, tau_d, 0, n, rng);
}

SessionStats simulate_sessions(const ExitModel& model, double r_s, double v, double tau_d, std::uint64_t first,
    std::uint64_t last, const RngStream& rng)
{
    require_speed(v);
    SessionStats stats;
    for (std::uint64_t i = first; i < last; ++i) {
        RngStream trial = rng.substream(i);
        const auto t = sample_trajectory(model.cell, model.equal_radii, trial, stats.radius_rejections);
        const auto out = trace_exit(t, r_s, v, tau_d);
        ++stats.trials;
        if (!out.session) continue;
        ++stats.sessions;
        stats.breakdowns += out.breakdown;
        stats.usage_sum += out.usage;
        stats.usage_sq_sum += out.usage * out.usage;
        stats.remaining_sum += out.remaining;
    }
    return stats;
}

double calibrated_trigger_radius(const ExitModel& model, double v, double tau_d, double p_target, std::uint64_t n,
    const RngStream& rng)
{
    require_speed(v);
    if (!(p_target > 0.0 && p_target < 1.0)) {
        throw std::invalid_argument("breakdown target must lie in (0, 1)");
    }
    if (n == 0) {
        throw std::invalid_argument("calibration needs at least one trajectory");
    }
    std::vector<Trajectory> sample;
    sample.reserve(n);
    std::uint64_t rejections = 0;
    double r_max = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        RngStream trial = rng.substream(i);
        sample.push_back(sample_trajectory(model.cell, model.equal_radii, trial, rejections));
        r_max = std::max({r_max, sample.back().r_entry, sample.back().r_exit});
    }

    // Above every exit radius the trigger never fires and every session breaks.
    double lo = 0.0;
    double hi = r_max * (1.0 + 1e-9) + 1e-9;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (fraction_below(sample, mid, v, tau_d) <= p_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

UsageEstimate wlan_usage_fraction(const ExitModel& model, double v, double tau_d, const TriggerConfig& config,
    std::uint64_t n, const RngStream& rng)
{
    config.validate();
    if (n == 0) {
        throw std::invalid_argument("wlan_usage_fraction: n >= 1 required");
    }
    UsageEstimate est;
    est.trigger_radius = calibrated_trigger_radius(model, v, tau_d, config.p_break_target, n, rng.substream(0));
    const auto stats = simulate_sessions(model, est.trigger_radius, v, tau_d, n, rng.substream(1));
    est.usage = stats.usage_mean();
    est.stderr_usage = stats.usage_stderr();
    est.breakdown = stats.breakdown_fraction();
    est.sessions = stats.sessions;
    return est;
}

double rss_threshold_static(const CellModel& cell, double r_s, RngStream& rng)
{
    return rss_at_distance(cell, r_s, rng);
}

double rss_threshold_adaptive(const CellModel& cell, double r2, double v, const LatencyBudget& budget,
    double rss_at_border)
{
    budget.validate();
    if (!(v >= 0.0)) {
        throw std::invalid_argument("v >= 0 required");
    }
    const double reach = (budget.tau_b + budget.delta) * v;
    if (!(reach < r2)) {
        throw std::domain_error("MN too fast for seamless handover in this cell");
    }
    return rss_at_border - cell.slope_db_per_decade() * std::log10(1.0 - reach / r2);
}

double rss_threshold_fixed(const CellModel& cell, double chi, double rss_at_border)
{
    if (!(chi >= 0.0 && chi < 1.0)) {
        throw std::invalid_argument("chi must lie in [0, 1) for a finite fixed threshold");
    }
    return rss_at_border - cell.slope_db_per_decade() * std::log10(1.0 - chi);
}

double border_rss(const CellModel& cell, double r2)
{
    return rss_at_distance(cell, r2);
}

double packet_loss(const CellModel& cell, double r2, double v, double fixed_threshold, double adaptive_threshold,
    double rss_at_border, double data_rate)
{
    require_speed(v);
    if (!(data_rate >= 0.0)) {
        throw std::invalid_argument("data_rate >= 0 required");
    }
    const double f2 = cell.slope_db_per_decade();
    const double lost = (std::pow(10.0, (rss_at_border - fixed_threshold) / f2)
                            - std::pow(10.0, (rss_at_border - adaptive_threshold) / f2))
        * r2 * data_rate / v;
    return std::max(lost, 0.0);
}

} // namespace vho
