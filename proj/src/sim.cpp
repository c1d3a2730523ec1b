#include "vho/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace vho {

namespace {

// Stream ids under the scenario seed, one per purpose.
constexpr std::uint64_t kHneStream = 0;
constexpr std::uint64_t kCalibrationStream = 1;
constexpr std::uint64_t kSessionStream = 2;
constexpr std::uint64_t kPacketLossStream = 3;

unsigned worker_count(unsigned requested, std::size_t chunks)
{
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(chunks, 1)));
}

/// Evaluates fn(first, last) over fixed-size chunks of [0, n) and returns
/// the partial results in chunk order.
template <class Fn>
auto run_chunks(std::uint64_t n, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::uint64_t{}, std::uint64_t{}))>
{
    using T = decltype(fn(std::uint64_t{}, std::uint64_t{}));
    const std::size_t chunks = static_cast<std::size_t>((n + kChunkTrials - 1) / kChunkTrials);
    std::vector<T> out(chunks);
    auto chunk = [&](std::size_t c) {
        const std::uint64_t first = c * kChunkTrials;
        out[c] = fn(first, std::min<std::uint64_t>(n, first + kChunkTrials));
    };

    const unsigned workers = worker_count(threads, chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) chunk(c);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks && !failed; c = next++) {
                try {
                    chunk(c);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::optional<double> proportion_stderr(std::uint64_t hits, std::uint64_t n)
{
    if (n < 2) return std::nullopt;
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::optional<double> proportion(std::uint64_t hits, std::uint64_t n)
{
    if (n == 0) return std::nullopt;
    return static_cast<double>(hits) / static_cast<double>(n);
}

void append_error(std::string& dst, const std::string& what)
{
    if (!dst.empty()) dst += "; ";
    dst += what;
}

Cell opt(const std::optional<double>& x)
{
    if (x) return *x;
    return std::monostate{};
}

Cell count(std::uint64_t n) { return static_cast<std::int64_t>(n); }

void require_probability(double p, const char* what)
{
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
    }
}

struct HneCounts {
    std::uint64_t trials = 0;
    std::uint64_t pu_attempts = 0;
    std::uint64_t unnecessary = 0;
    std::uint64_t pf_attempts = 0;
    std::uint64_t failures = 0;
    std::uint64_t rejections = 0;
};

struct LossAcc {
    double sum = 0.0;
    double sq = 0.0;
    std::uint64_t evaluated = 0;
    std::uint64_t lossy = 0;
};

struct LossChunk {
    std::vector<LossAcc> acc;
    std::uint64_t trials = 0;
    std::uint64_t rejections = 0;
};

} // namespace

std::string to_string(SweepParameter p)
{
    return p == SweepParameter::Velocity ? "velocity" : "sigma_radius";
}

SweepParameter parse_sweep_parameter(const std::string& s)
{
    if (s == "velocity") return SweepParameter::Velocity;
    if (s == "sigma_radius") return SweepParameter::SigmaRadius;
    throw std::invalid_argument("unknown sweep parameter '" + s + "' (expected velocity or sigma_radius)");
}

std::string FixedThreshold::label() const
{
    return adaptive ? "adaptive" : format_real(dbm);
}

std::vector<std::string> Scenario::validate() const
{
    auto warnings = cell.validate();
    mobility.validate();
    budget.validate();
    trigger.validate();
    if (!(d_a >= 0.0 && d_a <= mobility.r1 + mobility.r2)) {
        throw std::invalid_argument("trigger: d_a must lie in [0, r1 + r2]");
    }

    const auto& s = sweep;
    if (s.values.empty()) {
        throw std::invalid_argument("sweep: at least one value required");
    }
    for (std::size_t k = 0; k < s.values.size(); ++k) {
        if (!std::isfinite(s.values[k])) {
            throw std::invalid_argument("sweep: values must be finite");
        }
        if (k > 0 && !(s.values[k] > s.values[k - 1])) {
            throw std::invalid_argument("sweep: values must be strictly increasing");
        }
    }
    if (s.parameter == SweepParameter::Velocity) {
        if (!(s.values.front() > 0.0)) {
            throw std::invalid_argument("v > 0 required");
        }
        if (s.values.front() < mobility.v_min || s.values.back() > mobility.v_max) {
            warnings.push_back("sweep velocities extend outside [v_min, v_max]");
        }
    } else {
        if (!(s.values.front() >= 0.0)) {
            throw std::invalid_argument("sweep: sigma_radius values must be >= 0");
        }
        if (!(s.velocity > 0.0)) {
            throw std::invalid_argument("v > 0 required");
        }
        for (std::size_t k = 0; k < s.values.size(); ++k) {
            auto w = cell_at(k).validate();
            warnings.insert(warnings.end(), w.begin(), w.end());
        }
    }
    if (s.trials_per_point < 1) {
        throw std::invalid_argument("sweep: trials_per_point >= 1 required");
    }
    if (s.calibration_samples < 1) {
        throw std::invalid_argument("sweep: calibration_samples >= 1 required");
    }
    require_probability(s.target_pu, "sweep: target_pu");
    require_probability(s.target_pf, "sweep: target_pf");
    for (double p : s.p_break_targets) {
        require_probability(p, "sweep: every p_break target");
    }
    for (const auto& f : s.fixed_thresholds) {
        if (!f.adaptive && !std::isfinite(f.dbm)) {
            throw std::invalid_argument("sweep: fixed thresholds must be finite");
        }
    }
    auto check_zeta = [](double z) {
        if (!(z > 0.0 && z <= 1.0)) {
            throw std::invalid_argument("gra: zeta must lie in (0, 1]");
        }
    };
    check_zeta(gra.zeta);
    for (double z : gra.zeta_sweep) check_zeta(z);
    return warnings;
}

double Scenario::velocity_at(std::size_t k) const
{
    return sweep.parameter == SweepParameter::Velocity ? sweep.values.at(k) : sweep.velocity;
}

CellModel Scenario::cell_at(std::size_t k) const
{
    CellModel c = cell;
    if (sweep.parameter == SweepParameter::SigmaRadius) {
        c.sigma_radius = sweep.values.at(k);
    }
    return c;
}

HneSummary run_hne_sweep(const Scenario& scenario)
{
    scenario.validate();
    const auto& sw = scenario.sweep;
    const RngStream base(sw.seed, kHneStream);
    const double tau_t = scenario.budget.tau_t();
    const double tau_a = scenario.budget.tau_a;

    HneSummary summary;
    for (std::size_t k = 0; k < sw.values.size(); ++k) {
        HneRow row;
        row.sweep_value = sw.values[k];
        row.velocity = scenario.velocity_at(k);
        const CellModel cell = scenario.cell_at(k);
        row.sigma_radius = cell.sigma_radius;
        const double v = row.velocity;

        // Thresholds are designed against the radius distribution of the
        // sampled cell; the closed forms at the design radii are reported too.
        try {
            row.n_threshold = expected_threshold(cell, sw.equal_radii, v, tau_t, sw.target_pu);
            row.pu_design = expected_window_probability(cell, sw.equal_radii, v, tau_t, *row.n_threshold);
        } catch (const std::exception& e) {
            append_error(row.error, std::string("N: ") + e.what());
        }
        try {
            row.m_threshold = expected_threshold(cell, sw.equal_radii, v, tau_a, sw.target_pf);
            row.pf_design = expected_window_probability(cell, sw.equal_radii, v, tau_a, *row.m_threshold);
        } catch (const std::exception& e) {
            append_error(row.error, std::string("M: ") + e.what());
        }
        try {
            row.n_closed_form = threshold_unnecessary(scenario.mobility, v, scenario.budget, sw.target_pu);
        } catch (const std::exception&) {
        }
        try {
            row.m_closed_form = threshold_failure(scenario.mobility, v, scenario.budget, sw.target_pf);
        } catch (const std::exception&) {
        }

        const auto n_thr = row.n_threshold;
        const auto m_thr = row.m_threshold;
        try {
            const auto parts = run_chunks(sw.trials_per_point, sw.threads, [&](std::uint64_t first, std::uint64_t last) {
                HneCounts c;
                for (std::uint64_t i = first; i < last; ++i) {
                    RngStream rng = base.substream(i);
                    const auto t = sample_trajectory(cell, sw.equal_radii, rng, c.rejections);
                    const double dwell = traversal_distance(t.r_entry, t.r_exit, t.theta) / v;
                    ++c.trials;
                    if (n_thr && dwell > *n_thr) {
                        ++c.pu_attempts;
                        c.unnecessary += dwell <= tau_t;
                    }
                    if (m_thr && dwell > *m_thr) {
                        ++c.pf_attempts;
                        c.failures += dwell <= tau_a;
                    }
                }
                return c;
            });
            for (const auto& c : parts) {
                row.trials += c.trials;
                row.pu_attempts += c.pu_attempts;
                row.unnecessary += c.unnecessary;
                row.pf_attempts += c.pf_attempts;
                row.failures += c.failures;
                row.radius_rejections += c.rejections;
            }
        } catch (const std::exception& e) {
            append_error(row.error, e.what());
            summary.rows.push_back(std::move(row));
            continue;
        }

        if (n_thr) {
            row.pu = proportion(row.unnecessary, row.pu_attempts);
            row.pu_stderr = proportion_stderr(row.unnecessary, row.pu_attempts);
            row.pu_joint = proportion(row.unnecessary, row.trials);
            row.pu_joint_stderr = proportion_stderr(row.unnecessary, row.trials);
        }
        if (m_thr) {
            row.pf = proportion(row.failures, row.pf_attempts);
            row.pf_stderr = proportion_stderr(row.failures, row.pf_attempts);
            row.pf_joint = proportion(row.failures, row.trials);
            row.pf_joint_stderr = proportion_stderr(row.failures, row.trials);
        }
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

HtceSummary run_htce_sweep(const Scenario& scenario)
{
    scenario.validate();
    const auto& sw = scenario.sweep;
    const RngStream calibration(sw.seed, kCalibrationStream);
    const RngStream sessions(sw.seed, kSessionStream);
    const RngStream loss_stream(sw.seed, kPacketLossStream);
    const double tau_d = scenario.budget.tau_d;
    const TriggerGeometry design{scenario.mobility.r1, scenario.mobility.r2, scenario.d_a, kPi};

    HtceSummary summary;
    for (double p : sw.p_break_targets) {
        TriggerConfig trig = scenario.trigger;
        trig.p_break_target = p;
        for (std::size_t k = 0; k < sw.values.size(); ++k) {
            HtceRow row;
            row.p_break_target = p;
            row.sweep_value = sw.values[k];
            row.velocity = scenario.velocity_at(k);
            const ExitModel model{scenario.cell_at(k), sw.equal_radii};
            row.sigma_radius = model.cell.sigma_radius;
            const double v = row.velocity;

            // The closed form is undefined over much of the domain; that is a
            // property of the formula, reported as an empty cell.
            try {
                row.trigger_radius_literal = trigger_radius(design, v, tau_d, trig);
            } catch (const std::domain_error&) {
                ++summary.literal_undefined;
            }

            try {
                const double r_s = calibrated_trigger_radius(model, v, tau_d, p, sw.calibration_samples, calibration);
                row.trigger_radius = r_s;
                row.trigger_distance = model.cell.mean_radius - r_s;

                const auto lit = breakdown_probability(design, v, tau_d, r_s, LiteralFormula{});
                row.breakdown_literal = lit.probability;
                row.literal_clamped = lit.clamped;
                summary.literal_clamps += lit.clamped;

                const auto parts = run_chunks(sw.trials_per_point, sw.threads,
                    [&](std::uint64_t first, std::uint64_t last) {
                        return simulate_sessions(model, r_s, v, tau_d, first, last, sessions);
                    });
                SessionStats stats;
                for (const auto& s : parts) stats += s;
                row.trials = stats.trials;
                row.sessions = stats.sessions;
                row.breakdowns = stats.breakdowns;
                row.radius_rejections = stats.radius_rejections;
                if (stats.sessions > 0) {
                    row.breakdown = stats.breakdown_fraction();
                    row.usage = stats.usage_mean();
                    row.mean_remaining = stats.remaining_sum / static_cast<double>(stats.sessions);
                }
                row.breakdown_stderr = stats.breakdown_stderr();
                row.usage_stderr = stats.usage_stderr();
            } catch (const std::exception& e) {
                append_error(row.error, e.what());
            }
            summary.rows.push_back(std::move(row));
        }
    }

    // Packet loss depends on the threshold, not on the breakdown target.
    const auto& thresholds = sw.fixed_thresholds;
    std::vector<std::vector<PacketLossRow>> by_threshold(thresholds.size());
    for (std::size_t k = 0; k < sw.values.size(); ++k) {
        const CellModel cell = scenario.cell_at(k);
        const double v = scenario.velocity_at(k);
        std::vector<PacketLossRow> rows(thresholds.size());
        for (std::size_t j = 0; j < thresholds.size(); ++j) {
            rows[j].threshold = thresholds[j];
            rows[j].sweep_value = sw.values[k];
            rows[j].velocity = v;
            rows[j].sigma_radius = cell.sigma_radius;
        }
        try {
            const auto parts = run_chunks(sw.trials_per_point, sw.threads, [&](std::uint64_t first, std::uint64_t last) {
                LossChunk c;
                c.acc.resize(thresholds.size());
                for (std::uint64_t i = first; i < last; ++i) {
                    RngStream rng = loss_stream.substream(i);
                    const double r2 = sample_radius(cell, rng, c.rejections);
                    ++c.trials;
                    if (r2 < cell.ref_distance || (scenario.budget.tau_b + scenario.budget.delta) * v >= r2) {
                        continue;
                    }
                    const double rss_b = border_rss(cell, r2);
                    const double adaptive = rss_threshold_adaptive(cell, r2, v, scenario.budget, rss_b);
                    for (std::size_t j = 0; j < thresholds.size(); ++j) {
                        const double fixed = thresholds[j].adaptive ? adaptive : thresholds[j].dbm;
                        const double lost = packet_loss(cell, r2, v, fixed, adaptive, rss_b, scenario.trigger.data_rate);
                        auto& a = c.acc[j];
                        a.sum += lost;
                        a.sq += lost * lost;
                        ++a.evaluated;
                        a.lossy += lost > 0.0;
                    }
                }
                return c;
            });
            std::uint64_t trials = 0;
            std::uint64_t rejections = 0;
            std::vector<LossAcc> total(thresholds.size());
            for (const auto& c : parts) {
                trials += c.trials;
                rejections += c.rejections;
                for (std::size_t j = 0; j < thresholds.size(); ++j) {
                    total[j].sum += c.acc[j].sum;
                    total[j].sq += c.acc[j].sq;
                    total[j].evaluated += c.acc[j].evaluated;
                    total[j].lossy += c.acc[j].lossy;
                }
            }
            for (std::size_t j = 0; j < thresholds.size(); ++j) {
                auto& r = rows[j];
                const auto& a = total[j];
                r.trials = trials;
                r.radius_rejections = rejections;
                r.evaluated = a.evaluated;
                r.lossy = a.lossy;
                if (a.evaluated > 0) {
                    const double n = static_cast<double>(a.evaluated);
                    const double mean = a.sum / n;
                    r.packet_loss = mean;
                    if (a.evaluated > 1) {
                        const double var = std::max(a.sq / n - mean * mean, 0.0) * n / (n - 1.0);
                        r.packet_loss_stderr = std::sqrt(var / n);
                    }
                } else {
                    r.error = "MN too fast for seamless handover in every sampled cell";
                }
            }
        } catch (const std::exception& e) {
            for (auto& r : rows) append_error(r.error, e.what());
        }
        for (std::size_t j = 0; j < thresholds.size(); ++j) {
            by_threshold[j].push_back(std::move(rows[j]));
        }
    }
    for (auto& group : by_threshold) {
        for (auto& r : group) summary.loss_rows.push_back(std::move(r));
    }
    return summary;
}

Table HneSummary::table() const
{
    Table t;
    t.header = {"velocity", "sigma_radius", "n_threshold", "m_threshold", "n_closed_form", "m_closed_form",
        "pu_design", "pu", "pu_stderr", "pu_joint",
        "pu_joint_stderr", "pf_design", "pf", "pf_stderr", "pf_joint", "pf_joint_stderr", "trials", "pu_attempts",
        "unnecessary", "pf_attempts", "failures", "radius_rejections", "error"};
    for (const auto& r : rows) {
        t.rows.push_back({r.velocity, r.sigma_radius, opt(r.n_threshold), opt(r.m_threshold), opt(r.n_closed_form),
            opt(r.m_closed_form), opt(r.pu_design),
            opt(r.pu), opt(r.pu_stderr), opt(r.pu_joint), opt(r.pu_joint_stderr), opt(r.pf_design), opt(r.pf),
            opt(r.pf_stderr), opt(r.pf_joint), opt(r.pf_joint_stderr), count(r.trials), count(r.pu_attempts),
            count(r.unnecessary), count(r.pf_attempts), count(r.failures), count(r.radius_rejections), r.error});
    }
    return t;
}

Table HtceSummary::table() const
{
    Table t;
    t.header = {"p_break_target", "velocity", "sigma_radius", "trigger_radius", "trigger_distance",
        "trigger_radius_literal", "breakdown", "breakdown_stderr", "breakdown_literal", "literal_clamped", "usage",
        "usage_stderr", "mean_remaining", "trials", "sessions", "breakdowns", "radius_rejections", "error"};
    for (const auto& r : rows) {
        t.rows.push_back({r.p_break_target, r.velocity, r.sigma_radius, opt(r.trigger_radius),
            opt(r.trigger_distance), opt(r.trigger_radius_literal), opt(r.breakdown), opt(r.breakdown_stderr),
            opt(r.breakdown_literal), count(r.literal_clamped), opt(r.usage), opt(r.usage_stderr),
            opt(r.mean_remaining), count(r.trials), count(r.sessions), count(r.breakdowns),
            count(r.radius_rejections), r.error});
    }
    return t;
}

Table HtceSummary::loss_table() const
{
    Table t;
    t.header = {"fixed_threshold", "velocity", "sigma_radius", "packet_loss", "packet_loss_stderr", "trials",
        "evaluated", "lossy", "radius_rejections", "error"};
    for (const auto& r : loss_rows) {
        t.rows.push_back({r.threshold.label(), r.velocity, r.sigma_radius, opt(r.packet_loss),
            opt(r.packet_loss_stderr), count(r.trials), count(r.evaluated), count(r.lossy),
            count(r.radius_rejections), r.error});
    }
    return t;
}

} // namespace vho
