#include "vho/htce.hpp"

#include <doctest.h>

#include <cmath>

using namespace vho;

namespace {

TriggerGeometry geom(double r1, double r2, double d_a, double theta)
{
    return {r1, r2, d_a, theta};
}

} // namespace

TEST_CASE("exit distance and boundary time")
{
    CHECK(exit_distance(geom(50, 50, 0, kPi)) == doctest::Approx(100.0));
    CHECK(exit_distance(geom(30, 40, 50, kPi / 2)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(exit_distance(geom(30, 40, 20, kPi / 2)) == doctest::Approx(30.0));
    CHECK(boundary_traversal_time(geom(30, 40, 20, kPi / 2), 5.0) == doctest::Approx(6.0));
    CHECK_THROWS_AS(boundary_traversal_time(geom(30, 40, 20, kPi / 2), 0.0), std::invalid_argument);
}

TEST_CASE("breakdown outer branches are exact in both modes")
{
    const auto g = geom(50, 50, 0, kPi);
    for (const BreakdownMode& mode : {BreakdownMode{LiteralFormula{}}, BreakdownMode{SamplingOracle{1000, {1, 0}}}}) {
        const auto out = breakdown_probability(g, 10.0, 0.4, 55.0, mode);
        CHECK(out.probability == 1.0);
        CHECK(out.branch == BreakdownBranch::TriggerOutsideCell);
        const auto ample = breakdown_probability(g, 10.0, 0.4, 40.0, mode);
        CHECK(ample.probability == 0.0);
        CHECK(ample.branch == BreakdownBranch::AmpleMargin);
    }
}

TEST_CASE("literal interior branch is clamped into [0, 1]")
{
    const auto g = geom(50, 50, 20, kPi);
    for (double r_s : {46.0, 47.0, 48.0, 49.0, 50.0}) {
        const auto res = breakdown_probability(g, 10.0, 0.4, r_s, LiteralFormula{});
        CHECK(res.branch == BreakdownBranch::Interior);
        CHECK(res.probability >= 0.0);
        CHECK(res.probability <= 1.0);
        CHECK(res.clamped == (res.unclamped < 0.0 || res.unclamped > 1.0));
    }
}

TEST_CASE("sampling oracle agrees with the exact interior integral")
{
    for (double d_a : {0.0, 20.0, 60.0}) {
        const auto g = geom(45, 55, d_a, kPi);
        const double exact = breakdown_probability_exact(g, 10.0, 0.4);
        const auto res = breakdown_probability(g, 10.0, 0.4, 52.0, SamplingOracle{1'000'000, {2, 0}});
        const double se = std::sqrt(std::max(exact * (1 - exact), 1e-12) / 1e6);
        CHECK(std::abs(res.probability - exact) < 4 * se + 1e-12);
    }
}

TEST_CASE("oracle breakdown is non-decreasing in velocity")
{
    const auto g = geom(50, 50, 60, kPi);
    double prev = 0.0;
    for (double v : {1.0, 5.0, 10.0, 30.0, 60.0, 120.0}) {
        const double p = breakdown_probability_exact(g, v, 0.4);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("trigger radius with no channel adjustment")
{
    const auto g = geom(50, 50, 0, kPi);
    TriggerConfig c;
    c.channel_adjustment = 0.0;
    for (double p : {0.02, 0.3, 0.7}) {
        c.p_break_target = p;
        const double psi = std::cos(kPi / 2 * (p + kPi - 1));
        const double dv = 0.4 * 300.0;
        const double inner = g.d_a * g.d_a - g.r1 * g.r1 + 2 * g.d_a * dv + dv * dv + g.r1 * g.r1 * psi * psi;
        if (inner < 0) {
            CHECK_THROWS_AS(trigger_radius(g, 300.0, 0.4, c), std::domain_error);
            continue;
        }
        CHECK(trigger_radius(g, 300.0, 0.4, c) == doctest::Approx(std::abs(g.r1 * psi - std::sqrt(inner))));
    }
}

TEST_CASE("undefined trigger radius reports its radicand")
{
    TriggerConfig c;
    try {
        trigger_radius(geom(50, 50, 0, kPi), 10.0, 0.4, c);
        FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("trigger radius undefined for these parameters") != std::string::npos);
        CHECK(msg.find("radicand") != std::string::npos);
    }
}

TEST_CASE("trace exit geometry")
{
    // Diameter crossing of a 50 m cell with a 40 m trigger circle.
    const Trajectory tr{50, 50, kPi};
    const auto o = trace_exit(tr, 40.0, 10.0, 0.4);
    CHECK(o.session);
    CHECK(o.triggered);
    CHECK(o.remaining == doctest::Approx(10.0));
    CHECK(o.usage == doctest::Approx(0.9));
    CHECK_FALSE(o.breakdown); // 10 m at 10 m/s is 1 s > 0.4 s
    CHECK(trace_exit(tr, 40.0, 10.0, 1.5).breakdown);
    // A chord that never comes within r_s is not a session.
    CHECK_FALSE(trace_exit({50, 50, 0.5}, 40.0, 10.0, 0.4).session);
    // Exit radius inside the trigger circle breaks the connection.
    CHECK(trace_exit({50, 35, kPi}, 40.0, 10.0, 0.4).breakdown);
}

TEST_CASE("session simulation is chunk-additive")
{
    ExitModel m;
    const RngStream rng(3, 2);
    const auto whole = simulate_sessions(m, 45.0, 10.0, 0.4, 10000, rng);
    auto parts = simulate_sessions(m, 45.0, 10.0, 0.4, 0, 4000, rng);
    parts += simulate_sessions(m, 45.0, 10.0, 0.4, 4000, 10000, rng);
    CHECK(whole.sessions == parts.sessions);
    CHECK(whole.breakdowns == parts.breakdowns);
    CHECK(whole.usage_sum == doctest::Approx(parts.usage_sum).epsilon(1e-12));
}

TEST_CASE("calibrated trigger radius meets the breakdown target")
{
    ExitModel m;
    const RngStream rng(4, 1);
    for (double p : {0.02, 0.3, 0.7}) {
        const double r_s = calibrated_trigger_radius(m, 10.0, 0.4, p, 50000, rng);
        const auto s = simulate_sessions(m, r_s, 10.0, 0.4, 50000, rng);
        CHECK(s.breakdown_fraction() <= p + 1e-12);
        CHECK(s.breakdown_fraction() == doctest::Approx(p).epsilon(0.05));
    }
}

TEST_CASE("usage grows with the breakdown target")
{
    ExitModel m;
    const RngStream rng(5, 0);
    TriggerConfig c;
    double prev = 0.0;
    for (double p : {0.02, 0.3, 0.7, 0.95}) {
        c.p_break_target = p;
        const auto u = wlan_usage_fraction(m, 10.0, 0.4, c, 50000, rng);
        CHECK(u.usage > prev);
        CHECK(u.usage <= 1.0);
        prev = u.usage;
    }
    CHECK(prev > 0.95);
}

TEST_CASE("static RSS threshold")
{
    CellModel c;
    c.shadow_sigma_db = 0.0;
    RngStream rng(6, 0);
    CHECK(rss_threshold_static(c, 40.0, rng) == rss_at_distance(c, 40.0));
    CHECK(rss_threshold_static(c, c.ref_distance, rng) == doctest::Approx(c.tx_power_dbm - c.ref_path_loss_db));
}

TEST_CASE("adaptive RSS threshold")
{
    CellModel c;
    LatencyBudget b;
    b.tau_b = 0.95;
    b.delta = 0.05;
    CHECK(rss_threshold_adaptive(c, 100.0, 50.0, b, -80.0) == doctest::Approx(-80.0 + 9.031).epsilon(1e-4));
    CHECK(rss_threshold_adaptive(c, 100.0, 1e-9, b, -80.0) == doctest::Approx(-80.0));
    double prev = -80.0;
    for (double v : {1.0, 10.0, 50.0, 90.0}) {
        const double t = rss_threshold_adaptive(c, 100.0, v, b, -80.0);
        CHECK(t > prev);
        prev = t;
    }
    CHECK_THROWS_AS(rss_threshold_adaptive(c, 100.0, 100.0, b, -80.0), std::domain_error);
}

TEST_CASE("fixed threshold and border RSS")
{
    CellModel c;
    CHECK(rss_threshold_fixed(c, 0.0, -85.0) == doctest::Approx(-85.0));
    CHECK(rss_threshold_fixed(c, 0.9, -85.0) == doctest::Approx(-85.0 + 30.0));
    CHECK(border_rss(c, 100.0) == doctest::Approx(-80.0));
}

TEST_CASE("packet loss")
{
    CellModel c;
    const double rb = -85.0;
    CHECK(packet_loss(c, 50.0, 10.0, rb - 30.0, rb - 15.0, rb, 60.0) == doctest::Approx(2051.32).epsilon(1e-5));
    CHECK(packet_loss(c, 50.0, 10.0, rb - 15.0, rb - 15.0, rb, 60.0) == 0.0);
    CHECK(packet_loss(c, 50.0, 10.0, rb - 5.0, rb - 15.0, rb, 60.0) == 0.0);
    CHECK_THROWS_AS(packet_loss(c, 50.0, 0.0, rb - 30.0, rb - 15.0, rb, 60.0), std::invalid_argument);
}

TEST_CASE("geometry and config validation")
{
    CHECK_NOTHROW(geom(50, 50, 0, kPi).validate());
    CHECK_THROWS_AS(geom(50, 50, -1, kPi).validate(), std::invalid_argument);
    TriggerConfig c;
    CHECK_NOTHROW(c.validate());
    c.p_break_target = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
