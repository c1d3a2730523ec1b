#include "vho/channel.hpp"

#include <doctest.h>

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace vho;

namespace {

CellModel cell(double mu, double sigma)
{
    CellModel c;
    c.mean_radius = mu;
    c.sigma_radius = sigma;
    return c;
}

} // namespace

TEST_CASE("zero spread returns the mean radius on every draw")
{
    RngStream rng(1, 0);
    const auto c = cell(50, 0);
    for (int i = 0; i < 100; ++i) CHECK(sample_radius(c, rng) == 50.0);
}

TEST_CASE("radius draws match the Gaussian moments")
{
    RngStream rng(3, 0);
    const auto c = cell(50, 5);
    const int n = 1'000'000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = sample_radius(c, rng);
        REQUIRE(r > 0.0);
        sum += r;
        sq += r * r;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean - 50.0) < 0.05);
    CHECK(std::abs(std::sqrt(sq / n - mean * mean) - 5.0) < 0.05);
}

TEST_CASE("radius empirical CDF against the truncated Gaussian")
{
    // sigma large enough that truncation at zero matters.
    const auto c = cell(10, 6);
    boost::math::normal_distribution<> nd(10, 6);
    const double mass = 1.0 - boost::math::cdf(nd, 0.0);
    RngStream rng(4, 0);
    std::vector<double> xs(1'000'000);
    for (auto& x : xs) x = sample_radius(c, rng);
    std::sort(xs.begin(), xs.end());
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); i += 997) {
        const double model = (boost::math::cdf(nd, xs[i]) - (1.0 - mass)) / mass;
        sup = std::max(sup, std::abs(model - static_cast<double>(i + 1) / xs.size()));
    }
    CHECK(sup < 0.005);
}

TEST_CASE("pathological spread fails after the rejection budget")
{
    RngStream rng(5, 0);
    auto c = cell(1, 1);
    c.mean_radius = -1e6;
    c.sigma_radius = 1.0;
    CHECK_THROWS_AS(sample_radius(c, rng), std::runtime_error);
}

TEST_CASE("cell validation")
{
    CHECK(cell(50, 5).validate().empty());
    CHECK(cell(30, 10).validate().size() == 1);
    CHECK_THROWS_AS(cell(0, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(cell(50, -1).validate(), std::invalid_argument);
}

TEST_CASE("log-distance path loss")
{
    CellModel c;
    CHECK(rss_at_distance(c, c.ref_distance) == doctest::Approx(c.tx_power_dbm - c.ref_path_loss_db));
    CHECK(rss_at_distance(c, 100.0) == doctest::Approx(-80.0));
    c.path_loss_exponent = 2.0;
    CHECK(rss_at_distance(c, 1.0) - rss_at_distance(c, 10.0) == doctest::Approx(20.0));
    CHECK_THROWS_AS(rss_at_distance(c, 0.5), std::domain_error);
}

TEST_CASE("shadowing is zero-mean and vanishes with zero sigma")
{
    CellModel c;
    RngStream rng(6, 0);
    double sum = 0.0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) sum += rss_at_distance(c, 40.0, rng);
    CHECK(std::abs(sum / n - rss_at_distance(c, 40.0)) < 0.1 * c.shadow_sigma_db * 3.0);
    c.shadow_sigma_db = 0.0;
    CHECK(rss_at_distance(c, 40.0, rng) == rss_at_distance(c, 40.0));
}

TEST_CASE("Monte-Carlo expectation over the radius")
{
    RngStream rng(7, 0);
    auto id = [](double r) { return r; };
    CHECK(monte_carlo_expectation(id, cell(50, 0), 3, rng) == 50.0);
    CHECK(std::abs(monte_carlo_expectation(id, cell(50, 5), 1'000'000, rng) - 50.0) < 0.05);
    auto sq = [](double r) { return r * r; };
    CHECK(std::abs(monte_carlo_expectation(sq, cell(50, 5), 1'000'000, rng) - 2525.0) < 2.0);
    CHECK_THROWS_AS(monte_carlo_expectation(id, cell(50, 5), 0, rng), std::invalid_argument);
}

TEST_CASE("same stream gives the same expectation")
{
    auto id = [](double r) { return r; };
    RngStream a(8, 1);
    RngStream b(8, 1);
    CHECK(monte_carlo_expectation(id, cell(50, 5), 1000, a) == monte_carlo_expectation(id, cell(50, 5), 1000, b));
}
