#include "vho/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using vho::RngStream;

TEST_CASE("identical seed and stream id reproduce the sequence")
{
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(a.next_u64() == b.next_u64());
    }
    CHECK(a.position() == 1000);
}

TEST_CASE("different streams and seeds diverge")
{
    RngStream a(42, 7);
    RngStream b(42, 8);
    RngStream c(43, 7);
    int same_ab = 0;
    int same_ac = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        same_ab += x == b.next_u64();
        same_ac += x == c.next_u64();
    }
    CHECK(same_ab == 0);
    CHECK(same_ac == 0);
}

TEST_CASE("substream is the stream with that id")
{
    const RngStream base(5, 0);
    RngStream s = base.substream(9);
    RngStream direct(5, 9);
    CHECK(s.seed() == 5);
    CHECK(s.stream_id() == 9);
    for (int i = 0; i < 10; ++i) CHECK(s.next_u64() == direct.next_u64());
}

TEST_CASE("uniform lies in [0, 1) with the right moments")
{
    RngStream r(1, 1);
    const int n = 200000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sq += u * u;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.005));
    CHECK(sq / n - mean * mean == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("normal draws have zero mean and unit variance")
{
    RngStream r(2, 3);
    const int n = 400000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        sum += z;
        sq += z * z;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
    CHECK(sq / n - mean * mean == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("first draws of neighbouring substreams are distinct")
{
    const RngStream base(11, 0);
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        seen.insert(base.substream(i).next_u64());
    }
    CHECK(seen.size() == 10000);
}
