#include "golden.hpp"
#include "vho/bundled.hpp"
#include "vho/gra.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

using namespace vho::gra;

namespace {

DecisionMatrix cs2() { return parse_matrix(vho::bundled::case_study_2_csv(), "case_study_2"); }

DecisionMatrix make(const golden::Rows& rows, std::vector<Direction> dirs)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rows.size(); ++i) names.push_back("A" + std::to_string(i));
    std::vector<AttributeSpec> attrs;
    for (std::size_t j = 0; j < dirs.size(); ++j) attrs.push_back({"c" + std::to_string(j), dirs[j], 1.0});
    return DecisionMatrix(names, attrs, Grid::from_rows(rows));
}

std::vector<std::string> order(const DecisionMatrix& m, const GraResult& r)
{
    std::vector<std::string> out;
    for (auto i : r.ranking) out.push_back(m.alternatives()[i]);
    return out;
}

// Small deterministic generator for property tests.
struct Lcg {
    std::uint64_t s;
    double next()
    {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(s >> 11) / 9007199254740992.0;
    }
};

golden::Rows random_rows(Lcg& g, std::size_t m, std::size_t n)
{
    golden::Rows rows(m, std::vector<double>(n));
    for (auto& r : rows)
        for (auto& x : r) x = -50.0 + 100.0 * g.next();
    return rows;
}

} // namespace

TEST_CASE("case study 2 normalized matrix")
{
    const auto m = cs2();
    const auto n = normalize(m);
    CHECK(n.warnings.empty());
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(std::abs(n.normalized(i, j) - golden::cs2_normalized[i][j]) < 5e-4);
    CHECK(std::abs(n.normalized(2, 0) - 0.8592) < 5e-5);
    CHECK(std::abs(n.normalized(0, 5) - 0.1034) < 5e-5);
}

TEST_CASE("case study 2 coefficients and grades")
{
    const auto m = cs2();
    const auto r = rank(m, 0.5);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            CHECK(std::abs(r.coefficients(i, j) - golden::cs2_coefficients[i][j]) < 5e-4);
        }
        CHECK(std::abs(r.grades[i] - golden::cs2_grades[i]) < 5e-4);
    }
    CHECK(std::abs(r.coefficients(0, 5) - 0.3580) < 5e-5);
    CHECK(std::abs(r.coefficients(2, 1) - 0.8824) < 5e-5);
    CHECK(order(m, r) == golden::cs2_order);
}

TEST_CASE("case study 1 grades from the reference coefficients")
{
    const auto g = grey_relational_grades(Grid::from_rows(golden::cs1_coefficients), std::vector<double>(5, 0.2));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(g[i] - golden::cs1_grades[i]) < 5e-4);
    CHECK(ranking_from_grades(g) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("case study 1 reference normalized matrix reproduces the reference coefficients")
{
    const auto m = parse_matrix(vho::bundled::case_study_1_normalized_csv(), "cs1n");
    const auto r = rank(m, 0.5);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(r.coefficients(i, j) - golden::cs1_coefficients[i][j]) < 5e-4);
        CHECK(std::abs(r.grades[i] - golden::cs1_grades[i]) < 5e-4);
    }
}

TEST_CASE("rankings are stable across zeta")
{
    for (auto text : {vho::bundled::case_study_2_csv(), vho::bundled::case_study_1_csv(),
             vho::bundled::case_study_1_normalized_csv()}) {
        const auto m = parse_matrix(text);
        const auto base = rank(m, 0.5).ranking;
        CHECK(rank(m, 0.3).ranking == base);
        CHECK(rank(m, 0.7).ranking == base);
    }
}

TEST_CASE("direction rules")
{
    const auto m = make({{1, 10, 5}, {3, 20, 7}, {2, 30, 9}}, {HigherBetter{}, LowerBetter{}, CloserToTarget{7}});
    const auto n = normalize(m).normalized;
    CHECK(n(1, 0) == 1.0);
    CHECK(n(0, 0) == 0.0);
    CHECK(n(0, 1) == 1.0);
    CHECK(n(2, 1) == 0.0);
    CHECK(n(1, 2) == 1.0);
    CHECK(n(0, 2) == 0.0);
    CHECK(n(2, 2) == 0.0);
}

TEST_CASE("constant column maps to one with a warning")
{
    const auto m = make({{1, 4}, {2, 4}}, {HigherBetter{}, LowerBetter{}});
    const auto n = normalize(m);
    CHECK(n.normalized(0, 1) == 1.0);
    CHECK(n.normalized(1, 1) == 1.0);
    REQUIRE(n.warnings.size() == 1);
    CHECK(n.warnings[0].find("'c1'") != std::string::npos);
}

TEST_CASE("degenerate grid gives unit coefficients")
{
    const auto c = grey_relational_coefficients(Grid(3, 2, 0.4), 0.5);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(c(i, j) == 1.0);
    CHECK_THROWS_AS(grey_relational_coefficients(Grid(2, 2, 0.5), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(grey_relational_coefficients(Grid(2, 2, 0.5), 1.5), std::invalid_argument);
}

TEST_CASE("single attribute grade equals its coefficient")
{
    const auto c = Grid::from_rows({{0.3}, {1.0}, {0.7}});
    const auto g = grey_relational_grades(c, {1.0});
    for (std::size_t i = 0; i < 3; ++i) CHECK(g[i] == c(i, 0));
}

TEST_CASE("ties keep input order")
{
    const auto m = make({{2, 5}, {1, 9}, {2, 5}}, {HigherBetter{}, LowerBetter{}});
    const auto r = rank(m);
    CHECK(r.grades[0] == r.grades[2]);
    CHECK(r.ranking == std::vector<std::size_t>{0, 2, 1});
}

TEST_CASE("weights are renormalized with a warning")
{
    auto m = cs2();
    CHECK(m.warnings().empty());
    CHECK(m.set_weights({2, 2, 2, 2, 2, 2}));
    REQUIRE(m.warnings().size() == 1);
    CHECK(m.warnings()[0].find("renormalized") != std::string::npos);
    double sum = 0.0;
    for (double w : m.weights()) sum += w;
    CHECK(sum == doctest::Approx(1.0));
    CHECK_THROWS_AS(m.set_weights({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(m.set_weights({1, -1, 1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("matrix validation")
{
    CHECK_THROWS_AS(make({{1, 2}}, {HigherBetter{}, HigherBetter{}}), std::invalid_argument);
    CHECK_THROWS_AS(make({{1, 2}, {3, 4}}, {HigherBetter{}}), std::invalid_argument);
    CHECK_THROWS_AS(make({{1, NAN}, {3, 4}}, {HigherBetter{}, HigherBetter{}}), std::invalid_argument);
}

TEST_CASE("property: normalized in [0,1], coefficients in [zeta/(1+zeta), 1]")
{
    Lcg g{17};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + trial % 6;
        const std::size_t n = 1 + trial % 5;
        std::vector<Direction> dirs;
        for (std::size_t j = 0; j < n; ++j) {
            const int k = static_cast<int>(g.next() * 3);
            dirs.push_back(k == 0 ? Direction{HigherBetter{}} : k == 1 ? Direction{LowerBetter{}} : Direction{CloserToTarget{0.0}});
        }
        const auto mat = make(random_rows(g, m, n), dirs);
        const double zeta = 0.05 + 0.95 * g.next();
        const auto r = rank(mat, zeta);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                REQUIRE(r.normalized(i, j) >= 0.0);
                REQUIRE(r.normalized(i, j) <= 1.0);
                REQUIRE(r.coefficients(i, j) >= zeta / (1 + zeta) - 1e-12);
                REQUIRE(r.coefficients(i, j) <= 1.0 + 1e-12);
            }
            REQUIRE(r.grades[i] <= 1.0 + 1e-12);
        }
        for (std::size_t k = 1; k < m; ++k) REQUIRE(r.grades[r.ranking[k - 1]] >= r.grades[r.ranking[k]]);
    }
}

TEST_CASE("property: an alternative best on every attribute has grade 1")
{
    Lcg g{23};
    for (int trial = 0; trial < 100; ++trial) {
        auto rows = random_rows(g, 4, 3);
        for (std::size_t j = 0; j < 3; ++j) rows[2][j] = 100.0;
        const auto r = rank(make(rows, {HigherBetter{}, HigherBetter{}, HigherBetter{}}));
        CHECK(r.grades[2] == doctest::Approx(1.0));
        CHECK(r.ranking[0] == 2);
    }
}

TEST_CASE("property: ranking is invariant to positive column scaling and shifts")
{
    Lcg g{31};
    for (int trial = 0; trial < 100; ++trial) {
        auto rows = random_rows(g, 5, 4);
        const std::vector<Direction> dirs{HigherBetter{}, LowerBetter{}, HigherBetter{}, LowerBetter{}};
        const auto base = rank(make(rows, dirs));
        for (auto& r : rows)
            for (std::size_t j = 0; j < 4; ++j) r[j] = r[j] * (1.0 + j) + 7.0 * j;
        const auto scaled = rank(make(rows, dirs));
        CHECK(scaled.ranking == base.ranking);
        for (std::size_t i = 0; i < 5; ++i) CHECK(scaled.grades[i] == doctest::Approx(base.grades[i]).epsilon(1e-9));
    }
}

TEST_CASE("property: improving one attribute never lowers that grade")
{
    Lcg g{37};
    for (int trial = 0; trial < 100; ++trial) {
        auto rows = random_rows(g, 4, 3);
        const std::vector<Direction> dirs{HigherBetter{}, HigherBetter{}, LowerBetter{}};
        const auto before = rank(make(rows, dirs));
        rows[1][0] += 5.0 * g.next();
        const auto after = rank(make(rows, dirs));
        // The improved alternative gains relative to every other one.
        for (std::size_t i : {0, 2, 3}) {
            CHECK(after.grades[1] - after.grades[i] >= before.grades[1] - before.grades[i] - 1e-9);
        }
    }
}

TEST_CASE("parser reads directions, weights and comments")
{
    const auto m = parse_matrix("# c\nnet,a,b,c\ndirection,max,min,target:-70\nweights,2,1,1\nX,1,2,3\nY,4,5,6\n");
    CHECK(m.alternatives() == std::vector<std::string>{"X", "Y"});
    CHECK(std::holds_alternative<CloserToTarget>(m.attributes()[2].direction));
    CHECK(std::get<CloserToTarget>(m.attributes()[2].direction).target == -70.0);
    CHECK(m.weights()[0] == doctest::Approx(0.5));
    CHECK(direction_code(m.attributes()[2].direction) == "target:-70");
    const auto eq = parse_matrix("net,a,b\ndirection,max,min\nX,1,2\nY,3,4\n");
    CHECK(eq.weights()[1] == doctest::Approx(0.5));
}

TEST_CASE("parser errors name line and column")
{
    auto message = [](const char* text) {
        try {
            parse_matrix(text, "m.csv");
        } catch (const std::exception& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("net,a,b\ndirection,max,min\nX,1,oops\nY,3,4\n").find("m.csv: line 3, column 3") == 0);
    CHECK(message("net,a,b\ndirection,max,sideways\nX,1,2\nY,3,4\n").find("line 2, column 3") != std::string::npos);
    CHECK(message("net,a,b\ndirection,max,min\nX,1\nY,3,4\n").find("line 3, column 3") != std::string::npos);
    CHECK(message("net,a,b\ndirection,max,min\nX,1,2,9\nY,3,4\n").find("line 3, column 4") != std::string::npos);
    CHECK_FALSE(message("net,a\nX,1\nY,2\n").empty());
    CHECK_THROWS_WITH_AS(load_matrix("/nonexistent/m.csv"), "cannot open matrix file '/nonexistent/m.csv'",
        std::runtime_error);
}
