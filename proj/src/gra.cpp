#include "vho/gra.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vho::gra {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> normalized_weights(std::vector<double> w, bool& rescaled)
{
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw std::invalid_argument("attribute weights must be finite and >= 0");
        }
        sum += x;
    }
    if (!(sum > 0.0)) {
        throw std::invalid_argument("attribute weights must not all be zero");
    }
    rescaled = std::abs(sum - 1.0) > 1e-12;
    for (double& x : w) {
        x /= sum;
    }
    return w;
}

} // namespace

Grid Grid::from_rows(const std::vector<std::vector<double>>& rows)
{
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    Grid g(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != n) {
            throw std::invalid_argument("ragged grid: row " + std::to_string(i) + " has " +
                std::to_string(rows[i].size()) + " values, expected " + std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            g(i, j) = rows[i][j];
        }
    }
    return g;
}

DecisionMatrix::DecisionMatrix(std::vector<std::string> alternatives, std::vector<AttributeSpec> attributes,
    Grid values)
    : alternatives_(std::move(alternatives))
    , attributes_(std::move(attributes))
    , values_(std::move(values))
{
    if (alternatives_.size() < 2) {
        throw std::invalid_argument("decision matrix needs at least two alternatives");
    }
    if (attributes_.empty()) {
        throw std::invalid_argument("decision matrix needs at least one attribute");
    }
    if (values_.rows() != alternatives_.size() || values_.cols() != attributes_.size()) {
        std::ostringstream os;
        os << "decision matrix is " << values_.rows() << "x" << values_.cols() << ", expected "
           << alternatives_.size() << "x" << attributes_.size();
        throw std::invalid_argument(os.str());
    }
    for (std::size_t i = 0; i < values_.rows(); ++i) {
        for (std::size_t j = 0; j < values_.cols(); ++j) {
            if (!std::isfinite(values_(i, j))) {
                throw std::invalid_argument("non-finite value at row " + alternatives_[i] + ", column " +
                    attributes_[j].name);
            }
        }
    }
    std::vector<double> w;
    for (const auto& a : attributes_) {
        w.push_back(a.weight);
    }
    set_weights(std::move(w));
}

std::vector<double> DecisionMatrix::weights() const
{
    std::vector<double> w;
    w.reserve(attributes_.size());
    for (const auto& a : attributes_) {
        w.push_back(a.weight);
    }
    return w;
}

bool DecisionMatrix::set_weights(std::vector<double> weights)
{
    if (weights.size() != attributes_.size()) {
        throw std::invalid_argument("expected " + std::to_string(attributes_.size()) + " weights, got " +
            std::to_string(weights.size()));
    }
    bool rescaled = false;
    weights = normalized_weights(std::move(weights), rescaled);
    for (std::size_t j = 0; j < weights.size(); ++j) {
        attributes_[j].weight = weights[j];
    }
    if (rescaled) {
        warnings_.push_back("weights did not sum to 1 and were renormalized");
    }
    return rescaled;
}

NormalizeResult normalize(const DecisionMatrix& matrix)
{
    const Grid& y = matrix.values();
    const std::size_t m = y.rows();
    const std::size_t n = y.cols();
    NormalizeResult out{Grid(m, n, 1.0), {}};

    for (std::size_t j = 0; j < n; ++j) {
        double lo = y(0, j);
        double hi = y(0, j);
        for (std::size_t i = 1; i < m; ++i) {
            lo = std::min(lo, y(i, j));
            hi = std::max(hi, y(i, j));
        }
        const auto& attr = matrix.attributes()[j];
        auto constant = [&] {
            out.warnings.push_back("attribute '" + attr.name + "' does not discriminate; mapped to 1");
        };

        std::visit(overloaded{
                       [&](const HigherBetter&) {
                           if (hi == lo) return constant();
                           for (std::size_t i = 0; i < m; ++i) out.normalized(i, j) = (y(i, j) - lo) / (hi - lo);
                       },
                       [&](const LowerBetter&) {
                           if (hi == lo) return constant();
                           for (std::size_t i = 0; i < m; ++i) out.normalized(i, j) = (hi - y(i, j)) / (hi - lo);
                       },
                       [&](const CloserToTarget& c) {
                           const double span = std::max(hi - c.target, c.target - lo);
                           if (!(span > 0.0)) return constant();
                           for (std::size_t i = 0; i < m; ++i) {
                               out.normalized(i, j) = 1.0 - std::abs(y(i, j) - c.target) / span;
                           }
                       },
                   },
            attr.direction);
    }
    return out;
}

Grid grey_relational_coefficients(const Grid& normalized, double zeta)
{
    if (!(zeta > 0.0 && zeta <= 1.0)) {
        throw std::invalid_argument("distinguishing coefficient must lie in (0, 1]");
    }
    const std::size_t m = normalized.rows();
    const std::size_t n = normalized.cols();
    Grid delta(m, n);
    double dmin = INFINITY;
    double dmax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            delta(i, j) = std::abs(1.0 - normalized(i, j));
            dmin = std::min(dmin, delta(i, j));
            dmax = std::max(dmax, delta(i, j));
        }
    }
    Grid gamma(m, n, 1.0);
    if (dmax == 0.0) {
        return gamma;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            gamma(i, j) = (dmin + zeta * dmax) / (delta(i, j) + zeta * dmax);
        }
    }
    return gamma;
}

std::vector<double> grey_relational_grades(const Grid& coefficients, const std::vector<double>& weights)
{
    if (weights.size() != coefficients.cols()) {
        throw std::invalid_argument("weight count does not match attribute count");
    }
    std::vector<double> grades(coefficients.rows(), 0.0);
    for (std::size_t i = 0; i < coefficients.rows(); ++i) {
        for (std::size_t j = 0; j < coefficients.cols(); ++j) {
            grades[i] += weights[j] * coefficients(i, j);
        }
    }
    return grades;
}

std::vector<std::size_t> ranking_from_grades(const std::vector<double>& grades)
{
    std::vector<std::size_t> order(grades.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grades[a] > grades[b]; });
    return order;
}

GraResult rank(const DecisionMatrix& matrix, double zeta)
{
    auto norm = normalize(matrix);
    GraResult out;
    out.coefficients = grey_relational_coefficients(norm.normalized, zeta);
    out.grades = grey_relational_grades(out.coefficients, matrix.weights());
    out.ranking = ranking_from_grades(out.grades);
    out.normalized = std::move(norm.normalized);
    out.warnings = matrix.warnings();
    out.warnings.insert(out.warnings.end(), norm.warnings.begin(), norm.warnings.end());
    return out;
}

GraResult rank(const DecisionMatrix& matrix, double zeta, const std::vector<double>& weights)
{
    DecisionMatrix weighted = matrix;
    weighted.set_weights(weights);
    return rank(weighted, zeta);
}

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct MatrixParser {
    const std::string& source;

    [[noreturn]] void fail(int line, std::size_t column, const std::string& what) const
    {
        std::ostringstream os;
        os << source << ": line " << line;
        if (column > 0) os << ", column " << column;
        os << ": " << what;
        throw std::invalid_argument(os.str());
    }

    double number(const std::string& field, int line, std::size_t column) const
    {
        errno = 0;
        char* end = nullptr;
        const double x = std::strtod(field.c_str(), &end);
        if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE || !std::isfinite(x)) {
            fail(line, column, "cannot parse '" + field + "' as a number");
        }
        return x;
    }

    Direction direction(const std::string& field, int line, std::size_t column) const
    {
        if (field == "max") return HigherBetter{};
        if (field == "min") return LowerBetter{};
        if (field.rfind("target:", 0) == 0) {
            return CloserToTarget{number(trim(field.substr(7)), line, column)};
        }
        fail(line, column, "unknown direction '" + field + "' (expected max, min or target:<value>)");
    }
};

} // namespace

std::string direction_code(const Direction& d)
{
    return std::visit(overloaded{
                          [](const HigherBetter&) { return std::string("max"); },
                          [](const LowerBetter&) { return std::string("min"); },
                          [](const CloserToTarget& c) {
                              char buf[48];
                              std::snprintf(buf, sizeof buf, "target:%.17g", c.target);
                              return std::string(buf);
                          },
                      },
        d);
}

DecisionMatrix parse_matrix(std::string_view text, const std::string& source)
{
    const MatrixParser p{source};
    std::vector<std::pair<int, std::vector<std::string>>> rows;
    {
        std::istringstream in{std::string(text)};
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            const std::string line = trim(raw);
            if (line.empty() || line.front() == '#') continue;
            rows.emplace_back(line_no, split_fields(line));
        }
    }
    if (rows.size() < 2) {
        p.fail(rows.empty() ? 0 : rows.back().first, 0, "expected a header row and a direction row");
    }

    const auto& [header_line, header] = rows[0];
    const std::size_t n = header.size() - 1;
    if (n == 0) p.fail(header_line, 0, "header names no attributes");
    std::vector<AttributeSpec> attrs(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (header[j + 1].empty()) p.fail(header_line, j + 2, "empty attribute name");
        attrs[j].name = header[j + 1];
    }

    auto check_width = [&](int line, const std::vector<std::string>& fields) {
        if (fields.size() != n + 1) {
            // Point at the first missing or first surplus field.
            p.fail(line, fields.size() > n + 1 ? n + 2 : fields.size() + 1,
                "expected " + std::to_string(n + 1) + " fields, found " + std::to_string(fields.size()));
        }
    };

    const auto& [dir_line, dirs] = rows[1];
    if (dirs[0] != "direction") p.fail(dir_line, 1, "second row must start with 'direction'");
    check_width(dir_line, dirs);
    for (std::size_t j = 0; j < n; ++j) attrs[j].direction = p.direction(dirs[j + 1], dir_line, j + 2);

    std::size_t next = 2;
    bool explicit_weights = false;
    if (rows.size() > 2 && rows[2].second[0] == "weights") {
        const auto& [w_line, w] = rows[2];
        check_width(w_line, w);
        for (std::size_t j = 0; j < n; ++j) {
            attrs[j].weight = p.number(w[j + 1], w_line, j + 2);
            if (attrs[j].weight < 0.0) p.fail(w_line, j + 2, "weights must be >= 0");
        }
        explicit_weights = true;
        next = 3;
    }
    if (!explicit_weights) {
        for (auto& a : attrs) a.weight = 1.0 / static_cast<double>(n);
    }

    std::vector<std::string> names;
    std::vector<std::vector<double>> values;
    for (std::size_t r = next; r < rows.size(); ++r) {
        const auto& [line, fields] = rows[r];
        check_width(line, fields);
        if (fields[0].empty()) p.fail(line, 1, "empty alternative name");
        names.push_back(fields[0]);
        std::vector<double> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(p.number(fields[j + 1], line, j + 2));
        values.push_back(std::move(row));
    }
    if (names.size() < 2) {
        p.fail(rows.back().first, 0, "at least two alternatives required");
    }
    try {
        return DecisionMatrix(std::move(names), std::move(attrs), Grid::from_rows(values));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(source + ": " + e.what());
    }
}

DecisionMatrix load_matrix(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open matrix file '" + path + "'");
    }
    std::ostringstream os;
    os << f.rdbuf();
    return parse_matrix(os.str(), path);
}

} // namespace vho::gra
