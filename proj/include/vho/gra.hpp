#pragma once

// Grey relational analysis for handover target selection.

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vho::gra {

struct HigherBetter {
    friend bool operator==(const HigherBetter&, const HigherBetter&) = default;
};
struct LowerBetter {
    friend bool operator==(const LowerBetter&, const LowerBetter&) = default;
};
struct CloserToTarget {
    double target = 0.0;
    friend bool operator==(const CloserToTarget&, const CloserToTarget&) = default;
};

using Direction = std::variant<HigherBetter, LowerBetter, CloserToTarget>;

struct AttributeSpec {
    std::string name;
    Direction direction = HigherBetter{};
    double weight = 1.0;
};

/// Row-major m x n grid.
class Grid {
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    static Grid from_rows(const std::vector<std::vector<double>>& rows);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Decision matrix. Construction validates shape and normalizes the weights
/// to sum to one (throws std::invalid_argument on malformed input).
class DecisionMatrix {
public:
    DecisionMatrix(std::vector<std::string> alternatives, std::vector<AttributeSpec> attributes, Grid values);

    const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }
    const std::vector<AttributeSpec>& attributes() const noexcept { return attributes_; }
    const Grid& values() const noexcept { return values_; }
    std::vector<double> weights() const;

    /// Replace the weights (renormalized). Returns true if they had to be rescaled.
    bool set_weights(std::vector<double> weights);

    /// Non-fatal notes, e.g. weights rescaled.
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    std::vector<std::string> alternatives_;
    std::vector<AttributeSpec> attributes_;
    Grid values_;
    std::vector<std::string> warnings_;
};

struct NormalizeResult {
    Grid normalized;
    std::vector<std::string> warnings; // one per constant column
};

/// Per-column grey relational generation; constant columns map to 1.
NormalizeResult normalize(const DecisionMatrix& matrix);

/// Coefficients against the all-ones reference sequence, with global
/// Delta_min / Delta_max. zeta must lie in (0, 1].
Grid grey_relational_coefficients(const Grid& normalized, double zeta);

/// Gamma_i = sum_j w_j gamma_ij.
std::vector<double> grey_relational_grades(const Grid& coefficients, const std::vector<double>& weights);

/// Indices sorted by grade descending; ties keep input order.
std::vector<std::size_t> ranking_from_grades(const std::vector<double>& grades);

struct GraResult {
    Grid normalized;
    Grid coefficients;
    std::vector<double> grades;
    std::vector<std::size_t> ranking; // ranking[0] is the best alternative
    std::vector<std::string> warnings;
};

inline constexpr double kDefaultZeta = 0.5;

GraResult rank(const DecisionMatrix& matrix, double zeta = kDefaultZeta);

/// Rank with explicit weights (renormalized if they do not sum to one).
GraResult rank(const DecisionMatrix& matrix, double zeta, const std::vector<double>& weights);

// Matrix files (comma-delimited, '#' starts a comment line):
//
//   network,cost,delay,rss          header: label column, then attribute names
//   direction,min,min,target:-70    max | min | target:<value>
//   weights,0.5,0.25,0.25           optional; equal weights when absent
//   WLAN1,0.20,130,-98              one row per alternative
//
// Errors name the source, line and column.

DecisionMatrix parse_matrix(std::string_view text, const std::string& source = "<matrix>");

/// Throws std::runtime_error("cannot open matrix file '<path>'") if unreadable.
DecisionMatrix load_matrix(const std::string& path);

std::string direction_code(const Direction& d);

} // namespace vho::gra
