#pragma once

// Small column-oriented result table with CSV output.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace vho {

/// Empty cell, real, count or text.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    std::size_t column(const std::string& name) const; // throws std::out_of_range

    /// Keeps only the named columns, in the given order.
    Table select(const std::vector<std::string>& names) const;

    /// Rows of `other` appended; headers must match.
    void append(const Table& other);
};

/// Reals use 9 significant digits, absent values are empty, lines end in LF.
/// Text containing a comma, quote or newline is quoted.
void write_csv(std::ostream& os, const Table& table);
std::string to_csv(const Table& table);

/// %.9g
std::string format_real(double x);

} // namespace vho
