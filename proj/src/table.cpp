#include "vho/table.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vho {

namespace {

std::string quote(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct CellText {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double x) const { return format_real(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return quote(s); }
};

} // namespace

std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::size_t Table::column(const std::string& name) const
{
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw std::out_of_range("no column named '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
}

Table Table::select(const std::vector<std::string>& names) const
{
    std::vector<std::size_t> idx;
    for (const auto& n : names) {
        idx.push_back(column(n));
    }
    Table out;
    out.header = names;
    for (const auto& row : rows) {
        std::vector<Cell> r;
        for (auto i : idx) {
            r.push_back(row.at(i));
        }
        out.rows.push_back(std::move(r));
    }
    return out;
}

void Table::append(const Table& other)
{
    if (header.empty() && rows.empty()) {
        header = other.header;
    } else if (header != other.header) {
        throw std::invalid_argument("cannot append tables with different columns");
    }
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

void write_csv(std::ostream& os, const Table& table)
{
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        os << (j ? "," : "") << quote(table.header[j]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            os << (j ? "," : "") << std::visit(CellText{}, row[j]);
        }
        os << '\n';
    }
}

std::string to_csv(const Table& table)
{
    std::ostringstream os;
    write_csv(os, table);
    return os.str();
}

} // namespace vho
