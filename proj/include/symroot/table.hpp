#pragma once

#include <cmath>
#include <cstdio>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symroot/pd2d.hpp"

namespace symroot {

namespace detail {

/// Two-decimal display with half-away-from-zero rounding; exact zero prints
/// as "0" and integral values print without a decimal part, matching the
/// usual hand-written open-interval tables.
inline std::string format_bound(double v) {
    if (std::abs(v) < 5e-13) return "0";
    const double rounded = std::floor(std::abs(v) * 100.0 + 0.5) / 100.0;
    const double signed_rounded = v < 0.0 ? -rounded : rounded;
    const double nearest_int = std::round(signed_rounded);
    char buf[32];
    if (std::abs(signed_rounded - nearest_int) < 1e-9) {
        std::snprintf(buf, sizeof(buf), "%.0f", nearest_int);
    } else {
        std::snprintf(buf, sizeof(buf), "%.2f", signed_rounded);
    }
    return buf;
}

} // namespace detail

/// "]lower,upper[" for the admissible n-interval, or "" when no interval
/// exists (|m| >= 4 l).
inline std::string format_interval_cell(double l, double m) {
    if (!(l > 0.0)) throw std::domain_error("format_interval_cell: requires l > 0");
    if (std::abs(m) >= 4 * l) return "";
    const Interval interval = n_interval(l, m);
    return "]" + detail::format_bound(interval.lower) + "," +
           detail::format_bound(interval.upper) + "[";
}

/// Table of admissible n-intervals over a grid of l values (columns) and
/// |m| values (rows).
struct IntervalTable {
    std::vector<double> l_values;
    std::vector<double> m_values;
    std::vector<std::vector<std::string>> cells; // cells[row][col], "" = blank
};

inline IntervalTable interval_table(std::span<const double> l_values,
                                    std::span<const double> m_values) {
    if (l_values.empty() || m_values.empty())
        throw std::invalid_argument("interval_table: need at least one l and one m value");
    IntervalTable table;
    table.l_values.assign(l_values.begin(), l_values.end());
    table.m_values.assign(m_values.begin(), m_values.end());
    table.cells.reserve(m_values.size());
    for (double m : m_values) {
        std::vector<std::string> row;
        row.reserve(l_values.size());
        for (double l : l_values) row.push_back(format_interval_cell(l, m));
        table.cells.push_back(std::move(row));
    }
    return table;
}

inline std::string render_text(const IntervalTable& table) {
    std::vector<std::size_t> widths(table.l_values.size() + 1, 5);
    std::vector<std::string> headers{"|m|\\l"};
    for (double l : table.l_values) headers.push_back(detail::format_bound(l));
    std::vector<std::string> row_labels;
    for (double m : table.m_values) row_labels.push_back(detail::format_bound(std::abs(m)));

    for (std::size_t col = 0; col <= table.l_values.size(); ++col) {
        widths[col] = headers[col].size();
        for (std::size_t row = 0; row < table.m_values.size(); ++row) {
            const std::string& cell = col == 0 ? row_labels[row] : table.cells[row][col - 1];
            widths[col] = std::max(widths[col], cell.size());
        }
    }

    std::ostringstream os;
    auto emit_row = [&](const std::vector<std::string>& cells) {
        for (std::size_t col = 0; col < cells.size(); ++col) {
            os << (col == 0 ? "" : "  ");
            os << cells[col];
            os << std::string(widths[col] - cells[col].size(), ' ');
        }
        os << '\n';
    };
    emit_row(headers);
    for (std::size_t row = 0; row < table.m_values.size(); ++row) {
        std::vector<std::string> cells{row_labels[row]};
        cells.insert(cells.end(), table.cells[row].begin(), table.cells[row].end());
        emit_row(cells);
    }
    return os.str();
}

/// CSV with one row per |m| value; blank cells stay empty.
inline std::string render_csv(const IntervalTable& table) {
    std::ostringstream os;
    os << "m_abs";
    for (double l : table.l_values) os << ",l=" << detail::format_bound(l);
    os << '\n';
    for (std::size_t row = 0; row < table.m_values.size(); ++row) {
        os << detail::format_bound(std::abs(table.m_values[row]));
        for (const std::string& cell : table.cells[row]) {
            os << ',';
            if (!cell.empty()) os << '"' << cell << '"';
        }
        os << '\n';
    }
    return os.str();
}

} // namespace symroot
