#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ebkit/cluster.hpp"
#include "ebkit/interval.hpp"
#include "ebkit/linear_eb.hpp"

namespace ebkit {

/// Shortest round-trip-lossless decimal rendering (17 significant digits).
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;  // throws OutOfRange
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Single numeric column with a header row.
std::vector<double> read_scalar_csv(std::istream& in);

/// Interval observations stored as bound pairs l_1,u_1,l_2,u_2,...
std::vector<IntervalObject> read_interval_csv(std::istream& in);

/// Grouped observations: columns group,x_1,...,x_p.
GroupedSample read_grouped_csv(std::istream& in, std::vector<std::string>* group_labels = nullptr);

/// Grouped intervals: columns group,l_1,u_1,...
IntervalGroupedSample read_interval_grouped_csv(std::istream& in,
                                                std::vector<std::string>* group_labels = nullptr);

/// Ranking rows (one judge per row, t integer columns).  When group_col is
/// nonempty that column supplies the group label and is excluded from the
/// ranking.
struct RankingTable {
    std::vector<std::vector<int>> rankings;
    std::vector<std::string> groups;  // empty when no group column
};
RankingTable read_rankings_csv(std::istream& in, const std::string& group_col = "");

/// Tidy plot data: rows x,series,value for each series.  All series must
/// match xs in length (LengthMismatch) and at least one series is required.
void emit_plot_data(std::ostream& out, const std::vector<double>& xs,
                    const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace ebkit
