#include "ebkit/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "ebkit/errors.hpp"

namespace ebkit {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == name) return j;
    }
    throw_error("OutOfRange", "no CSV column named '" + name + "'");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw_error("ParseError", "not a number: '" + s + "'");
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw_error("ParseError", "trailing characters in '" + s + "'");
    return v;
}

int parse_int(const std::string& s) {
    const double v = parse_double(s);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) throw_error("ParseError", "not an integer: '" + s + "'");
    return i;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            table.header = split_line(line);
            first = false;
        } else {
            table.rows.push_back(split_line(line));
            if (table.rows.back().size() != table.header.size()) {
                throw_error("ParseError", "row has " + std::to_string(table.rows.back().size()) +
                                              " fields, header has " +
                                              std::to_string(table.header.size()));
            }
        }
    }
    if (first) throw_error("ParseError", "empty CSV input");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_error("ParseError", "cannot open " + path);
    return read_csv(in);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t j = 0; j < header.size(); ++j) {
        out << (j ? "," : "") << header[j];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            out << (j ? "," : "") << format_double(row[j]);
        }
        out << "\n";
    }
}

std::vector<double> read_scalar_csv(std::istream& in) {
    const CsvTable table = read_csv(in);
    if (table.header.size() != 1) {
        throw_error("ParseError", "scalar sample must have exactly one column");
    }
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (const auto& row : table.rows) values.push_back(parse_double(row[0]));
    return values;
}

std::vector<IntervalObject> read_interval_csv(std::istream& in) {
    const CsvTable table = read_csv(in);
    if (table.header.empty() || table.header.size() % 2 != 0) {
        throw_error("ParseError", "interval CSV needs an even number of bound columns");
    }
    const std::size_t p = table.header.size() / 2;
    std::vector<IntervalObject> objects;
    objects.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        IntervalObject obj;
        obj.reserve(p);
        for (std::size_t j = 0; j < p; ++j) {
            obj.emplace_back(parse_double(row[2 * j]), parse_double(row[2 * j + 1]));
        }
        objects.push_back(std::move(obj));
    }
    return objects;
}

GroupedSample read_grouped_csv(std::istream& in, std::vector<std::string>* group_labels) {
    const CsvTable table = read_csv(in);
    if (table.header.size() < 2 || table.header[0] != "group") {
        throw_error("ParseError", "grouped CSV needs columns group,x_1,...");
    }
    const std::size_t p = table.header.size() - 1;

    std::vector<std::string> order;
    std::map<std::string, std::vector<std::vector<double>>> by_group;
    for (const auto& row : table.rows) {
        auto& rows = by_group[row[0]];
        if (rows.empty()) order.push_back(row[0]);
        std::vector<double> x(p);
        for (std::size_t j = 0; j < p; ++j) x[j] = parse_double(row[j + 1]);
        rows.push_back(std::move(x));
    }

    GroupedSample sample;
    for (const auto& label : order) {
        const auto& rows = by_group[label];
        Eigen::MatrixXd g(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
            }
        }
        sample.groups.push_back(std::move(g));
        if (group_labels != nullptr) group_labels->push_back(label);
    }
    return sample;
}

IntervalGroupedSample read_interval_grouped_csv(std::istream& in,
                                                std::vector<std::string>* group_labels) {
    const CsvTable table = read_csv(in);
    if (table.header.size() < 3 || table.header[0] != "group" ||
        (table.header.size() - 1) % 2 != 0) {
        throw_error("ParseError", "interval grouped CSV needs columns group,l_1,u_1,...");
    }
    const std::size_t p = (table.header.size() - 1) / 2;

    std::vector<std::string> order;
    std::map<std::string, std::vector<IntervalBox>> by_group;
    for (const auto& row : table.rows) {
        auto& boxes = by_group[row[0]];
        if (boxes.empty()) order.push_back(row[0]);
        std::vector<double> lower(p), upper(p);
        for (std::size_t j = 0; j < p; ++j) {
            lower[j] = parse_double(row[1 + 2 * j]);
            upper[j] = parse_double(row[2 + 2 * j]);
        }
        boxes.emplace_back(std::move(lower), std::move(upper));
    }

    IntervalGroupedSample sample;
    for (const auto& label : order) {
        sample.groups.push_back(by_group[label]);
        if (group_labels != nullptr) group_labels->push_back(label);
    }
    return sample;
}

RankingTable read_rankings_csv(std::istream& in, const std::string& group_col) {
    const CsvTable table = read_csv(in);
    std::size_t group_idx = table.header.size();
    if (!group_col.empty()) group_idx = table.column(group_col);

    RankingTable out;
    for (const auto& row : table.rows) {
        std::vector<int> ranking;
        ranking.reserve(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j == group_idx) continue;
            ranking.push_back(parse_int(row[j]));
        }
        out.rankings.push_back(std::move(ranking));
        if (group_idx < table.header.size()) out.groups.push_back(row[group_idx]);
    }
    if (out.rankings.empty()) throw_error("EmptySample", "no ranking rows");
    return out;
}

void emit_plot_data(std::ostream& out, const std::vector<double>& xs,
                    const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    if (series.empty()) throw_error("LengthMismatch", "need at least one series");
    for (const auto& [name, values] : series) {
        if (values.size() != xs.size()) {
            throw_error("LengthMismatch", "series '" + name + "' does not match xs in length");
        }
    }
    out << "x,series,value\n";
    for (const auto& [name, values] : series) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out << format_double(xs[i]) << "," << name << "," << format_double(values[i]) << "\n";
        }
    }
}

}  // namespace ebkit
