#include "bikeframe/table_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>

#include "text_util.hpp"

namespace bikeframe {

namespace {

std::string cell_error(std::size_t line, std::string_view column, std::string_view what) {
    return "line " + std::to_string(line) + ", column '" + std::string(column) + "': " +
           std::string(what);
}

// Maps header names to positions and enforces an exact column set.
class Header {
public:
    Header(std::istream& in, const std::vector<std::string_view>& required) {
        std::string line;
        if (!std::getline(in, line)) throw SchemaError("missing header row");
        const auto cells = detail::split(line, ',');
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::string name(detail::trim(cells[i]));
            if (std::find(required.begin(), required.end(), name) == required.end()) {
                throw SchemaError("unknown column '" + name + "'");
            }
            if (!index_.emplace(name, i).second) throw SchemaError("repeated column '" + name + "'");
        }
        for (const auto name : required) {
            if (!index_.count(name)) throw SchemaError("missing column '" + std::string(name) + "'");
        }
        width_ = cells.size();
    }

    std::size_t operator[](std::string_view name) const { return index_.find(name)->second; }
    std::size_t width() const { return width_; }

private:
    std::map<std::string, std::size_t, std::less<>> index_;
    std::size_t width_ = 0;
};

// Yields the cells of each non-empty data line with its 1-based line number.
template <typename Fn>
void for_each_row(std::istream& in, const Header& header, Fn&& fn) {
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split(line, ',');
        if (cells.size() != header.width()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.width()) + " cells, found " +
                             std::to_string(cells.size()));
        }
        fn(cells, line_no);
    }
}

std::int64_t parse_row_id(std::string_view cell, std::size_t line, std::set<std::int64_t>& seen) {
    const auto id = detail::parse_integer<std::int64_t>(cell);
    if (!id) throw ParseError(cell_error(line, kRowIdColumn, "not an integer row id"));
    if (!seen.insert(*id).second) throw ParseError(cell_error(line, kRowIdColumn, "duplicate row id"));
    return *id;
}

bool parse_flag(std::string_view cell, std::size_t line, std::string_view column) {
    cell = detail::trim(cell);
    if (cell == "1" || cell == "true") return true;
    if (cell == "0" || cell == "false") return false;
    throw ParseError(cell_error(line, column, "expected 0/1 or true/false"));
}

std::vector<std::string_view> design_columns() {
    std::vector<std::string_view> cols{kRowIdColumn};
    for (auto name : parameter_names()) cols.push_back(name);
    return cols;
}

std::vector<std::string_view> result_columns() {
    std::vector<std::string_view> cols{kRowIdColumn};
    for (auto f : performance_fields()) cols.push_back(to_string(f));
    cols.push_back("status");
    cols.push_back("validity");
    return cols;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

void check_written(std::ostream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

DesignTable read_designs(std::istream& in, DesignReadStats* stats) {
    const Header header(in, design_columns());
    DesignTable table;
    std::set<std::int64_t> ids;
    for_each_row(in, header, [&](const std::vector<std::string_view>& cells, std::size_t line) {
        DesignRow row{parse_row_id(cells[header[kRowIdColumn]], line, ids), {}};
        for (const auto& column : scalar_columns()) {
            const auto value = detail::parse_double(cells[header[column.name]]);
            if (!value) throw ParseError(cell_error(line, column.name, "not a number"));
            row.params.*column.field = *value;
        }
        const auto material_cell = detail::trim(cells[header[kMaterialColumn]]);
        const auto raw = parse_raw_material(material_cell);
        if (!raw) throw ParseError(cell_error(line, kMaterialColumn, "unknown material"));
        row.params.material = substitute_category(*raw);
        if (stats && to_string(row.params.material) != material_cell) ++stats->substituted_materials;
        row.params.has_chain_stay_bridge =
            parse_flag(cells[header[kChainStayBridgeColumn]], line, kChainStayBridgeColumn);
        row.params.has_seat_stay_bridge =
            parse_flag(cells[header[kSeatStayBridgeColumn]], line, kSeatStayBridgeColumn);
        table.push_back(row);
    });
    return table;
}

DesignTable read_designs(const std::string& path, DesignReadStats* stats) {
    auto in = open_input(path);
    return read_designs(in, stats);
}

void write_designs(std::ostream& out, const DesignTable& table) {
    const auto cols = design_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& row : table) {
        out << row.row_id;
        for (const auto& column : scalar_columns()) out << ',' << detail::format_double(row.params.*column.field);
        out << ',' << to_string(row.params.material) << ',' << (row.params.has_chain_stay_bridge ? 1 : 0)
            << ',' << (row.params.has_seat_stay_bridge ? 1 : 0) << '\n';
    }
}

void write_designs(const std::string& path, const DesignTable& table) {
    auto out = open_output(path);
    write_designs(out, table);
    check_written(out, path);
}

ResultTable read_results(std::istream& in) {
    const Header header(in, result_columns());
    ResultTable table;
    std::set<std::int64_t> ids;
    for_each_row(in, header, [&](const std::vector<std::string_view>& cells, std::size_t line) {
        ResultRow row{parse_row_id(cells[header[kRowIdColumn]], line, ids), {}, ValidityClass::Valid};
        for (const auto f : performance_fields()) {
            const auto name = to_string(f);
            const auto cell = detail::trim(cells[header[name]]);
            if (cell.empty()) continue;  // missing value
            const auto value = detail::parse_double(cell);
            if (!value) throw ParseError(cell_error(line, name, "not a number"));
            field_ref(row.record, f) = *value;
        }
        const auto status = parse_status(detail::trim(cells[header["status"]]));
        if (!status) throw ParseError(cell_error(line, "status", "unknown status"));
        row.record.status = *status;
        const auto validity = parse_validity(detail::trim(cells[header["validity"]]));
        if (!validity) throw ParseError(cell_error(line, "validity", "unknown validity class"));
        row.validity = *validity;
        table.push_back(row);
    });
    return table;
}

ResultTable read_results(const std::string& path) {
    auto in = open_input(path);
    return read_results(in);
}

void write_results(std::ostream& out, const ResultTable& table) {
    const auto cols = result_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& row : table) {
        out << row.row_id;
        for (const auto f : performance_fields()) out << ',' << detail::format_cell(field_value(row.record, f));
        out << ',' << to_string(row.record.status) << ',' << to_string(row.validity) << '\n';
    }
}

void write_results(const std::string& path, const ResultTable& table) {
    auto out = open_output(path);
    write_results(out, table);
    check_written(out, path);
}

void write_check_report(std::ostream& out, const std::vector<CheckRow>& rows) {
    out << "row_id,feasible,violations\n";
    for (const auto& row : rows) {
        out << row.row_id << ',' << (row.report.feasible ? 1 : 0) << ',';
        for (std::size_t i = 0; i < row.report.violations.size(); ++i) {
            out << (i ? ";" : "") << to_string(row.report.violations[i]);
        }
        out << '\n';
    }
}

void write_convergence(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << "elements_per_tube";
    for (const auto f : performance_fields()) out << ',' << to_string(f);
    out << ",status\n";
    for (const auto& row : rows) {
        out << row.elements_per_tube;
        for (const auto f : performance_fields()) out << ',' << detail::format_cell(field_value(row.record, f));
        out << ',' << to_string(row.record.status) << '\n';
    }
}

}  // namespace bikeframe
