#pragma once

#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "bikeframe/geometry.hpp"
#include "bikeframe/sampling.hpp"

namespace bikeframe {

// Comma-separated, LF-terminated, UTF-8. Header row required. Numbers are
// written in shortest round-trip form; an empty cell is a missing value.

inline constexpr std::string_view kRowIdColumn = "row_id";

struct DesignReadStats {
    // Rows whose material cell named a category simulated as another one.
    std::size_t substituted_materials = 0;
};

/// Throws SchemaError for missing, unknown or repeated columns and
/// ParseError (with row and column) for bad cells or duplicate row ids.
DesignTable read_designs(std::istream& in, DesignReadStats* stats = nullptr);
DesignTable read_designs(const std::string& path, DesignReadStats* stats = nullptr);
void write_designs(std::ostream& out, const DesignTable& table);
void write_designs(const std::string& path, const DesignTable& table);

ResultTable read_results(std::istream& in);
ResultTable read_results(const std::string& path);
void write_results(std::ostream& out, const ResultTable& table);
void write_results(const std::string& path, const ResultTable& table);

struct CheckRow {
    std::int64_t row_id;
    FeasibilityReport report;
};

void write_check_report(std::ostream& out, const std::vector<CheckRow>& rows);

void write_convergence(std::ostream& out, const std::vector<ConvergenceRow>& rows);

/// Opens `path` for writing or throws IoError.
std::ofstream open_output(const std::string& path);

}  // namespace bikeframe
