#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bikeframe/load_cases.hpp"
#include "bikeframe/sampling.hpp"

namespace bikeframe {

enum class Direction { Minimize, Maximize };
enum class Transform { Identity, AbsoluteValue };

struct Objective {
    PerformanceField field;
    Direction direction;
    Transform transform;

    double value(const PerformanceRecord& record) const;
    /// Value oriented for minimization.
    double cost(const PerformanceRecord& record) const;
    /// File-safe identifier, e.g. "abs_mass".
    std::string key() const;
    /// Display label, e.g. "|mass|".
    std::string label() const;
};

struct ObjectiveSpec {
    std::vector<Objective> objectives;

    /// |in-plane dropout vertical|, |transverse bb lateral|, |eccentric
    /// twist| minimized; in-plane safety factor maximized; mass minimized.
    static ObjectiveSpec defaults();
    std::size_t size() const { return objectives.size(); }
};

/// Indices of rows with status Ok, in table order.
std::vector<std::size_t> ok_rows(const ResultTable& results);

/// `a` dominates `b` (minimization): no worse anywhere, better somewhere.
bool dominates(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b);

/// Row ids of the non-dominated Ok rows, in table order. Throws EmptyInput.
std::vector<std::int64_t> pareto_front(const ResultTable& results, const ObjectiveSpec& spec);

struct CorrelationMatrix {
    std::vector<std::string> names;
    Eigen::MatrixXd values;
    // False where a constant column leaves the coefficient undefined; the
    // corresponding value is NaN and serializes as empty / null.
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined;
};

/// Pearson coefficients over Ok rows for the transformed objectives.
/// Throws InsufficientData below two rows.
CorrelationMatrix pearson_matrix(const ResultTable& results, const ObjectiveSpec& spec);

ValidityCounts validity_breakdown(const ResultTable& results);

struct SummaryStats {
    std::size_t count = 0;
    double min = kMissing;
    double max = kMissing;
    double mean = kMissing;
    double median = kMissing;
};

std::vector<SummaryStats> summary_statistics(const ResultTable& results, const ObjectiveSpec& spec);

struct AnalysisReport {
    std::size_t rows = 0;
    ValidityCounts validity;
    ObjectiveSpec spec;
    std::vector<std::int64_t> non_dominated_ids;
    std::optional<CorrelationMatrix> correlation;
    std::vector<SummaryStats> summary;
};

/// Front and correlations are left empty when there are too few Ok rows.
AnalysisReport analyze(const ResultTable& results, const ObjectiveSpec& spec);

void write_report_json(std::ostream& out, const AnalysisReport& report);
void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix);

/// Seeded uniform sample of `size` rows without replacement, input order kept.
ResultTable subset_rows(const ResultTable& results, std::size_t size, std::uint64_t seed);

/// Sturges rule: ceil(log2 n) + 1 bins.
std::size_t sturges_bins(std::size_t n);

struct PlotOptions {
    std::optional<std::size_t> bins;  // Sturges when empty
};

/// Writes scatter_<a>__<b>.csv for every objective pair, hist_<a>.csv per
/// objective and correlation_heatmap.svg. Returns the written paths.
std::vector<std::filesystem::path> emit_plots(const ResultTable& results, const ObjectiveSpec& spec,
                                              const std::filesystem::path& out_dir,
                                              const PlotOptions& options = {});

}  // namespace bikeframe
