#include "bikeframe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>

#include <json.hpp>

#include "bikeframe/table_io.hpp"
#include "text_util.hpp"

namespace bikeframe {

namespace {

// n x k matrix of transformed objective values for the given rows.
Eigen::MatrixXd objective_values(const ResultTable& results, const ObjectiveSpec& spec,
                                 const std::vector<std::size_t>& rows) {
    Eigen::MatrixXd x(rows.size(), spec.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < spec.size(); ++j) {
            x(i, j) = spec.objectives[j].value(results[rows[i]].record);
        }
    }
    return x;
}

Eigen::MatrixXd objective_costs(const ResultTable& results, const ObjectiveSpec& spec,
                                const std::vector<std::size_t>& rows) {
    Eigen::MatrixXd x = objective_values(results, spec, rows);
    for (std::size_t j = 0; j < spec.size(); ++j) {
        if (spec.objectives[j].direction == Direction::Maximize) x.col(j) = -x.col(j);
    }
    return x;
}

std::string fixed(double v, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, v);
    return buffer;
}

// Diverging blue-white-red ramp for r in [-1, 1].
std::string heat_color(double r) {
    const double t = std::clamp(r, -1.0, 1.0);
    const auto mix = [](double a, double b, double s) { return static_cast<int>(std::lround(a + (b - a) * s)); };
    int red, green, blue;
    if (t < 0) {
        red = mix(255, 33, -t);
        green = mix(255, 102, -t);
        blue = mix(255, 172, -t);
    } else {
        red = mix(255, 178, t);
        green = mix(255, 24, t);
        blue = mix(255, 43, t);
    }
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", red, green, blue);
    return buffer;
}

void write_heatmap(std::ostream& out, const std::vector<std::string>& labels,
                   const std::optional<CorrelationMatrix>& matrix) {
    const int cell = 90;
    const int margin = 260;
    const int k = static_cast<int>(labels.size());
    const int size = margin + k * cell + 20;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"#ffffff\"/>\n";
    for (int i = 0; i < k; ++i) {
        const int y = margin + i * cell + cell / 2;
        out << "<text x=\"" << margin - 8 << "\" y=\"" << y << "\" text-anchor=\"end\">" << labels[i]
            << "</text>\n";
        const int x = margin + i * cell + cell / 2;
        out << "<text x=\"" << x << "\" y=\"" << margin - 8 << "\" transform=\"rotate(-45 " << x << ' '
            << margin - 8 << ")\">" << labels[i] << "</text>\n";
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const bool defined = matrix && matrix->defined(i, j);
            const double r = defined ? matrix->values(i, j) : 0.0;
            const int x = margin + j * cell;
            const int y = margin + i * cell;
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
                << "\" fill=\"" << (defined ? heat_color(r) : std::string("#dddddd"))
                << "\" stroke=\"#ffffff\"/>\n";
            out << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
                << "\" text-anchor=\"middle\">" << (defined ? fixed(r, 2) : std::string("n/a"))
                << "</text>\n";
        }
    }
    out << "</svg>\n";
}

nlohmann::ordered_json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace

double Objective::value(const PerformanceRecord& record) const {
    const double v = field_value(record, field);
    return transform == Transform::AbsoluteValue ? std::abs(v) : v;
}

double Objective::cost(const PerformanceRecord& record) const {
    const double v = value(record);
    return direction == Direction::Maximize ? -v : v;
}

std::string Objective::key() const {
    const std::string name(to_string(field));
    return transform == Transform::AbsoluteValue ? "abs_" + name : name;
}

std::string Objective::label() const {
    const std::string name(to_string(field));
    return transform == Transform::AbsoluteValue ? "|" + name + "|" : name;
}

ObjectiveSpec ObjectiveSpec::defaults() {
    return {{
        {PerformanceField::InplaneDropoutVerticalDisp, Direction::Minimize, Transform::AbsoluteValue},
        {PerformanceField::TransverseBbLateralDisp, Direction::Minimize, Transform::AbsoluteValue},
        {PerformanceField::EccentricBbTwist, Direction::Minimize, Transform::AbsoluteValue},
        {PerformanceField::InplaneSafetyFactor, Direction::Maximize, Transform::Identity},
        {PerformanceField::Mass, Direction::Minimize, Transform::Identity},
    }};
}

std::vector<std::size_t> ok_rows(const ResultTable& results) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].record.status == Status::Ok) rows.push_back(i);
    }
    return rows;
}

bool dominates(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b) {
    return (a.array() <= b.array()).all() && (a.array() < b.array()).any();
}

std::vector<std::int64_t> pareto_front(const ResultTable& results, const ObjectiveSpec& spec) {
    const auto rows = ok_rows(results);
    if (rows.empty()) throw EmptyInput("no Ok rows to rank");
    const Eigen::MatrixXd costs = objective_costs(results, spec, rows);

    // A dominator is lexicographically smaller than what it dominates, so in
    // lexicographic order each row only needs checking against the front so far.
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (Eigen::Index j = 0; j < costs.cols(); ++j) {
            if (costs(a, j) != costs(b, j)) return costs(a, j) < costs(b, j);
        }
        return false;
    });

    std::vector<std::size_t> front;
    for (const auto i : order) {
        const bool dominated = std::any_of(front.begin(), front.end(), [&](std::size_t f) {
            return dominates(costs.row(f).transpose(), costs.row(i).transpose());
        });
        if (!dominated) front.push_back(i);
    }
    std::sort(front.begin(), front.end());

    std::vector<std::int64_t> ids;
    ids.reserve(front.size());
    for (const auto i : front) ids.push_back(results[rows[i]].row_id);
    return ids;
}

CorrelationMatrix pearson_matrix(const ResultTable& results, const ObjectiveSpec& spec) {
    const auto rows = ok_rows(results);
    if (rows.size() < 2) throw InsufficientData("Pearson correlation needs at least two Ok rows");
    const Eigen::MatrixXd x = objective_values(results, spec, rows);
    const auto k = x.cols();

    const Eigen::RowVectorXd mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - mean;
    const Eigen::MatrixXd cross = centered.transpose() * centered;
    const Eigen::VectorXd spread = cross.diagonal().cwiseSqrt();

    std::vector<bool> constant(k);
    for (Eigen::Index j = 0; j < k; ++j) constant[j] = x.col(j).minCoeff() == x.col(j).maxCoeff();

    CorrelationMatrix out;
    for (const auto& o : spec.objectives) out.names.push_back(o.label());
    out.values.resize(k, k);
    out.defined.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const bool defined = !constant[i] && !constant[j];
            out.defined(i, j) = defined;
            if (!defined) {
                out.values(i, j) = kMissing;
            } else if (i == j) {
                out.values(i, j) = 1.0;
            } else {
                out.values(i, j) = std::clamp(cross(i, j) / (spread(i) * spread(j)), -1.0, 1.0);
            }
        }
    }
    return out;
}

ValidityCounts validity_breakdown(const ResultTable& results) {
    ValidityCounts counts;
    for (const auto& row : results) ++counts[row.validity];
    return counts;
}

std::vector<SummaryStats> summary_statistics(const ResultTable& results, const ObjectiveSpec& spec) {
    const auto rows = ok_rows(results);
    std::vector<SummaryStats> stats(spec.size());
    if (rows.empty()) return stats;
    const Eigen::MatrixXd x = objective_values(results, spec, rows);
    for (std::size_t j = 0; j < spec.size(); ++j) {
        std::vector<double> v(x.col(j).data(), x.col(j).data() + x.rows());
        std::sort(v.begin(), v.end());
        auto& s = stats[j];
        s.count = v.size();
        s.min = v.front();
        s.max = v.back();
        s.mean = x.col(j).mean();
        const std::size_t mid = v.size() / 2;
        s.median = v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
    }
    return stats;
}

AnalysisReport analyze(const ResultTable& results, const ObjectiveSpec& spec) {
    AnalysisReport report;
    report.rows = results.size();
    report.validity = validity_breakdown(results);
    report.spec = spec;
    const auto ok = ok_rows(results).size();
    if (ok >= 1) report.non_dominated_ids = pareto_front(results, spec);
    if (ok >= 2) report.correlation = pearson_matrix(results, spec);
    report.summary = summary_statistics(results, spec);
    return report;
}

void write_report_json(std::ostream& out, const AnalysisReport& report) {
    nlohmann::ordered_json j;
    j["rows"] = report.rows;
    auto& counts = j["validity_counts"];
    for (const auto v : kValidityClasses) counts[std::string(to_string(v))] = report.validity[v];

    j["objectives"] = nlohmann::ordered_json::array();
    for (const auto& o : report.spec.objectives) {
        j["objectives"].push_back({{"field", to_string(o.field)},
                                   {"direction", o.direction == Direction::Minimize ? "Minimize" : "Maximize"},
                                   {"transform", o.transform == Transform::Identity ? "Identity" : "AbsoluteValue"}});
    }
    j["non_dominated_ids"] = report.non_dominated_ids;

    if (report.correlation) {
        const auto& c = *report.correlation;
        nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
        for (Eigen::Index r = 0; r < c.values.rows(); ++r) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (Eigen::Index col = 0; col < c.values.cols(); ++col) row.push_back(number_or_null(c.values(r, col)));
            matrix.push_back(row);
        }
        j["correlation"] = {{"names", c.names}, {"matrix", matrix}};
    } else {
        j["correlation"] = nullptr;
    }

    auto& summary = j["summary"];
    summary = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < report.summary.size(); ++i) {
        const auto& s = report.summary[i];
        summary[report.spec.objectives[i].label()] = {{"count", s.count},
                                                      {"min", number_or_null(s.min)},
                                                      {"max", number_or_null(s.max)},
                                                      {"mean", number_or_null(s.mean)},
                                                      {"median", number_or_null(s.median)}};
    }
    out << j.dump(2) << '\n';
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix) {
    out << "objective";
    for (const auto& n : matrix.names) out << ',' << n;
    out << '\n';
    for (Eigen::Index i = 0; i < matrix.values.rows(); ++i) {
        out << matrix.names[i];
        for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) out << ',' << detail::format_cell(matrix.values(i, j));
        out << '\n';
    }
}

ResultTable subset_rows(const ResultTable& results, std::size_t size, std::uint64_t seed) {
    if (size >= results.size()) return results;
    std::vector<std::size_t> index(results.size());
    std::iota(index.begin(), index.end(), 0);
    Rng rng(seed);
    // Partial Fisher-Yates: the first `size` slots hold the sample.
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + rng.below(results.size() - i);
        std::swap(index[i], index[j]);
    }
    index.resize(size);
    std::sort(index.begin(), index.end());
    ResultTable out;
    out.reserve(size);
    for (const auto i : index) out.push_back(results[i]);
    return out;
}

std::size_t sturges_bins(std::size_t n) {
    if (n <= 1) return 1;
    return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
}

std::vector<std::filesystem::path> emit_plots(const ResultTable& results, const ObjectiveSpec& spec,
                                              const std::filesystem::path& out_dir,
                                              const PlotOptions& options) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string());

    const auto rows = ok_rows(results);
    const Eigen::MatrixXd x = objective_values(results, spec, rows);
    std::vector<bool> on_front(rows.size(), false);
    if (!rows.empty()) {
        const auto front = pareto_front(results, spec);
        const std::set<std::int64_t> ids(front.begin(), front.end());
        for (std::size_t i = 0; i < rows.size(); ++i) on_front[i] = ids.count(results[rows[i]].row_id) > 0;
    }

    std::vector<std::filesystem::path> written;
    const auto open = [&](const std::string& name) {
        written.push_back(out_dir / name);
        return open_output(written.back().string());
    };

    for (std::size_t a = 0; a < spec.size(); ++a) {
        for (std::size_t b = a + 1; b < spec.size(); ++b) {
            const auto& oa = spec.objectives[a];
            const auto& ob = spec.objectives[b];
            auto out = open("scatter_" + oa.key() + "__" + ob.key() + ".csv");
            out << "row_id," << oa.key() << ',' << ob.key() << ",validity,pareto\n";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& row = results[rows[i]];
                out << row.row_id << ',' << detail::format_double(x(i, a)) << ','
                    << detail::format_double(x(i, b)) << ',' << to_string(row.validity) << ','
                    << (on_front[i] ? 1 : 0) << '\n';
            }
            if (!out) throw IoError("failed writing " + written.back().string());
        }
    }

    const std::size_t bins = options.bins.value_or(sturges_bins(rows.size()));
    for (std::size_t j = 0; j < spec.size(); ++j) {
        auto out = open("hist_" + spec.objectives[j].key() + ".csv");
        out << "bin_lower,bin_upper,count\n";
        if (!rows.empty()) {
            const double lo = x.col(j).minCoeff();
            const double hi = x.col(j).maxCoeff();
            const double width = (hi - lo) / static_cast<double>(bins);
            std::vector<std::size_t> counts(bins, 0);
            for (Eigen::Index i = 0; i < x.rows(); ++i) {
                std::size_t bin = width > 0 ? static_cast<std::size_t>((x(i, j) - lo) / width) : 0;
                ++counts[std::min(bin, bins - 1)];
            }
            for (std::size_t b = 0; b < bins; ++b) {
                const double upper = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
                out << detail::format_double(lo + width * static_cast<double>(b)) << ','
                    << detail::format_double(upper) << ',' << counts[b] << '\n';
            }
        }
        if (!out) throw IoError("failed writing " + written.back().string());
    }

    std::optional<CorrelationMatrix> correlation;
    if (rows.size() >= 2) correlation = pearson_matrix(results, spec);
    std::vector<std::string> labels;
    for (const auto& o : spec.objectives) labels.push_back(o.label());
    auto svg = open("correlation_heatmap.svg");
    write_heatmap(svg, labels, correlation);
    if (!svg) throw IoError("failed writing " + written.back().string());
    return written;
}

}  // namespace bikeframe
