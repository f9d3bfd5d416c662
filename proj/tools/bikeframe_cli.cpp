// Command-line front end: generate, check, simulate, analyze, converge, plot.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bikeframe/analysis.hpp"
#include "bikeframe/sampling.hpp"
#include "bikeframe/table_io.hpp"

namespace {

using namespace bikeframe;

constexpr int kExitUsage = 2;
constexpr int kExitSchema = 3;
constexpr int kExitIo = 4;

void print_counts(std::ostream& out, const ValidityCounts& counts) {
    for (const auto v : kValidityClasses) out << "  " << to_string(v) << ": " << counts[v] << '\n';
    out << "  total: " << counts.total() << '\n';
}

SimulationConfig load_config(const std::string& path) {
    return path.empty() ? SimulationConfig{} : read_config(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametric bicycle frame structural analysis"};
    app.require_subcommand(1);

    // generate
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::string out_path;
    auto* generate = app.add_subcommand("generate", "Sample frame designs around the reference road frame");
    generate->add_option("--count", count, "Number of designs")->required()->check(CLI::PositiveNumber);
    generate->add_option("--seed", seed, "Random seed")->required();
    generate->add_option("--out", out_path, "Design file to write")->required();

    // check
    std::string in_path;
    auto* check = app.add_subcommand("check", "Report geometric feasibility per design");
    check->add_option("--in", in_path, "Design file")->required();
    check->add_option("--out", out_path, "Feasibility report to write")->required();

    // simulate
    std::string config_path;
    unsigned jobs = 1;
    auto* simulate = app.add_subcommand("simulate", "Evaluate every design under the three load cases");
    simulate->add_option("--in", in_path, "Design file")->required();
    simulate->add_option("--out", out_path, "Results file to write")->required();
    simulate->add_option("--config", config_path, "Simulation config file");
    simulate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    // analyze
    std::string out_dir;
    std::size_t subset = 0;
    auto* analyze_cmd = app.add_subcommand("analyze", "Validity counts, Pareto front, correlations, statistics");
    analyze_cmd->add_option("--in", in_path, "Results file")->required();
    analyze_cmd->add_option("--out-dir", out_dir, "Output directory")->required();
    analyze_cmd->add_option("--subset", subset, "Analyze a seeded random subset of this many rows")
        ->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--seed", seed, "Seed for --subset");

    // converge
    std::int64_t row_id = 0;
    std::string case_name = "all";
    std::vector<int> subdivisions{1, 2, 4, 8, 16, 32};
    auto* converge = app.add_subcommand("converge", "Sweep elements per tube for one design");
    converge->add_option("--in", in_path, "Design file")->required();
    converge->add_option("--row", row_id, "row_id of the design")->required();
    converge->add_option("--case", case_name, "InPlane, Transverse, Eccentric or all")
        ->check(CLI::IsMember({"InPlane", "Transverse", "Eccentric", "all"}));
    converge->add_option("--subdivisions", subdivisions, "Elements per tube levels")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    converge->add_option("--config", config_path, "Simulation config file");
    converge->add_option("--out", out_path, "Table to write")->required();

    // plot
    std::size_t bins = 0;
    auto* plot = app.add_subcommand("plot", "Scatter-matrix, histogram and heatmap data files");
    plot->add_option("--in", in_path, "Results file")->required();
    plot->add_option("--out-dir", out_dir, "Output directory")->required();
    plot->add_option("--bins", bins, "Histogram bins (default: Sturges)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*generate) {
            write_designs(out_path, generate_designs(count, seed));
            std::cout << "wrote " << count << " designs to " << out_path << '\n';
        } else if (*check) {
            std::vector<CheckRow> rows;
            std::size_t infeasible = 0;
            for (const auto& design : read_designs(in_path)) {
                rows.push_back({design.row_id, check_buildable(design.params)});
                if (!rows.back().report.feasible) ++infeasible;
            }
            auto out = open_output(out_path);
            write_check_report(out, rows);
            if (!out) throw IoError("failed writing " + out_path);
            std::cout << rows.size() << " designs, " << infeasible << " with violations\n";
        } else if (*simulate) {
            const auto config = load_config(config_path);
            DesignReadStats stats;
            const auto designs = read_designs(in_path, &stats);
            if (stats.substituted_materials > 0) {
                std::cout << "substituted " << stats.substituted_materials
                          << " non-isotropic material entries with Aluminum\n";
            }
            BatchOptions options;
            options.jobs = jobs;
            const std::size_t step = std::max<std::size_t>(1, designs.size() / 10);
            options.on_progress = [&](std::size_t done, std::size_t total, const ValidityCounts& c) {
                if (done % step == 0 || done == total) {
                    std::cerr << done << "/" << total << " valid=" << c[ValidityClass::Valid]
                              << " structural=" << c[ValidityClass::StructuralFailure]
                              << " infeasible=" << c[ValidityClass::GeometricInfeasible]
                              << " build=" << c[ValidityClass::BuildFailed]
                              << " sim=" << c[ValidityClass::SimFailed] << '\n';
                }
            };
            const auto results = run_batch(designs, config, options);
            write_results(out_path, results);
            std::cout << "validity breakdown:\n";
            print_counts(std::cout, validity_breakdown(results));
        } else if (*analyze_cmd) {
            auto results = read_results(in_path);
            if (subset > 0) results = subset_rows(results, subset, seed);
            const auto report = analyze(results, ObjectiveSpec::defaults());
            std::filesystem::create_directories(out_dir);
            const std::filesystem::path dir(out_dir);
            {
                auto out = open_output((dir / "analysis_report.json").string());
                write_report_json(out, report);
            }
            {
                auto out = open_output((dir / "correlation_matrix.csv").string());
                if (report.correlation) write_correlation_csv(out, *report.correlation);
            }
            std::cout << report.rows << " rows, " << report.non_dominated_ids.size()
                      << " non-dominated\n";
            print_counts(std::cout, report.validity);
        } else if (*converge) {
            const auto config = load_config(config_path);
            const auto designs = read_designs(in_path);
            const auto it = std::find_if(designs.begin(), designs.end(),
                                         [&](const DesignRow& r) { return r.row_id == row_id; });
            if (it == designs.end()) {
                std::cerr << "error: no design with row_id " << row_id << '\n';
                return kExitUsage;
            }
            const std::optional<LoadCaseId> only =
                case_name == "all" ? std::nullopt : parse_load_case(case_name);
            const auto rows = convergence_study(it->params, only, subdivisions, config);
            auto out = open_output(out_path);
            write_convergence(out, rows);
            if (!out) throw IoError("failed writing " + out_path);
            std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
        } else if (*plot) {
            const auto results = read_results(in_path);
            PlotOptions options;
            if (bins > 0) options.bins = bins;
            const auto files = emit_plots(results, ObjectiveSpec::defaults(), out_dir, options);
            std::cout << "wrote " << files.size() << " files to " << out_dir << '\n';
        }
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
