// risopt command-line driver: heatmap sweeps, optimization runs and result reports.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "risopt/risopt.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct HeatmapOptions {
    std::string config_path;
    double theta = 0.0;
    int num_elements = 0;
    double alpha = 0.0;
    double cell_size = 2.0;
    std::vector<std::string> metrics;
    std::string out_dir = "heatmap_out";
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
};

struct OptimizeOptions {
    std::string config_path;
    std::string search_params_path;
    std::string out = "result.json";
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
};

struct ReportOptions {
    std::string result_path;
};

std::string joined_command(int argc, char** argv) {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
    return os.str();
}

risopt::ScenarioConfig load_with_seed(const std::string& path, const std::optional<std::uint64_t>& seed) {
    auto cfg = risopt::load_config(path);
    if (seed) cfg.master_seed = *seed;
    return cfg;
}

int run_heatmap(const HeatmapOptions& opt, const std::string& command) {
    std::vector<risopt::HeatmapMetric> metrics;
    if (opt.metrics.empty()) {
        metrics.assign(std::begin(risopt::kAllHeatmapMetrics), std::end(risopt::kAllHeatmapMetrics));
    } else {
        for (const auto& name : opt.metrics) {
            const auto m = risopt::parse_heatmap_metric(name);
            if (!m) throw risopt::ConfigError("unknown metric '" + name + "'");
            metrics.push_back(*m);
        }
    }

    const auto cfg = load_with_seed(opt.config_path, opt.seed);
    const risopt::FixedParams fixed{opt.theta, opt.num_elements, opt.alpha};
    const auto grids = risopt::sweep_grid(cfg, fixed, opt.cell_size, metrics, opt.workers);

    fs::create_directories(opt.out_dir);
    const risopt::Provenance provenance{risopt::config_hash(cfg), cfg.master_seed, risopt::kToolVersion};
    risopt::RunManifest manifest;
    manifest.config_hash = provenance.config_hash;
    manifest.seed = cfg.master_seed;
    manifest.command = command;
    manifest.timestamp = risopt::utc_timestamp();
    for (const auto& grid : grids) {
        const fs::path csv = fs::path(opt.out_dir) / (std::string(risopt::to_string(grid.metric)) + ".csv");
        risopt::export_grid(grid, csv, provenance);
        manifest.outputs.push_back(csv.string());
        manifest.outputs.push_back(risopt::sidecar_path(csv).string());
    }
    const fs::path manifest_path = fs::path(opt.out_dir) / "manifest.json";
    manifest.outputs.push_back(manifest_path.string());
    risopt::write_manifest(manifest, manifest_path);
    std::cout << "wrote " << grids.size() << " grids (" << grids.front().rows << "x" << grids.front().cols
              << ") to " << opt.out_dir << '\n';
    return kExitOk;
}

fs::path with_suffix(const fs::path& path, const std::string& suffix) {
    fs::path p = path;
    p.replace_extension();
    p += suffix;
    return p;
}

int run_optimize(const OptimizeOptions& opt, const std::string& command) {
    const auto cfg = load_with_seed(opt.config_path, opt.seed);
    auto params = opt.search_params_path.empty() ? risopt::SearchParams{}
                                                 : risopt::load_search_params(opt.search_params_path);
    if (opt.workers) params.workers = *opt.workers;

    const auto result = risopt::iterative_search(cfg, params);
    risopt::check_integrity(result);

    const risopt::Provenance provenance{risopt::config_hash(cfg), cfg.master_seed, risopt::kToolVersion};
    const fs::path out(opt.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write result: " + out.string());
        f << risopt::to_json(result, provenance).dump() << '\n';
        if (!f) throw std::runtime_error("write failed: " + out.string());
    }
    const auto table = risopt::format_table(result);
    const fs::path table_path = with_suffix(out, ".table.txt");
    {
        std::ofstream f(table_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write table: " + table_path.string());
        f << table;
    }

    risopt::RunManifest manifest;
    manifest.config_hash = provenance.config_hash;
    manifest.seed = cfg.master_seed;
    manifest.command = command;
    manifest.timestamp = risopt::utc_timestamp();
    const fs::path manifest_path = with_suffix(out, ".manifest.json");
    manifest.outputs = {out.string(), table_path.string(), manifest_path.string()};
    risopt::write_manifest(manifest, manifest_path);

    std::cout << table;
    std::cout << result.candidates.size() << " candidates over " << result.rounds_executed << " rounds"
              << (result.converged ? " (converged)" : "") << '\n';
    return kExitOk;
}

int run_report(const ReportOptions& opt) {
    const auto result = risopt::load_result(opt.result_path);
    risopt::check_integrity(result);
    std::cout << risopt::format_table(result);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS deployment simulator and multi-objective optimizer"};
    app.require_subcommand(1);
    app.set_version_flag("--version", risopt::kToolVersion);

    HeatmapOptions heat;
    auto* heatmap = app.add_subcommand("heatmap", "Sweep RIS positions with fixed (theta, N, alpha)");
    heatmap->add_option("config", heat.config_path, "Scenario config (JSON)")->required();
    heatmap->add_option("--fixed-theta", heat.theta, "RIS orientation in radians")->required();
    heatmap->add_option("--fixed-n", heat.num_elements, "Number of RIS elements")->required();
    heatmap->add_option("--fixed-alpha", heat.alpha, "ISAC weight alpha in [0, 1]")->required();
    heatmap->add_option("--cell-size", heat.cell_size, "Cell size in meters")->capture_default_str();
    heatmap->add_option("--metrics", heat.metrics,
                        "Comma-separated subset of delta_snr_b,sensing_gain,security_gap,scalar_objective")
        ->delimiter(',');
    heatmap->add_option("--out-dir", heat.out_dir, "Output directory")->capture_default_str();
    heatmap->add_option("--seed", heat.seed, "Override the config's master seed");
    heatmap->add_option("--workers", heat.workers, "Worker threads")->capture_default_str();

    OptimizeOptions optim;
    auto* optimize = app.add_subcommand("optimize", "Run the coarse-to-fine deployment search");
    optimize->add_option("config", optim.config_path, "Scenario config (JSON)")->required();
    optimize->add_option("--search-params,--search-params-path", optim.search_params_path,
                         "Search settings (JSON)");
    optimize->add_option("--out", optim.out, "Result JSON path")->capture_default_str();
    optimize->add_option("--seed", optim.seed, "Override the config's master seed");
    optimize->add_option("--workers", optim.workers, "Worker threads");

    ReportOptions rep;
    auto* report = app.add_subcommand("report", "Validate a saved result and print its representatives");
    report->add_option("result", rep.result_path, "Result JSON from 'optimize'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string command = joined_command(argc, argv);
    try {
        if (heatmap->parsed()) return run_heatmap(heat, command);
        if (optimize->parsed()) return run_optimize(optim, command);
        if (report->parsed()) return run_report(rep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
