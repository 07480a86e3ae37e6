#include <deque>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "edmnet/config.hpp"
#include "edmnet/errors.hpp"
#include "edmnet/io.hpp"
#include "edmnet/pipeline.hpp"

namespace {

struct FlagBinding {
    CLI::Option* option = nullptr;
    std::string key;
    std::string value;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extremal-dependence network portfolio pipeline"};
    app.set_version_flag("--version", edmnet::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("-c,--config", config_path,
                   "Configuration file with `key = value` lines");

    // Every flag maps onto a config key; flags override file values.
    std::deque<FlagBinding> bindings;
    auto bind = [&](const std::string& flag, const std::string& key,
                    const std::string& help) {
        bindings.push_back({nullptr, key, {}});
        bindings.back().option = app.add_option(flag, bindings.back().value, help);
    };
    bind("--prices", "price_csv", "Price CSV (date,ticker,adjusted_close)");
    bind("--sectors", "sector_csv", "Sector CSV (ticker,sector)");
    bind("--market", "market_csv", "Market index CSV (date,adjusted_close)");
    bind("-o,--out", "output_dir", "Artifact output directory (default out)");
    bind("--tail-fraction", "tail_fraction",
         "Fraction of largest radii used by the estimator (default 0.2)");
    bind("--thresholds", "thresholds",
         "Comma-separated sweep thresholds (default 0.05,0.1,0.15,0.2,0.25)");
    bind("--theta", "theta", "Edge threshold for the dependence graph (default 0.15)");
    bind("--method", "partition_method", "Partition method: sector or community");
    bind("--target-blocks", "target_blocks",
         "Community method: stop at this many blocks (or 'none' for max modularity)");
    bind("--confidence", "confidence", "Risk confidence level (default 0.95)");
    bind("--measure", "risk_measure", "Risk measure: var or es (default var)");
    bind("--cap", "cap", "Per-asset weight cap (default 0.3)");
    bind("--target-return", "target_return",
         "Minimum portfolio return constraint (default 0.0115)");
    bind("--window-days", "window_days", "Backtest window length (default 10)");
    bind("--exact-cutoff", "exact_mis_cutoff",
         "Largest block solved exactly for independent sets (default 25)");
    bind("--aggregation", "return_aggregation",
         "Expected-return horizon: cumulative or mean_daily");
    bind("--execution", "execution", "Kernel execution: serial or parallel");

    auto* run_cmd = app.add_subcommand("run", "Run every stage and write all artifacts");
    auto* returns_cmd = app.add_subcommand("returns", "Prices -> returns.csv");
    auto* edm_cmd = app.add_subcommand("edm", "returns.csv -> edm_matrix.csv");
    auto* graph_cmd = app.add_subcommand("graph", "edm_matrix.csv -> edges.csv");
    auto* stats_cmd =
        app.add_subcommand("stats", "edm_matrix.csv -> stats.json + ccdf.csv");
    auto* sweep_cmd = app.add_subcommand("sweep", "edm_matrix.csv -> sweep.csv");
    auto* partition_cmd = app.add_subcommand(
        "partition", "edm_matrix.csv -> communities.csv (+ dendrogram.csv)");
    auto* mis_cmd =
        app.add_subcommand("mis", "communities.csv + edm_matrix.csv -> mis.csv");
    auto* risk_cmd = app.add_subcommand("risk", "returns.csv -> risk.csv");
    auto* optimize_cmd = app.add_subcommand(
        "optimize", "mis.csv + risk.csv + returns.csv -> portfolio.json");
    auto* backtest_cmd = app.add_subcommand(
        "backtest", "portfolio.json + returns.csv + market -> backtest.csv");
    for (auto* cmd : app.get_subcommands({})) cmd->fallthrough();

    int block = -1;
    auto* block_opt = optimize_cmd->add_option(
        "--block", block, "Optimize one block's set instead of the union of all blocks");

    CLI11_PARSE(app, argc, argv);

    try {
        edmnet::PipelineConfig cfg;
        if (!config_path.empty()) {
            auto in = edmnet::io::open_input(config_path);
            cfg = edmnet::parse_config(in);
        }
        for (const auto& b : bindings)
            if (b.option->count() > 0) edmnet::apply_config_key(cfg, b.key, b.value);
        edmnet::validate_config(cfg);

        if (app.got_subcommand(run_cmd)) {
            edmnet::run_pipeline(cfg);
        } else if (app.got_subcommand(returns_cmd)) {
            edmnet::stage_returns(cfg);
        } else if (app.got_subcommand(edm_cmd)) {
            edmnet::stage_edm(cfg);
        } else if (app.got_subcommand(graph_cmd)) {
            edmnet::stage_graph(cfg);
        } else if (app.got_subcommand(stats_cmd)) {
            edmnet::stage_stats(cfg);
        } else if (app.got_subcommand(sweep_cmd)) {
            edmnet::stage_sweep(cfg);
        } else if (app.got_subcommand(partition_cmd)) {
            edmnet::stage_partition(cfg);
        } else if (app.got_subcommand(mis_cmd)) {
            edmnet::stage_mis(cfg);
        } else if (app.got_subcommand(optimize_cmd)) {
            std::optional<int> only;
            if (block_opt->count() > 0) only = block;
            edmnet::stage_optimize(cfg, only);
        } else if (app.got_subcommand(risk_cmd)) {
            edmnet::stage_risk(cfg);
        } else if (app.got_subcommand(backtest_cmd)) {
            edmnet::stage_backtest(cfg);
        }
        return 0;
    } catch (const edmnet::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const edmnet::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
