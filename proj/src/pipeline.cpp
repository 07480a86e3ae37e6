#include "edmnet/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "json.hpp"

#include "edmnet/allocate.hpp"
#include "edmnet/backtest.hpp"
#include "edmnet/edm.hpp"
#include "edmnet/errors.hpp"
#include "edmnet/independent_set.hpp"
#include "edmnet/io.hpp"
#include "edmnet/market_data.hpp"
#include "edmnet/network.hpp"
#include "edmnet/partition.hpp"
#include "edmnet/risk.hpp"

namespace edmnet {

namespace {

namespace fs = std::filesystem;

fs::path out_path(const PipelineConfig& cfg, const char* name) {
    return fs::path(cfg.output_dir) / name;
}

void ensure_output_dir(const PipelineConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + cfg.output_dir + ": " +
                      ec.message());
}

void save(const PipelineConfig& cfg, const char* name, const std::string& contents) {
    ensure_output_dir(cfg);
    io::write_file(out_path(cfg, name), contents);
}

ReturnMatrix load_returns_artifact(const PipelineConfig& cfg) {
    auto in = io::open_input(out_path(cfg, artifact::kReturns));
    return io::read_returns_csv(in);
}

EdmMatrix load_edm_artifact(const PipelineConfig& cfg) {
    auto in = io::open_input(out_path(cfg, artifact::kEdmMatrix));
    return io::read_edm_csv(in);
}

}  // namespace

void stage_returns(const PipelineConfig& cfg) {
    if (cfg.price_csv.empty()) throw ValidationError("price_csv is not set");
    auto in = io::open_input(cfg.price_csv);
    const PriceTable prices = load_prices(in);
    const ReturnMatrix returns = log_returns(prices);
    std::ostringstream out;
    io::write_returns_csv(out, returns);
    save(cfg, artifact::kReturns, out.str());
}

void stage_edm(const PipelineConfig& cfg) {
    const ReturnMatrix returns = load_returns_artifact(cfg);
    const EdmMatrix matrix = edm_matrix(returns, cfg.tail_fraction, cfg.execution);
    std::ostringstream out;
    io::write_edm_csv(out, matrix);
    save(cfg, artifact::kEdmMatrix, out.str());
}

void stage_graph(const PipelineConfig& cfg) {
    const EdmMatrix matrix = load_edm_artifact(cfg);
    const DependenceGraph g = build_graph(matrix, cfg.theta);
    std::ostringstream out;
    io::write_edges_csv(out, g, matrix);
    save(cfg, artifact::kEdges, out.str());
}

void stage_stats(const PipelineConfig& cfg) {
    const EdmMatrix matrix = load_edm_artifact(cfg);
    const DependenceGraph g = build_graph(matrix, cfg.theta);
    const NetworkStats stats = network_stats(g, cfg.execution);
    const DegreeCcdf ccdf = degree_ccdf(g);
    std::optional<PowerLawFit> fit;
    try {
        fit = fit_power_law(ccdf);
    } catch (const ValidationError&) {
        fit.reset();  // too few tail degrees; reported as null
    }
    save(cfg, artifact::kStats, io::stats_json(stats, fit, cfg.theta));
    std::ostringstream out;
    io::write_ccdf_csv(out, ccdf);
    save(cfg, artifact::kCcdf, out.str());
}

void stage_sweep(const PipelineConfig& cfg) {
    const EdmMatrix matrix = load_edm_artifact(cfg);
    const auto rows = threshold_sweep(matrix, cfg.thresholds, cfg.execution);
    std::ostringstream out;
    io::write_sweep_csv(out, rows);
    save(cfg, artifact::kSweep, out.str());
}

void stage_partition(const PipelineConfig& cfg) {
    const EdmMatrix matrix = load_edm_artifact(cfg);
    const DependenceGraph g = build_graph(matrix, cfg.theta);
    std::ostringstream out;
    if (cfg.method == PartitionMethod::sector) {
        if (cfg.sector_csv.empty()) throw ValidationError("sector_csv is not set");
        auto in = io::open_input(cfg.sector_csv);
        const SectorTable sectors = load_sectors(in, g.tickers);
        const Partition p = sector_partition(g, sectors);
        io::write_communities_csv(out, g, p);
        save(cfg, artifact::kCommunities, out.str());
    } else {
        const auto [p, dendro] = girvan_newman(g, cfg.target_blocks, cfg.execution);
        io::write_communities_csv(out, g, p);
        save(cfg, artifact::kCommunities, out.str());
        std::ostringstream dout;
        io::write_dendrogram_csv(dout, dendro, g);
        save(cfg, artifact::kDendrogram, dout.str());
    }
}

void stage_mis(const PipelineConfig& cfg) {
    const EdmMatrix matrix = load_edm_artifact(cfg);
    const DependenceGraph g = build_graph(matrix, cfg.theta);
    auto in = io::open_input(out_path(cfg, artifact::kCommunities));
    const Partition p = io::read_communities_csv(in, g);
    const auto sets = mis_per_block(g, p, cfg.exact_mis_cutoff);
    std::ostringstream out;
    io::write_mis_csv(out, sets);
    save(cfg, artifact::kMis, out.str());
}

void stage_risk(const PipelineConfig& cfg) {
    const ReturnMatrix returns = load_returns_artifact(cfg);
    io::RiskTable table;
    table.tickers = returns.tickers;
    table.var = risk_vector(returns, RiskMeasure::var, cfg.confidence);
    table.es = risk_vector(returns, RiskMeasure::es, cfg.confidence);
    table.confidence = cfg.confidence;
    std::ostringstream out;
    io::write_risk_csv(out, table);
    save(cfg, artifact::kRisk, out.str());
}

void stage_optimize(const PipelineConfig& cfg, std::optional<int> block) {
    const ReturnMatrix returns = load_returns_artifact(cfg);
    auto mis_in = io::open_input(out_path(cfg, artifact::kMis));
    const auto sets = io::read_mis_csv(mis_in);
    auto risk_in = io::open_input(out_path(cfg, artifact::kRisk));
    const io::RiskTable risk_table = io::read_risk_csv(risk_in);

    std::vector<std::string> members;
    if (block) {
        const auto it = std::find_if(sets.begin(), sets.end(), [&](const auto& s) {
            return s.source_block == *block;
        });
        if (it == sets.end())
            throw ValidationError("independent-set file has no block " +
                                  std::to_string(*block));
        members = it->tickers;
    } else {
        std::set<std::string> all;
        for (const auto& s : sets) all.insert(s.tickers.begin(), s.tickers.end());
        members.assign(all.begin(), all.end());
    }

    std::vector<double> risks;
    risks.reserve(members.size());
    for (const auto& t : members) risks.push_back(risk_table.risk(t, cfg.measure));
    const std::vector<double> rets =
        expected_returns(select_columns(returns, members), cfg.aggregation);

    const Portfolio p =
        optimize_with_inputs(members, risks, rets, cfg.measure, cfg.confidence, cfg.cap,
                             cfg.target_return, cfg.aggregation);
    save(cfg, artifact::kPortfolio, io::portfolio_json(p));
}

void stage_backtest(const PipelineConfig& cfg) {
    auto pin = io::open_input(out_path(cfg, artifact::kPortfolio));
    const Portfolio portfolio = io::read_portfolio_json(pin);
    const ReturnMatrix returns = load_returns_artifact(cfg);

    if (cfg.market_csv.empty()) throw ValidationError("market_csv is not set");
    auto min = io::open_input(cfg.market_csv);
    const auto closes = load_index_closes(min);
    const auto market = align_market(index_log_returns(closes), returns.dates);

    const auto windows = split_windows(returns.dates, cfg.window_days);
    const BacktestReport report = compare({{"portfolio", portfolio}}, market, returns,
                                          windows, cfg.measure, cfg.confidence);
    std::ostringstream out;
    io::write_backtest_csv(out, report);
    save(cfg, artifact::kBacktest, out.str());
}

namespace {

template <typename Fn>
void run_stage(const char* name, Fn&& fn) {
    const auto tag = [&](const std::string& message) {
        return std::string(name) + " stage: " + message;
    };
    try {
        fn();
    } catch (const ParseError& e) {
        throw ParseError(tag(e.what()));
    } catch (const ValidationError& e) {
        throw ValidationError(tag(e.what()));
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(tag(e.what()));
    } catch (const IoError& e) {
        throw IoError(tag(e.what()));
    }
}

}  // namespace

void run_pipeline(const PipelineConfig& cfg) {
    validate_config(cfg);
    ensure_output_dir(cfg);

    run_stage("returns", [&] { stage_returns(cfg); });
    run_stage("edm", [&] { stage_edm(cfg); });
    run_stage("graph", [&] { stage_graph(cfg); });
    run_stage("stats", [&] { stage_stats(cfg); });
    run_stage("sweep", [&] { stage_sweep(cfg); });
    run_stage("partition", [&] { stage_partition(cfg); });
    run_stage("mis", [&] { stage_mis(cfg); });
    run_stage("risk", [&] { stage_risk(cfg); });
    run_stage("optimize", [&] { stage_optimize(cfg); });
    run_stage("backtest", [&] { stage_backtest(cfg); });

    nlohmann::json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = nlohmann::json::parse(config_json(cfg));
    auto artifacts = nlohmann::json::array();
    for (const char* name :
         {artifact::kReturns, artifact::kEdmMatrix, artifact::kEdges, artifact::kStats,
          artifact::kCcdf, artifact::kSweep, artifact::kCommunities,
          artifact::kDendrogram, artifact::kMis, artifact::kRisk, artifact::kPortfolio,
          artifact::kBacktest}) {
        if (fs::exists(out_path(cfg, name))) artifacts.push_back(name);
    }
    manifest["artifacts"] = artifacts;
    save(cfg, artifact::kManifest, manifest.dump(2) + "\n");
}

}  // namespace edmnet
