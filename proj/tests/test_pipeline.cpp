#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "edmnet/config.hpp"
#include "edmnet/errors.hpp"
#include "edmnet/io.hpp"
#include "edmnet/pipeline.hpp"
#include "support.hpp"

using namespace edmnet;
namespace fs = std::filesystem;

namespace {

// Writes a panel's three input files into `dir` and returns a config
// pointing at them with a guaranteed-feasible allocation problem.
PipelineConfig panel_config(const testsupport::SyntheticPanel& panel,
                            const testsupport::TempDir& dir,
                            const std::string& out_name) {
    io::write_file(dir.file("prices.csv"), panel.prices_csv());
    io::write_file(dir.file("sectors.csv"), panel.sectors_csv());
    io::write_file(dir.file("market.csv"), panel.market_csv());
    PipelineConfig cfg;
    cfg.price_csv = dir.file("prices.csv").string();
    cfg.sector_csv = dir.file("sectors.csv").string();
    cfg.market_csv = dir.file("market.csv").string();
    cfg.cap = 1.0;           // any nonempty candidate set stays feasible
    cfg.target_return = -5.0;
    cfg.output_dir = dir.file(out_name).string();
    return cfg;
}

std::string slurp(const fs::path& dir, const char* name) {
    return io::read_file(dir / name);
}

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(EDMNET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("an empty config stream yields the documented defaults") {
    std::istringstream in("");
    const PipelineConfig cfg = parse_config(in);
    CHECK(cfg.price_csv.empty());
    CHECK(cfg.tail_fraction == 0.2);
    CHECK(cfg.thresholds == std::vector<double>{0.05, 0.10, 0.15, 0.20, 0.25});
    CHECK(cfg.theta == 0.15);
    CHECK(cfg.method == PartitionMethod::sector);
    CHECK_FALSE(cfg.target_blocks.has_value());
    CHECK(cfg.confidence == 0.95);
    CHECK(cfg.measure == RiskMeasure::var);
    CHECK(cfg.cap == 0.3);
    CHECK(cfg.target_return == 0.0115);
    CHECK(cfg.window_days == 10);
    CHECK(cfg.exact_mis_cutoff == 25);
    CHECK(cfg.aggregation == ReturnAggregation::cumulative);
    CHECK(cfg.execution == Execution::parallel);
    CHECK(cfg.output_dir == "out");
    CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("a full config file sets every knob; comments are skipped") {
    std::istringstream in(
        "# pipeline settings\n"
        "price_csv = data/p.csv\n"
        "\n"
        "sector_csv = data/s.csv\n"
        "market_csv = data/m.csv\n"
        "tail_fraction = 0.1\n"
        "thresholds = 0.1, 0.2 ,0.3\n"
        "theta = 0.2\n"
        "partition_method = community\n"
        "target_blocks = 21\n"
        "confidence = 0.99\n"
        "risk_measure = es\n"
        "cap = 0.25\n"
        "target_return = 0.02\n"
        "window_days = 15\n"
        "exact_mis_cutoff = 12\n"
        "return_aggregation = mean_daily\n"
        "execution = serial\n"
        "output_dir = artifacts\n");
    const PipelineConfig cfg = parse_config(in);
    CHECK(cfg.price_csv == "data/p.csv");
    CHECK(cfg.sector_csv == "data/s.csv");
    CHECK(cfg.market_csv == "data/m.csv");
    CHECK(cfg.tail_fraction == 0.1);
    CHECK(cfg.thresholds == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(cfg.theta == 0.2);
    CHECK(cfg.method == PartitionMethod::girvan_newman);
    CHECK(cfg.target_blocks == 21);
    CHECK(cfg.confidence == 0.99);
    CHECK(cfg.measure == RiskMeasure::es);
    CHECK(cfg.cap == 0.25);
    CHECK(cfg.target_return == 0.02);
    CHECK(cfg.window_days == 15);
    CHECK(cfg.exact_mis_cutoff == 12);
    CHECK(cfg.aggregation == ReturnAggregation::mean_daily);
    CHECK(cfg.execution == Execution::serial);
    CHECK(cfg.output_dir == "artifacts");

    // `none` clears a previously set block target.
    PipelineConfig again = cfg;
    apply_config_key(again, "target_blocks", "none");
    CHECK_FALSE(again.target_blocks.has_value());
}

TEST_CASE("config parsing reports the offending line or key") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_config(in);
    };
    try {
        parse("price_csv = x\nbogus line\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse("= value\n"), ParseError);
    CHECK_THROWS_WITH_AS(parse("no_such_key = 1\n"),
                         doctest::Contains("no_such_key"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("theta = fast\n"), doctest::Contains("theta"),
                         ValidationError);
    CHECK_THROWS_AS(parse("window_days = 2.5\n"), ValidationError);
    CHECK_THROWS_AS(parse("thresholds = \n"), ValidationError);
    CHECK_THROWS_AS(parse("thresholds = 0.1,oops\n"), ValidationError);
    CHECK_THROWS_AS(parse("partition_method = louvain\n"), ValidationError);
    CHECK_THROWS_AS(parse("risk_measure = cvar\n"), ValidationError);
    CHECK_THROWS_AS(parse("return_aggregation = median\n"), ValidationError);
    CHECK_THROWS_AS(parse("execution = gpu\n"), ValidationError);
    CHECK_THROWS_AS(parse("target_blocks = few\n"), ValidationError);
}

TEST_CASE("validate_config rejects each out-of-range knob") {
    const PipelineConfig base;
    auto broken = [&](auto mutate) {
        PipelineConfig cfg = base;
        mutate(cfg);
        return cfg;
    };
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.tail_fraction = 0.0; })),
                    ValidationError);
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.tail_fraction = 1.5; })),
                    ValidationError);
    CHECK_THROWS_AS(
        validate_config(broken([](auto& c) { c.thresholds = {0.1, 1.0 / 0.0}; })),
        ValidationError);
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.theta = 0.0 / 0.0; })),
                    ValidationError);
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.target_blocks = 0; })),
                    ValidationError);
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.confidence = 1.0; })),
                    ValidationError);
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.cap = 0.0; })),
                    ValidationError);
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.cap = 1.5; })),
                    ValidationError);
    CHECK_NOTHROW(validate_config(broken([](auto& c) { c.cap = 1.0; })));
    CHECK_THROWS_AS(
        validate_config(broken([](auto& c) { c.target_return = 0.0 / 0.0; })),
        ValidationError);
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.window_days = 0; })),
                    ValidationError);
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.exact_mis_cutoff = 0; })),
                    ValidationError);
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.exact_mis_cutoff = 31; })),
                    ValidationError);
    CHECK_THROWS_AS(validate_config(broken([](auto& c) { c.output_dir.clear(); })),
                    ValidationError);
}

TEST_CASE("config_json echoes the effective configuration") {
    PipelineConfig cfg;
    cfg.price_csv = "p.csv";
    cfg.target_blocks = 21;
    cfg.execution = Execution::serial;
    const auto j = nlohmann::json::parse(config_json(cfg));
    CHECK(j.at("price_csv") == "p.csv");
    CHECK(j.at("tail_fraction").get<double>() == 0.2);
    CHECK(j.at("thresholds").get<std::vector<double>>() == cfg.thresholds);
    CHECK(j.at("partition_method") == "sector");
    CHECK(j.at("target_blocks").get<int>() == 21);
    CHECK(j.at("risk_measure") == "var");
    CHECK(j.at("return_aggregation") == "cumulative");
    CHECK(j.at("execution") == "serial");

    cfg.target_blocks.reset();
    CHECK(nlohmann::json::parse(config_json(cfg)).at("target_blocks").is_null());
}

TEST_CASE("running the stages one by one reproduces run_pipeline byte for byte") {
    const auto panel = testsupport::synthetic_panel(10, 50, 3, 42);
    testsupport::TempDir dir("stages");
    PipelineConfig full = panel_config(panel, dir, "full");
    run_pipeline(full);

    PipelineConfig steps = full;
    steps.output_dir = dir.file("steps").string();
    stage_returns(steps);
    stage_edm(steps);
    stage_graph(steps);
    stage_stats(steps);
    stage_sweep(steps);
    stage_partition(steps);
    stage_mis(steps);
    stage_risk(steps);
    stage_optimize(steps);
    stage_backtest(steps);

    for (const char* name :
         {artifact::kReturns, artifact::kEdmMatrix, artifact::kEdges, artifact::kStats,
          artifact::kCcdf, artifact::kSweep, artifact::kCommunities, artifact::kMis,
          artifact::kRisk, artifact::kPortfolio, artifact::kBacktest}) {
        CAPTURE(name);
        CHECK(slurp(full.output_dir, name) == slurp(steps.output_dir, name));
    }
    // The sector method writes no dendrogram, and only run_pipeline writes
    // the manifest.
    CHECK_FALSE(fs::exists(fs::path(full.output_dir) / artifact::kDendrogram));
    CHECK(fs::exists(fs::path(full.output_dir) / artifact::kManifest));
    CHECK_FALSE(fs::exists(fs::path(steps.output_dir) / artifact::kManifest));

    SUBCASE("a repeated run leaves every artifact byte-identical") {
        std::vector<std::string> before;
        for (const auto& entry : fs::directory_iterator(full.output_dir))
            before.push_back(io::read_file(entry.path()));
        run_pipeline(full);
        std::size_t i = 0;
        for (const auto& entry : fs::directory_iterator(full.output_dir)) {
            CAPTURE(entry.path().string());
            CHECK(io::read_file(entry.path()) == before[i++]);
        }
    }

    SUBCASE("the manifest records version, config echo, and artifacts") {
        const auto manifest =
            nlohmann::json::parse(slurp(full.output_dir, artifact::kManifest));
        CHECK(manifest.at("version") == kVersion);
        CHECK(manifest.at("config") == nlohmann::json::parse(config_json(full)));
        const auto names = manifest.at("artifacts").get<std::vector<std::string>>();
        CHECK(names == std::vector<std::string>{
                           artifact::kReturns, artifact::kEdmMatrix, artifact::kEdges,
                           artifact::kStats, artifact::kCcdf, artifact::kSweep,
                           artifact::kCommunities, artifact::kMis, artifact::kRisk,
                           artifact::kPortfolio, artifact::kBacktest});
    }
}

TEST_CASE("the community method adds a dendrogram artifact") {
    const auto panel = testsupport::synthetic_panel(8, 40, 2, 77);
    testsupport::TempDir dir("gn-pipeline");
    PipelineConfig cfg = panel_config(panel, dir, "out");
    cfg.method = PartitionMethod::girvan_newman;
    cfg.theta = 0.05;  // keep some edges so the dendrogram is non-trivial
    run_pipeline(cfg);
    CHECK(fs::exists(fs::path(cfg.output_dir) / artifact::kDendrogram));
    const auto manifest =
        nlohmann::json::parse(slurp(cfg.output_dir, artifact::kManifest));
    const auto names = manifest.at("artifacts").get<std::vector<std::string>>();
    CHECK(std::find(names.begin(), names.end(), std::string(artifact::kDendrogram)) !=
          names.end());

    // The partition artifact reads back against the graph it was built on.
    auto edm_in = io::open_input(fs::path(cfg.output_dir) / artifact::kEdmMatrix);
    const EdmMatrix matrix = io::read_edm_csv(edm_in);
    const DependenceGraph g = build_graph(matrix, cfg.theta);
    auto comm_in = io::open_input(fs::path(cfg.output_dir) / artifact::kCommunities);
    const Partition p = io::read_communities_csv(comm_in, g);
    CHECK(p.method == PartitionMethod::girvan_newman);
}

TEST_CASE("pipeline errors name the failing stage") {
    const auto panel = testsupport::synthetic_panel(6, 30, 2, 5);
    testsupport::TempDir dir("stage-errors");

    SUBCASE("missing price path fails in the returns stage") {
        PipelineConfig cfg = panel_config(panel, dir, "out");
        cfg.price_csv.clear();
        CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("returns stage:"),
                             ValidationError);
    }

    SUBCASE("unreadable sector file fails in the partition stage") {
        PipelineConfig cfg = panel_config(panel, dir, "out");
        cfg.sector_csv = dir.file("nope.csv").string();
        CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("partition stage:"),
                             IoError);
    }

    SUBCASE("an unattainable return target fails in the optimize stage") {
        PipelineConfig cfg = panel_config(panel, dir, "out");
        cfg.target_return = 10.0;
        CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("optimize stage:"),
                             InfeasibleError);
    }
}

TEST_CASE("stage_optimize can restrict the LP to a single block") {
    const auto panel = testsupport::synthetic_panel(9, 40, 3, 11);
    testsupport::TempDir dir("block-opt");
    PipelineConfig cfg = panel_config(panel, dir, "out");
    run_pipeline(cfg);

    auto mis_in = io::open_input(fs::path(cfg.output_dir) / artifact::kMis);
    const auto sets = io::read_mis_csv(mis_in);
    REQUIRE(!sets.empty());

    stage_optimize(cfg, sets.front().source_block);
    auto pin = io::open_input(fs::path(cfg.output_dir) / artifact::kPortfolio);
    const Portfolio p = io::read_portfolio_json(pin);
    CHECK(p.tickers == sets.front().tickers);

    CHECK_THROWS_WITH_AS(stage_optimize(cfg, 99), doctest::Contains("no block 99"),
                         ValidationError);
}

TEST_CASE("command-line driver maps errors onto exit codes") {
    const auto panel = testsupport::synthetic_panel(8, 40, 2, 303);
    testsupport::TempDir dir("cli");
    io::write_file(dir.file("prices.csv"), panel.prices_csv());
    io::write_file(dir.file("sectors.csv"), panel.sectors_csv());
    io::write_file(dir.file("market.csv"), panel.market_csv());
    std::ostringstream cfg;
    cfg << "price_csv = " << dir.file("prices.csv").string() << "\n"
        << "sector_csv = " << dir.file("sectors.csv").string() << "\n"
        << "market_csv = " << dir.file("market.csv").string() << "\n"
        << "cap = 1.0\n"
        << "target_return = -5\n"
        << "output_dir = " << dir.file("out").string() << "\n";
    io::write_file(dir.file("run.cfg"), cfg.str());
    const std::string base = "-c " + dir.file("run.cfg").string();

    CHECK(run_cli("--version") == 0);
    CHECK(run_cli(base + " run") == 0);
    CHECK(fs::exists(dir.file("out") / artifact::kManifest));

    // Single stages rerun against the existing artifact directory.
    CHECK(run_cli(base + " risk") == 0);
    CHECK(run_cli(base + " optimize --block 0") == 0);

    CHECK(run_cli("") != 0);                      // subcommand is required
    CHECK(run_cli(base + " run --no-such") != 0); // unknown flag
    CHECK(run_cli(base + " --tail-fraction 0 run") == 1);
    CHECK(run_cli(base + " --target-return 10 run") == 2);
    CHECK(run_cli("-c " + dir.file("missing.cfg").string() + " run") == 3);
    CHECK(run_cli(base + " --target-blocks 9000 --method community run") == 1);
}
