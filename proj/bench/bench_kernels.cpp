// Times the OpenMP kernels against their serial reference twins on a
// synthetic panel and verifies both produce identical output.
//
// Usage: bench_kernels [n_tickers] [n_days] [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "edmnet/edm.hpp"
#include "edmnet/market_data.hpp"
#include "edmnet/network.hpp"
#include "edmnet/partition.hpp"
#include "support.hpp"

using namespace edmnet;

namespace {

template <typename Fn>
double best_of(int reps, Fn&& fn) {
    double best = 1e100;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (dt < best) best = dt;
    }
    return best;
}

void report(const char* kernel, const std::string& size, double serial,
            double parallel, bool match) {
    std::printf("%-18s %-14s %10.4f s %10.4f s %8.2fx   %s\n", kernel, size.c_str(),
                serial, parallel, serial / parallel, match ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    const int n_tickers = argc > 1 ? std::atoi(argv[1]) : 120;
    const int n_days = argc > 2 ? std::atoi(argv[2]) : 400;
    const int reps = argc > 3 ? std::atoi(argv[3]) : 3;
    if (n_tickers < 2 || n_days < 3 || reps < 1) {
        std::fprintf(stderr, "usage: bench_kernels [n_tickers>=2] [n_days>=3] [reps>=1]\n");
        return 64;
    }

    const auto panel = testsupport::synthetic_panel(n_tickers, n_days, 8, 20240915);
    PriceTable prices;
    prices.tickers = panel.tickers;
    prices.dates = panel.dates;
    prices.prices = panel.prices;
    const ReturnMatrix returns = log_returns(prices);
    const std::string panel_size =
        std::to_string(n_tickers) + " x " + std::to_string(n_days);

    std::printf("%-18s %-14s %12s %12s %9s   %s\n", "kernel", "size", "serial",
                "parallel", "speedup", "match");

    EdmMatrix serial_matrix, parallel_matrix;
    const double edm_serial = best_of(
        reps, [&] { serial_matrix = edm_matrix(returns, 0.2, Execution::serial); });
    const double edm_parallel = best_of(
        reps, [&] { parallel_matrix = edm_matrix(returns, 0.2, Execution::parallel); });
    report("edm_matrix", panel_size, edm_serial, edm_parallel,
           serial_matrix.values == parallel_matrix.values);

    // A threshold in the panel's bulk so the graph is neither empty nor
    // complete; kernels are exercised on real path structure either way.
    const DependenceGraph g = build_graph(serial_matrix, 0.05);
    const std::string graph_size = std::to_string(g.n_vertices()) + "v/" +
                                   std::to_string(g.n_edges()) + "e";

    NetworkStats serial_stats, parallel_stats;
    const double stats_serial =
        best_of(reps, [&] { serial_stats = network_stats(g, Execution::serial); });
    const double stats_parallel =
        best_of(reps, [&] { parallel_stats = network_stats(g, Execution::parallel); });
    report("network_stats", graph_size, stats_serial, stats_parallel,
           serial_stats.degrees == parallel_stats.degrees &&
               serial_stats.average_path_length == parallel_stats.average_path_length &&
               serial_stats.clustering == parallel_stats.clustering &&
               serial_stats.diameter == parallel_stats.diameter);

    std::vector<double> serial_btw, parallel_btw;
    const double btw_serial =
        best_of(reps, [&] { serial_btw = edge_betweenness(g, Execution::serial); });
    const double btw_parallel =
        best_of(reps, [&] { parallel_btw = edge_betweenness(g, Execution::parallel); });
    report("edge_betweenness", graph_size, btw_serial, btw_parallel,
           serial_btw == parallel_btw);

    const std::vector<double> thresholds{0.02, 0.04, 0.06, 0.08, 0.10};
    std::vector<SweepRow> serial_sweep, parallel_sweep;
    const double sweep_serial = best_of(reps, [&] {
        serial_sweep = threshold_sweep(serial_matrix, thresholds, Execution::serial);
    });
    const double sweep_parallel = best_of(reps, [&] {
        parallel_sweep = threshold_sweep(serial_matrix, thresholds, Execution::parallel);
    });
    bool sweep_match = serial_sweep.size() == parallel_sweep.size();
    for (std::size_t i = 0; sweep_match && i < serial_sweep.size(); ++i)
        sweep_match = serial_sweep[i].stats.isolated_count ==
                          parallel_sweep[i].stats.isolated_count &&
                      serial_sweep[i].stats.average_path_length ==
                          parallel_sweep[i].stats.average_path_length;
    report("threshold_sweep", panel_size + "/5t", sweep_serial, sweep_parallel,
           sweep_match);

    return 0;
}
