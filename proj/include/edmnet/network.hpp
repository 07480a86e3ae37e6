#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edmnet/edm.hpp"
#include "edmnet/execution.hpp"

namespace edmnet {

// Undirected simple graph over tickers. Vertices keep their position in
// the lexicographically sorted ticker list; edges are stored as (i,j)
// pairs with i < j, sorted, and mirrored into adjacency lists that carry
// the edge id (used by the betweenness kernel).
struct DependenceGraph {
    std::vector<std::string> tickers;
    std::vector<std::string> sectors;  // empty, or one label per vertex
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge id)
    double threshold = 0.0;

    int n_vertices() const { return static_cast<int>(tickers.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int a, int b) const;
    int vertex_of(const std::string& ticker) const;  // throws if unknown

    // Rebuilds adjacency from `edges`; call after editing the edge list.
    void rebuild_adjacency();
};

struct NetworkStats {
    int n_vertices = 0;
    int n_edges = 0;
    int isolated_count = 0;
    double average_degree = 0.0;
    int diameter = 0;                  // hop count over connected pairs
    double density = 0.0;
    double average_clustering = 0.0;
    double average_path_length = 0.0;  // hop count over connected pairs
    std::vector<int> degrees;
    std::vector<double> clustering;
};

// Empirical P(degree >= d) at each distinct degree, ascending.
struct DegreeCcdf {
    std::vector<std::pair<int, double>> points;
    std::size_t n_vertices = 0;
};

struct PowerLawFit {
    double alpha_hat = 0.0;
    int xmin = 1;
    std::size_t n_tail = 0;
};

struct SweepRow {
    double threshold = 0.0;
    NetworkStats stats;
};

// Edge {i,j} present iff values[i][j] >= threshold; isolated vertices are
// kept. Sector labels are attached when a table is given.
DependenceGraph build_graph(const EdmMatrix& m, double threshold,
                            const SectorTable* sectors = nullptr);

// Degrees, density, clustering, and BFS-based diameter / average path
// length over connected distinct pairs. Vertices of degree < 2 have
// clustering 0; a graph with no connected pair has diameter and average
// path length 0.
NetworkStats network_stats(const DependenceGraph& g,
                           Execution exec = Execution::parallel);

DegreeCcdf degree_ccdf(const DependenceGraph& g);

// Discrete maximum-likelihood fit of a power-law tail exponent:
// alpha = 1 + n_tail / sum(log(d / xmin)) over degrees d >= xmin.
// xmin defaults to the smallest positive degree. Throws ValidationError
// when fewer than two distinct positive degrees reach the tail.
PowerLawFit fit_power_law(const DegreeCcdf& c, std::optional<int> xmin = std::nullopt);

std::vector<SweepRow> threshold_sweep(const EdmMatrix& m,
                                      const std::vector<double>& thresholds,
                                      Execution exec = Execution::parallel);

}  // namespace edmnet
