#include "edmnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

#include "edmnet/errors.hpp"

namespace edmnet {

bool DependenceGraph::has_edge(int a, int b) const {
    if (a == b) return false;
    const auto& na = adj[a];
    return std::any_of(na.begin(), na.end(),
                       [b](const std::pair<int, int>& e) { return e.first == b; });
}

int DependenceGraph::vertex_of(const std::string& ticker) const {
    auto it = std::lower_bound(tickers.begin(), tickers.end(), ticker);
    if (it == tickers.end() || *it != ticker)
        throw ValidationError("unknown ticker: " + ticker);
    return static_cast<int>(it - tickers.begin());
}

void DependenceGraph::rebuild_adjacency() {
    std::sort(edges.begin(), edges.end());
    adj.assign(tickers.size(), {});
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto [a, b] = edges[e];
        adj[a].push_back({b, e});
        adj[b].push_back({a, e});
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
}

DependenceGraph build_graph(const EdmMatrix& m, double threshold,
                            const SectorTable* sectors) {
    const int n = static_cast<int>(m.size());
    DependenceGraph g;
    g.tickers = m.tickers;
    g.threshold = threshold;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (m.values[i][j] >= threshold) g.edges.push_back({i, j});
    g.rebuild_adjacency();
    if (sectors) {
        g.sectors.reserve(g.tickers.size());
        for (const auto& t : g.tickers) g.sectors.push_back(sectors->sector(t));
    }
    return g;
}

namespace {

// Single-source BFS; returns (sum of distances to vertices > src,
// eccentricity over reached vertices, count of reached pairs with
// larger index). Counting only larger indices makes the per-source sums
// combine to one count per unordered pair.
struct BfsAccum {
    long long dist_sum = 0;
    long long pair_count = 0;
    int eccentricity = 0;
};

BfsAccum bfs_from(const DependenceGraph& g, int src, std::vector<int>& dist) {
    dist.assign(g.tickers.size(), -1);
    dist[src] = 0;
    std::deque<int> queue{src};
    BfsAccum acc;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        acc.eccentricity = std::max(acc.eccentricity, dist[v]);
        if (v > src) {
            acc.dist_sum += dist[v];
            ++acc.pair_count;
        }
        for (const auto& [w, eid] : g.adj[v]) {
            (void)eid;
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return acc;
}

}  // namespace

NetworkStats network_stats(const DependenceGraph& g, Execution exec) {
    const int n = g.n_vertices();
    if (n < 1) throw std::invalid_argument("network_stats: empty graph");

    NetworkStats s;
    s.n_vertices = n;
    s.n_edges = g.n_edges();
    s.degrees.resize(n);
    s.clustering.resize(n);
    for (int v = 0; v < n; ++v) {
        s.degrees[v] = g.degree(v);
        if (s.degrees[v] == 0) ++s.isolated_count;
    }
    s.average_degree = n > 0 ? 2.0 * s.n_edges / n : 0.0;
    s.density = n > 1 ? s.n_edges / (0.5 * n * (n - 1)) : 0.0;

    // Clustering: fraction of neighbor pairs that are themselves adjacent.
    auto clustering_of = [&](int v) {
        const int k = g.degree(v);
        if (k < 2) return 0.0;
        long long links = 0;
        for (std::size_t a = 0; a < g.adj[v].size(); ++a)
            for (std::size_t b = a + 1; b < g.adj[v].size(); ++b)
                if (g.has_edge(g.adj[v][a].first, g.adj[v][b].first)) ++links;
        return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * (k - 1));
    };

    std::vector<BfsAccum> per_source(n);
    if (exec == Execution::parallel) {
#pragma omp parallel
        {
            std::vector<int> dist;
#pragma omp for schedule(dynamic, 8)
            for (int v = 0; v < n; ++v) {
                s.clustering[v] = clustering_of(v);
                per_source[v] = bfs_from(g, v, dist);
            }
        }
    } else {
        std::vector<int> dist;
        for (int v = 0; v < n; ++v) {
            s.clustering[v] = clustering_of(v);
            per_source[v] = bfs_from(g, v, dist);
        }
    }

    long long dist_sum = 0;
    long long pair_count = 0;
    for (int v = 0; v < n; ++v) {
        dist_sum += per_source[v].dist_sum;
        pair_count += per_source[v].pair_count;
        s.diameter = std::max(s.diameter, per_source[v].eccentricity);
        s.average_clustering += s.clustering[v];
    }
    s.average_clustering /= n;
    s.average_path_length =
        pair_count > 0 ? static_cast<double>(dist_sum) / static_cast<double>(pair_count) : 0.0;
    return s;
}

DegreeCcdf degree_ccdf(const DependenceGraph& g) {
    const int n = g.n_vertices();
    if (n < 1) throw std::invalid_argument("degree_ccdf: empty graph");
    std::map<int, int> counts;
    for (int v = 0; v < n; ++v) ++counts[g.degree(v)];

    DegreeCcdf c;
    c.n_vertices = static_cast<std::size_t>(n);
    int at_or_above = n;
    for (const auto& [degree, count] : counts) {
        c.points.push_back({degree, static_cast<double>(at_or_above) / n});
        at_or_above -= count;
    }
    return c;
}

PowerLawFit fit_power_law(const DegreeCcdf& c, std::optional<int> xmin_opt) {
    // Recover per-degree vertex counts from the CCDF steps.
    const auto n = static_cast<double>(c.n_vertices);
    std::vector<std::pair<int, long>> counts;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const double next = i + 1 < c.points.size() ? c.points[i + 1].second : 0.0;
        const long k = std::lround((c.points[i].second - next) * n);
        if (k > 0) counts.push_back({c.points[i].first, k});
    }

    int xmin = 0;
    if (xmin_opt) {
        xmin = *xmin_opt;
        if (xmin < 1) throw std::invalid_argument("fit_power_law: xmin must be >= 1");
    } else {
        for (const auto& [d, k] : counts)
            if (d >= 1) {
                xmin = d;
                break;
            }
        if (xmin == 0) throw ValidationError("fit_power_law: no positive degrees");
    }

    std::size_t n_tail = 0;
    std::size_t distinct = 0;
    double log_sum = 0.0;
    for (const auto& [d, k] : counts) {
        if (d < xmin) continue;
        ++distinct;
        n_tail += static_cast<std::size_t>(k);
        log_sum += k * std::log(static_cast<double>(d) / xmin);
    }
    if (distinct < 2)
        throw ValidationError("fit_power_law: need at least 2 distinct degrees >= xmin");

    PowerLawFit fit;
    fit.alpha_hat = 1.0 + static_cast<double>(n_tail) / log_sum;
    fit.xmin = xmin;
    fit.n_tail = n_tail;
    return fit;
}

std::vector<SweepRow> threshold_sweep(const EdmMatrix& m,
                                      const std::vector<double>& thresholds,
                                      Execution exec) {
    if (thresholds.empty())
        throw std::invalid_argument("threshold_sweep: empty threshold list");
    std::vector<SweepRow> rows;
    rows.reserve(thresholds.size());
    for (const double theta : thresholds)
        rows.push_back({theta, network_stats(build_graph(m, theta), exec)});
    return rows;
}

}  // namespace edmnet
