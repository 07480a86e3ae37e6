#include "edmnet/partition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "edmnet/errors.hpp"

namespace edmnet {

namespace {

// Sorts members within blocks and orders blocks by decreasing size, then
// by smallest member id (vertex ids follow ticker order, so this is the
// lexicographically smallest ticker).
void canonicalize(Partition& p, int n_vertices) {
    for (auto& block : p.blocks) std::sort(block.begin(), block.end());
    std::sort(p.blocks.begin(), p.blocks.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a.front() < b.front();
              });
    p.block_of.assign(n_vertices, -1);
    for (int b = 0; b < p.n_blocks(); ++b)
        for (int v : p.blocks[b]) p.block_of[v] = b;
}

Partition components_masked(const DependenceGraph& g, const std::vector<char>& removed) {
    const int n = g.n_vertices();
    Partition p;
    std::vector<char> seen(n, 0);
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<int> block;
        std::deque<int> queue{start};
        seen[start] = 1;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            block.push_back(v);
            for (const auto& [w, eid] : g.adj[v]) {
                if (!removed.empty() && removed[eid]) continue;
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        p.blocks.push_back(std::move(block));
    }
    canonicalize(p, n);
    return p;
}

// Brandes accumulation from one source. Contributions are written into
// `contrib` (one slot per edge), only over edges not masked out.
void brandes_from(const DependenceGraph& g, const std::vector<char>& removed, int src,
                  std::vector<double>& contrib, std::vector<int>& dist,
                  std::vector<double>& sigma, std::vector<double>& delta,
                  std::vector<int>& order) {
    const int n = g.n_vertices();
    dist.assign(n, -1);
    sigma.assign(n, 0.0);
    delta.assign(n, 0.0);
    order.clear();

    dist[src] = 0;
    sigma[src] = 1.0;
    std::deque<int> queue{src};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (const auto& [w, eid] : g.adj[v]) {
            if (!removed.empty() && removed[eid]) continue;
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int w = *it;
        for (const auto& [v, eid] : g.adj[w]) {
            if (!removed.empty() && removed[eid]) continue;
            if (dist[v] != dist[w] - 1) continue;
            const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
            contrib[eid] += c;
            delta[v] += c;
        }
    }
}

std::vector<double> edge_betweenness_masked(const DependenceGraph& g,
                                            const std::vector<char>& removed,
                                            Execution exec) {
    const int n = g.n_vertices();
    const auto m = static_cast<std::size_t>(g.n_edges());
    std::vector<double> total(m, 0.0);
    if (m == 0 || n == 0) return total;

    if (exec == Execution::parallel) {
        // Per-source rows summed in fixed order keep the reduction
        // deterministic regardless of thread schedule.
        std::vector<std::vector<double>> rows(n);
#pragma omp parallel
        {
            std::vector<int> dist, order;
            std::vector<double> sigma, delta;
#pragma omp for schedule(dynamic, 4)
            for (int s = 0; s < n; ++s) {
                rows[s].assign(m, 0.0);
                brandes_from(g, removed, s, rows[s], dist, sigma, delta, order);
            }
        }
        for (int s = 0; s < n; ++s)
            for (std::size_t e = 0; e < m; ++e) total[e] += rows[s][e];
    } else {
        std::vector<int> dist, order;
        std::vector<double> sigma, delta;
        for (int s = 0; s < n; ++s)
            brandes_from(g, removed, s, total, dist, sigma, delta, order);
    }
    for (auto& v : total) v *= 0.5;  // ordered pairs -> unordered pairs
    return total;
}

}  // namespace

PartitionMethod parse_partition_method(const std::string& name) {
    if (name == "sector") return PartitionMethod::sector;
    if (name == "community") return PartitionMethod::girvan_newman;
    throw ValidationError("unknown partition method '" + name +
                          "' (expected sector or community)");
}

std::string to_string(PartitionMethod method) {
    return method == PartitionMethod::sector ? "sector" : "community";
}

std::vector<double> edge_betweenness(const DependenceGraph& g, Execution exec) {
    return edge_betweenness_masked(g, {}, exec);
}

Partition connected_components(const DependenceGraph& g) {
    return components_masked(g, {});
}

Partition sector_partition(const DependenceGraph& g, const SectorTable& sectors) {
    const int n = g.n_vertices();
    std::map<std::string, std::vector<int>> by_sector;
    for (int v = 0; v < n; ++v)
        by_sector[sectors.sector(g.tickers[v])].push_back(v);

    Partition p;
    p.method = PartitionMethod::sector;
    for (auto& [name, members] : by_sector) p.blocks.push_back(std::move(members));
    canonicalize(p, n);
    return p;
}

double modularity(const DependenceGraph& g, const Partition& p) {
    const int n = g.n_vertices();
    if (static_cast<int>(p.block_of.size()) != n)
        throw std::invalid_argument("modularity: partition does not cover the graph");
    const double m = g.n_edges();
    if (m == 0.0) return 0.0;

    std::vector<double> intra(p.blocks.size(), 0.0);
    std::vector<double> degree_sum(p.blocks.size(), 0.0);
    for (const auto& [a, b] : g.edges) {
        if (p.block_of[a] == p.block_of[b]) intra[p.block_of[a]] += 1.0;
        degree_sum[p.block_of[a]] += 1.0;
        degree_sum[p.block_of[b]] += 1.0;
    }
    double q = 0.0;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        const double frac = degree_sum[b] / (2.0 * m);
        q += intra[b] / m - frac * frac;
    }
    return q;
}

std::pair<Partition, Dendrogram> girvan_newman(const DependenceGraph& g,
                                               std::optional<int> target_blocks,
                                               Execution exec) {
    const int n = g.n_vertices();
    if (target_blocks && *target_blocks > n)
        throw std::invalid_argument("girvan_newman: target_blocks exceeds vertex count");

    std::vector<char> removed(g.edges.size(), 0);
    Dendrogram dendro;

    auto finalize = [&](Partition p, double q) {
        p.method = PartitionMethod::girvan_newman;
        p.modularity = q;
        return std::make_pair(std::move(p), std::move(dendro));
    };

    Partition current = components_masked(g, removed);
    double current_q = modularity(g, current);
    if (target_blocks && current.n_blocks() >= *target_blocks)
        return finalize(std::move(current), current_q);

    Partition best = current;
    double best_q = current_q;

    int remaining = g.n_edges();
    int step = 0;
    while (remaining > 0) {
        const auto betweenness = edge_betweenness_masked(g, removed, exec);
        int pick = -1;
        double pick_value = -1.0;
        // Edges are sorted lexicographically, so scanning ascending with a
        // strict comparison keeps the smallest edge among ties.
        for (std::size_t e = 0; e < removed.size(); ++e) {
            if (removed[e]) continue;
            if (betweenness[e] > pick_value) {
                pick_value = betweenness[e];
                pick = static_cast<int>(e);
            }
        }
        removed[pick] = 1;
        --remaining;
        ++step;

        current = components_masked(g, removed);
        current_q = modularity(g, current);
        dendro.events.push_back(
            {step, g.edges[pick], pick_value, current.n_blocks(), current_q});

        if (target_blocks && current.n_blocks() >= *target_blocks)
            return finalize(std::move(current), current_q);
        if (current_q > best_q) {
            best_q = current_q;
            best = current;
        }
    }
    return finalize(std::move(best), best_q);
}

DependenceGraph subgraph(const DependenceGraph& g, const std::vector<int>& vertex_ids) {
    std::vector<int> ids = vertex_ids;
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw ValidationError("subgraph: duplicate vertex id");
    for (int v : ids)
        if (v < 0 || v >= g.n_vertices())
            throw ValidationError("subgraph: unknown vertex id " + std::to_string(v));

    std::vector<int> new_id(g.tickers.size(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) new_id[ids[i]] = static_cast<int>(i);

    DependenceGraph sub;
    sub.threshold = g.threshold;
    sub.tickers.reserve(ids.size());
    for (int v : ids) sub.tickers.push_back(g.tickers[v]);
    if (!g.sectors.empty()) {
        sub.sectors.reserve(ids.size());
        for (int v : ids) sub.sectors.push_back(g.sectors[v]);
    }
    for (const auto& [a, b] : g.edges)
        if (new_id[a] >= 0 && new_id[b] >= 0)
            sub.edges.push_back({new_id[a], new_id[b]});
    sub.rebuild_adjacency();
    return sub;
}

}  // namespace edmnet
