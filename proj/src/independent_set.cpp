#include "edmnet/independent_set.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "edmnet/errors.hpp"

namespace edmnet {

namespace {

std::vector<std::string> ids_to_tickers(const DependenceGraph& g, const std::vector<int>& ids) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (int v : ids) out.push_back(g.tickers[v]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> greedy_ids(const DependenceGraph& g) {
    const int n = g.n_vertices();
    std::vector<char> alive(n, 1);
    std::vector<int> chosen;
    int alive_count = n;
    while (alive_count > 0) {
        int pick = -1;
        int pick_degree = 0;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            int degree = 0;
            for (const auto& [w, eid] : g.adj[v])
                if (alive[w]) ++degree;
            if (pick < 0 || degree < pick_degree) {
                pick = v;
                pick_degree = degree;
            }
        }
        chosen.push_back(pick);
        alive[pick] = 0;
        --alive_count;
        for (const auto& [w, eid] : g.adj[pick]) {
            if (alive[w]) {
                alive[w] = 0;
                --alive_count;
            }
        }
    }
    return chosen;
}

struct ExactSearch {
    const std::vector<std::uint64_t>& adj;
    std::uint64_t best_mask = 0;
    int best_size = 0;

    void run(std::uint64_t cur, int cur_size, std::uint64_t cand) {
        if (cur_size + std::popcount(cand) <= best_size) return;
        if (cand == 0) {
            best_size = cur_size;
            best_mask = cur;
            return;
        }
        // If no edges remain among candidates, take them all.
        bool isolated = true;
        for (std::uint64_t rest = cand; rest;) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (adj[v] & cand) {
                isolated = false;
                break;
            }
        }
        if (isolated) {
            best_size = cur_size + std::popcount(cand);
            best_mask = cur | cand;
            return;
        }
        // Branch on the candidate with the most candidate neighbors.
        int branch = -1;
        int branch_degree = -1;
        for (std::uint64_t rest = cand; rest;) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            const int degree = std::popcount(adj[v] & cand);
            if (degree > branch_degree) {
                branch_degree = degree;
                branch = v;
            }
        }
        const std::uint64_t bit = std::uint64_t{1} << branch;
        run(cur | bit, cur_size + 1, cand & ~(adj[branch] | bit));
        run(cur, cur_size, cand & ~bit);
    }
};

}  // namespace

IndependentSet greedy_mis(const DependenceGraph& g) {
    IndependentSet out;
    out.tickers = ids_to_tickers(g, greedy_ids(g));
    out.exact = false;
    return out;
}

IndependentSet exact_mis(const DependenceGraph& g) {
    const int n = g.n_vertices();
    if (n > 30)
        throw std::invalid_argument(
            "exact_mis: graph has " + std::to_string(n) + " vertices (limit 30)");

    std::vector<std::uint64_t> adj(n, 0);
    for (const auto& [a, b] : g.edges) {
        adj[a] |= std::uint64_t{1} << b;
        adj[b] |= std::uint64_t{1} << a;
    }

    ExactSearch search{adj};
    for (int v : greedy_ids(g)) search.best_mask |= std::uint64_t{1} << v;
    search.best_size = std::popcount(search.best_mask);

    const std::uint64_t all = n == 64 ? ~std::uint64_t{0}
                                      : (std::uint64_t{1} << n) - 1;
    search.run(0, 0, all);

    std::vector<int> ids;
    for (std::uint64_t rest = search.best_mask; rest;) {
        ids.push_back(std::countr_zero(rest));
        rest &= rest - 1;
    }
    IndependentSet out;
    out.tickers = ids_to_tickers(g, ids);
    out.exact = true;
    return out;
}

std::vector<IndependentSet> mis_per_block(const DependenceGraph& g,
                                          const Partition& partition, int exact_cutoff) {
    if (exact_cutoff < 1 || exact_cutoff > 30)
        throw std::invalid_argument("mis_per_block: exact_cutoff must be in [1, 30]");
    std::vector<IndependentSet> out;
    out.reserve(partition.blocks.size());
    for (int b = 0; b < partition.n_blocks(); ++b) {
        const auto& block = partition.blocks[b];
        IndependentSet set;
        if (block.size() == 1) {
            set.tickers = {g.tickers[block.front()]};
            set.exact = true;
        } else {
            const DependenceGraph sub = subgraph(g, block);
            set = static_cast<int>(block.size()) <= exact_cutoff ? exact_mis(sub)
                                                                 : greedy_mis(sub);
        }
        set.source_block = b;
        out.push_back(std::move(set));
    }
    return out;
}

namespace {

std::vector<int> resolve_ids(const DependenceGraph& g, const std::vector<std::string>& tickers) {
    std::unordered_map<std::string, int> index;
    for (int v = 0; v < g.n_vertices(); ++v) index.emplace(g.tickers[v], v);
    std::vector<int> ids;
    ids.reserve(tickers.size());
    for (const auto& t : tickers) {
        const auto it = index.find(t);
        if (it == index.end())
            throw ValidationError("unknown ticker in independent set: " + t);
        ids.push_back(it->second);
    }
    return ids;
}

}  // namespace

bool is_independent(const DependenceGraph& g, const std::vector<std::string>& tickers) {
    const auto ids = resolve_ids(g, tickers);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            if (g.has_edge(ids[i], ids[j])) return false;
    return true;
}

bool is_maximal_independent(const DependenceGraph& g,
                            const std::vector<std::string>& tickers) {
    if (!is_independent(g, tickers)) return false;
    const auto ids = resolve_ids(g, tickers);
    std::vector<char> in_set(g.n_vertices(), 0);
    for (int v : ids) in_set[v] = 1;
    for (int v = 0; v < g.n_vertices(); ++v) {
        if (in_set[v]) continue;
        bool blocked = false;
        for (const auto& [w, eid] : g.adj[v])
            if (in_set[w]) {
                blocked = true;
                break;
            }
        if (!blocked) return false;
    }
    return true;
}

}  // namespace edmnet
