#pragma once

#include <string>
#include <vector>

#include "edmnet/network.hpp"
#include "edmnet/partition.hpp"

namespace edmnet {

// A set of pairwise non-adjacent vertices, reported as tickers.
struct IndependentSet {
    std::vector<std::string> tickers;  // sorted ascending
    int source_block = -1;             // block id when produced per block, else -1
    bool exact = false;                // true when found by exhaustive search

    std::size_t size() const { return tickers.size(); }
};

// Repeatedly picks a minimum-degree vertex (ties: smallest ticker) and
// removes its closed neighborhood. Always returns a maximal set.
IndependentSet greedy_mis(const DependenceGraph& g);

// Branch-and-bound over bitmasks; exact maximum independent set.
// Throws std::invalid_argument when the graph has more than 30 vertices.
IndependentSet exact_mis(const DependenceGraph& g);

// Partitions the graph by `partition`, solves each block independently
// (exactly when the block has at most `exact_cutoff` vertices, greedily
// otherwise) and returns one set per block, in block order.
std::vector<IndependentSet> mis_per_block(const DependenceGraph& g,
                                          const Partition& partition,
                                          int exact_cutoff = 25);

// True when no two members are adjacent in g. Unknown tickers throw.
bool is_independent(const DependenceGraph& g, const std::vector<std::string>& tickers);

// True when independent and no vertex outside the set can be added.
bool is_maximal_independent(const DependenceGraph& g,
                            const std::vector<std::string>& tickers);

}  // namespace edmnet
