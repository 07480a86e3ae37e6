#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edmnet/execution.hpp"
#include "edmnet/network.hpp"

namespace edmnet {

enum class PartitionMethod { sector, girvan_newman };

// Config vocabulary: "sector" or "community".
PartitionMethod parse_partition_method(const std::string& name);
std::string to_string(PartitionMethod method);

// Disjoint cover of the graph's vertices. Blocks are numbered 0..B-1 by
// decreasing size, ties broken by the lexicographically smallest member
// ticker, so block ids are stable across runs.
struct Partition {
    std::vector<int> block_of;              // vertex -> block id
    std::vector<std::vector<int>> blocks;   // block id -> sorted vertex ids
    PartitionMethod method = PartitionMethod::sector;
    std::optional<double> modularity;       // filled for girvan_newman

    int n_blocks() const { return static_cast<int>(blocks.size()); }
};

// One edge removal in the divisive community search.
struct RemovalEvent {
    int step = 0;
    std::pair<int, int> edge;      // vertex ids, first < second
    double betweenness = 0.0;      // at removal time
    int components_after = 0;
    double modularity_after = 0.0; // of the component partition, on the input graph
};

struct Dendrogram {
    std::vector<RemovalEvent> events;
};

// Betweenness per edge, aligned with g.edges. Shortest-path fractions are
// accumulated per unordered vertex pair (each pair counted once).
std::vector<double> edge_betweenness(const DependenceGraph& g,
                                     Execution exec = Execution::parallel);

// One block per distinct sector label. Throws ValidationError when a
// vertex has no sector.
Partition sector_partition(const DependenceGraph& g, const SectorTable& sectors);

// Divisive community detection: repeatedly remove the edge of maximal
// betweenness (ties to the lexicographically smallest edge) and recompute.
// With target_blocks, stops as soon as the component count reaches it;
// otherwise returns the component partition with maximal modularity over
// the whole removal sequence.
std::pair<Partition, Dendrogram> girvan_newman(
    const DependenceGraph& g, std::optional<int> target_blocks = std::nullopt,
    Execution exec = Execution::parallel);

// Q = sum over blocks of (intra-block edge fraction - squared degree
// fraction). 0 for an edgeless graph.
double modularity(const DependenceGraph& g, const Partition& p);

Partition connected_components(const DependenceGraph& g);

// Induced subgraph on the given vertex ids; keeps sector labels and the
// threshold. Throws ValidationError on unknown ids.
DependenceGraph subgraph(const DependenceGraph& g, const std::vector<int>& vertex_ids);

}  // namespace edmnet
