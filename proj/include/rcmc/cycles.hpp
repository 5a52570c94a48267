#pragma once

#include <vector>

#include "rcmc/graph.hpp"
#include "rcmc/guards.hpp"

namespace rcmc {

// A simple cycle as an ordered tuple of edge indices.  The tuple starts at
// start_vertex and proceeds in the direction of the smaller-indexed incident
// cycle edge, so the walk order is a pure function of the edge set.
struct Cycle {
    std::vector<int> edges; // walk order
    int start_vertex = 0;
    EdgeSubset edge_set;

    int length() const { return static_cast<int>(edges.size()); }
};

// All simple cycles of the graph in a fixed deterministic order:
// by (length, sorted edge-index sequence) ascending.  A pair of parallel
// edges counts as a length-2 cycle.
class CycleInventory {
public:
    const std::vector<Cycle>& cycles() const { return cycles_; }
    const Cycle& cycle(int i) const { return cycles_[static_cast<size_t>(i)]; }
    int count() const { return static_cast<int>(cycles_.size()); }

    friend CycleInventory cycle_inventory(const Graph&, int);

private:
    std::vector<Cycle> cycles_;
};

CycleInventory cycle_inventory(const Graph& g, int guard_m = kEnumGuardM);

// Decomposes an even subgraph into edge-disjoint inventory cycles by greedily
// taking the first inventory cycle contained in the remainder.  Removing a
// simple cycle keeps every degree even, so the greedy pass always succeeds
// and the result is the lexicographically first cover.  Throws
// std::invalid_argument if s has an odd-degree vertex.
std::vector<Cycle> even_decomposition(const Graph& g, const EdgeSubset& s, const CycleInventory& inv);
std::vector<Cycle> even_decomposition(const Graph& g, const EdgeSubset& s, int guard_m = kEnumGuardM);

// Edge indices of the cover concatenated cycle by cycle in walk order -- the
// order in which a canonical path flips them.
std::vector<int> unwinding_order(const std::vector<Cycle>& cover);

} // namespace rcmc
