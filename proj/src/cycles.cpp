#include "rcmc/cycles.hpp"

#include <algorithm>
#include <stdexcept>

#include "rcmc/errors.hpp"

namespace rcmc {

namespace {

// Walks a subset whose vertices all have degree 0 or 2 and which spans a
// single connected component: a simple cycle.  Produces the canonical walk
// order (start at smallest vertex, leave along the smaller incident edge
// index, track the arrival edge so parallel edges are handled).
Cycle walk_cycle(const Graph& g, const EdgeSubset& s)
{
    std::vector<int> members = s.indices();

    int start = g.vertex_count();
    for (int e : members) {
        start = std::min({start, g.edge(e).u, g.edge(e).v});
    }

    // incident cycle edges per vertex (each has exactly two)
    std::vector<std::vector<int>> inc(static_cast<size_t>(g.vertex_count()));
    for (int e : members) {
        inc[static_cast<size_t>(g.edge(e).u)].push_back(e);
        inc[static_cast<size_t>(g.edge(e).v)].push_back(e);
    }
    for (auto& v : inc) {
        std::sort(v.begin(), v.end());
    }

    Cycle c;
    c.start_vertex = start;
    c.edge_set = s;

    int at = start;
    int arrived_by = -1;
    do {
        const auto& cand = inc[static_cast<size_t>(at)];
        int next_edge = (cand[0] == arrived_by) ? cand[1] : cand[0];
        c.edges.push_back(next_edge);
        const Edge& ed = g.edge(next_edge);
        at = (ed.u == at) ? ed.v : ed.u;
        arrived_by = next_edge;
    } while (at != start);

    return c;
}

bool is_simple_cycle(const Graph& g, uint64_t mask)
{
    if (mask == 0) {
        return false;
    }
    std::vector<int> deg(static_cast<size_t>(g.vertex_count()), 0);
    UnionFind uf(g.vertex_count());
    int edges = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (mask >> e & 1u) {
            const Edge& ed = g.edge(e);
            ++deg[static_cast<size_t>(ed.u)];
            ++deg[static_cast<size_t>(ed.v)];
            uf.unite(ed.u, ed.v);
            ++edges;
        }
    }
    int touched = 0;
    int root = -1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (deg[static_cast<size_t>(v)] == 0) {
            continue;
        }
        if (deg[static_cast<size_t>(v)] != 2) {
            return false;
        }
        ++touched;
        if (root < 0) {
            root = uf.find(v);
        } else if (uf.find(v) != root) {
            return false; // two disjoint cycles
        }
    }
    return touched == edges; // #vertices == #edges on a single cycle
}

} // namespace

CycleInventory cycle_inventory(const Graph& g, int guard_m)
{
    if (g.edge_count() > guard_m) {
        throw GuardError("edge count", g.edge_count(), guard_m);
    }
    CycleInventory inv;
    const uint64_t total = uint64_t{1} << g.edge_count();
    for (uint64_t mask = 1; mask < total; ++mask) {
        if (is_simple_cycle(g, mask)) {
            inv.cycles_.push_back(walk_cycle(g, EdgeSubset::from_mask(g.edge_count(), mask)));
        }
    }
    std::sort(inv.cycles_.begin(), inv.cycles_.end(), [](const Cycle& a, const Cycle& b) {
        if (a.edges.size() != b.edges.size()) {
            return a.edges.size() < b.edges.size();
        }
        std::vector<int> sa = a.edges, sb = b.edges;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        return sa < sb;
    });
    return inv;
}

std::vector<Cycle> even_decomposition(const Graph& g, const EdgeSubset& s, const CycleInventory& inv)
{
    if (odd_vertex_count(g, s) != 0) {
        throw std::invalid_argument("even_decomposition: subset has odd-degree vertices");
    }
    std::vector<Cycle> cover;
    EdgeSubset rest = s;
    while (!rest.empty()) {
        bool found = false;
        for (const Cycle& c : inv.cycles()) {
            if (c.edge_set.subset_of(rest)) {
                cover.push_back(c);
                rest = rest.set_minus(c.edge_set);
                found = true;
                break;
            }
        }
        if (!found) {
            // cannot happen: a nonempty even subgraph contains a cycle
            throw std::logic_error("even_decomposition: no cycle found in even remainder");
        }
    }
    return cover;
}

std::vector<Cycle> even_decomposition(const Graph& g, const EdgeSubset& s, int guard_m)
{
    CycleInventory inv = cycle_inventory(g, guard_m);
    return even_decomposition(g, s, inv);
}

std::vector<int> unwinding_order(const std::vector<Cycle>& cover)
{
    std::vector<int> order;
    for (const Cycle& c : cover) {
        order.insert(order.end(), c.edges.begin(), c.edges.end());
    }
    return order;
}

} // namespace rcmc
