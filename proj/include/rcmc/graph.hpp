#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rcmc {

struct Edge {
    int u = 0;
    int v = 0;
};

// Immutable undirected multigraph.  Vertices are 0..n-1; edges keep their
// construction order, which defines the global edge indices 0..m-1 that every
// configuration type below refers to.  Parallel edges are allowed, self-loops
// are not.
class Graph {
public:
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int i) const { return edges_[static_cast<size_t>(i)]; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const Graph& other) const;

    // Text format: first line "n m", then m lines "u v".  Blank lines and
    // lines starting with '#' are ignored.  Throws ParseError naming the
    // offending line.
    static Graph parse(std::istream& in);
    static Graph parse_string(const std::string& text);
    static Graph load(const std::string& path);
    std::string to_text() const;

private:
    int n_;
    std::vector<Edge> edges_;
};

// A subset of the edge indices of one particular graph, stored as a bitset.
// Carries the edge count of its graph so that mixing subsets from different
// graphs is caught at the operation boundary.
class EdgeSubset {
public:
    EdgeSubset() = default;
    explicit EdgeSubset(int arity);

    static EdgeSubset from_mask(int arity, uint64_t mask);
    static EdgeSubset from_indices(int arity, const std::vector<int>& indices);
    static EdgeSubset full(int arity);

    int arity() const { return m_; }
    bool contains(int e) const { return (words_[word(e)] >> bit(e)) & 1u; }
    void insert(int e) { words_[word(e)] |= uint64_t(1) << bit(e); }
    void erase(int e) { words_[word(e)] &= ~(uint64_t(1) << bit(e)); }
    void flip(int e) { words_[word(e)] ^= uint64_t(1) << bit(e); }
    bool empty() const;
    int size() const;

    EdgeSubset sym_diff(const EdgeSubset& o) const;
    EdgeSubset set_union(const EdgeSubset& o) const;
    EdgeSubset set_minus(const EdgeSubset& o) const;
    EdgeSubset intersect(const EdgeSubset& o) const;
    EdgeSubset complement() const;
    bool subset_of(const EdgeSubset& o) const;

    std::vector<int> indices() const;

    // Low 64 bits; only valid when the graph has at most 64 edges.
    uint64_t mask64() const;

    bool operator==(const EdgeSubset& o) const { return m_ == o.m_ && words_ == o.words_; }
    bool operator!=(const EdgeSubset& o) const { return !(*this == o); }
    bool operator<(const EdgeSubset& o) const;

    std::string to_string() const;

private:
    static size_t word(int e) { return static_cast<size_t>(e) >> 6; }
    static unsigned bit(int e) { return static_cast<unsigned>(e) & 63u; }
    void check_same_graph(const EdgeSubset& o) const;

    int m_ = 0;
    std::vector<uint64_t> words_;
};

// Number of connected components of the spanning subgraph (V, s), isolated
// vertices included.
int component_count(const Graph& g, const EdgeSubset& s);

// Component label (root id) per vertex, plus sizes; labels are the smallest
// vertex id in each component.
std::vector<int> component_labels(const Graph& g, const EdgeSubset& s);
std::vector<int> component_sizes(const Graph& g, const EdgeSubset& s);

// Vertices of odd degree in (V, s); parallel edges count separately.
std::vector<int> odd_vertices(const Graph& g, const EdgeSubset& s);
int odd_vertex_count(const Graph& g, const EdgeSubset& s);

// Sum over components of C(size, 2) -- the c(R) statistic.
long pair_count(const Graph& g, const EdgeSubset& s);

// Plain union-find, used both by the per-subset component counts and by the
// samplers' incremental insertion updates.
class UnionFind {
public:
    explicit UnionFind(int n);
    int find(int x);
    bool unite(int x, int y); // true if two components merged
    bool connected(int x, int y) { return find(x) == find(y); }
    int components() const { return components_; }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
    int components_;
};

} // namespace rcmc
