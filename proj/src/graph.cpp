#include "rcmc/graph.hpp"

#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rcmc/errors.hpp"

namespace rcmc {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw ParseError("vertex count must be positive, got " + std::to_string(n_));
    for (size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u == e.v)
            throw ParseError("self-loop at edge index " + std::to_string(i) + " (vertex " +
                             std::to_string(e.u) + ")");
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw ParseError("edge index " + std::to_string(i) + " has endpoint out of range");
    }
}

bool Graph::operator==(const Graph& other) const {
    if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
    for (size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].u != other.edges_[i].u || edges_[i].v != other.edges_[i].v) return false;
    return true;
}

Graph Graph::parse(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1, m = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        if (n < 0) {
            if (!(fields >> n >> m) || n < 1 || m < 0)
                throw ParseError("expected header 'n m'", lineno);
            edges.reserve(static_cast<size_t>(m));
            continue;
        }
        int u, v;
        if (!(fields >> u >> v)) throw ParseError("expected edge 'u v'", lineno);
        if (u == v) throw ParseError("self-loop (" + std::to_string(u) + "," + std::to_string(v) + ")", lineno);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("endpoint out of range [0," + std::to_string(n - 1) + "]", lineno);
        edges.push_back({u, v});
    }
    if (n < 0) throw ParseError("empty graph file");
    if (static_cast<int>(edges.size()) != m)
        throw ParseError("header announced " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
    return Graph(n, std::move(edges));
}

Graph Graph::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

Graph Graph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    return parse(in);
}

std::string Graph::to_text() const {
    std::ostringstream out;
    out << n_ << " " << edges_.size() << "\n";
    for (const Edge& e : edges_) out << e.u << " " << e.v << "\n";
    return out.str();
}

EdgeSubset::EdgeSubset(int arity) : m_(arity), words_(static_cast<size_t>((arity + 63) / 64), 0) {}

EdgeSubset EdgeSubset::from_mask(int arity, uint64_t mask) {
    EdgeSubset s(arity);
    if (arity < 64 && (mask >> arity) != 0)
        throw std::invalid_argument("mask has bits beyond edge count");
    if (!s.words_.empty()) s.words_[0] = mask;
    return s;
}

EdgeSubset EdgeSubset::from_indices(int arity, const std::vector<int>& indices) {
    EdgeSubset s(arity);
    for (int e : indices) {
        if (e < 0 || e >= arity) throw std::invalid_argument("edge index out of range");
        s.insert(e);
    }
    return s;
}

EdgeSubset EdgeSubset::full(int arity) {
    EdgeSubset s(arity);
    for (int e = 0; e < arity; ++e) s.insert(e);
    return s;
}

bool EdgeSubset::empty() const {
    for (uint64_t w : words_)
        if (w) return false;
    return true;
}

int EdgeSubset::size() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
}

void EdgeSubset::check_same_graph(const EdgeSubset& o) const {
    if (m_ != o.m_)
        throw std::invalid_argument("edge subsets belong to different graphs (m=" +
                                    std::to_string(m_) + " vs m=" + std::to_string(o.m_) + ")");
}

EdgeSubset EdgeSubset::sym_diff(const EdgeSubset& o) const {
    check_same_graph(o);
    EdgeSubset r(m_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] ^ o.words_[i];
    return r;
}

EdgeSubset EdgeSubset::set_union(const EdgeSubset& o) const {
    check_same_graph(o);
    EdgeSubset r(m_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | o.words_[i];
    return r;
}

EdgeSubset EdgeSubset::set_minus(const EdgeSubset& o) const {
    check_same_graph(o);
    EdgeSubset r(m_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
    return r;
}

EdgeSubset EdgeSubset::intersect(const EdgeSubset& o) const {
    check_same_graph(o);
    EdgeSubset r(m_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
}

EdgeSubset EdgeSubset::complement() const { return full(m_).set_minus(*this); }

bool EdgeSubset::subset_of(const EdgeSubset& o) const {
    check_same_graph(o);
    for (size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

std::vector<int> EdgeSubset::indices() const {
    std::vector<int> out;
    for (int e = 0; e < m_; ++e)
        if (contains(e)) out.push_back(e);
    return out;
}

uint64_t EdgeSubset::mask64() const {
    if (m_ > 64) throw std::invalid_argument("mask64 requires m <= 64");
    return words_.empty() ? 0 : words_[0];
}

bool EdgeSubset::operator<(const EdgeSubset& o) const {
    if (m_ != o.m_) return m_ < o.m_;
    for (size_t i = words_.size(); i-- > 0;)
        if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
    return false;
}

std::string EdgeSubset::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e = 0; e < m_; ++e) {
        if (!contains(e)) continue;
        if (!first) s += ",";
        s += "e" + std::to_string(e);
        first = false;
    }
    return s + "}";
}

UnionFind::UnionFind(int n) : parent_(static_cast<size_t>(n)), rank_(static_cast<size_t>(n), 0), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int x) {
    while (parent_[static_cast<size_t>(x)] != x) {
        parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
        x = parent_[static_cast<size_t>(x)];
    }
    return x;
}

bool UnionFind::unite(int x, int y) {
    int px = find(x), py = find(y);
    if (px == py) return false;
    if (rank_[static_cast<size_t>(px)] < rank_[static_cast<size_t>(py)]) std::swap(px, py);
    parent_[static_cast<size_t>(py)] = px;
    if (rank_[static_cast<size_t>(px)] == rank_[static_cast<size_t>(py)]) ++rank_[static_cast<size_t>(px)];
    --components_;
    return true;
}

static void check_association(const Graph& g, const EdgeSubset& s) {
    if (s.arity() != g.edge_count())
        throw std::invalid_argument("edge subset not associated with this graph");
}

int component_count(const Graph& g, const EdgeSubset& s) {
    check_association(g, s);
    UnionFind uf(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if (s.contains(e)) uf.unite(g.edge(e).u, g.edge(e).v);
    return uf.components();
}

std::vector<int> component_labels(const Graph& g, const EdgeSubset& s) {
    check_association(g, s);
    UnionFind uf(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if (s.contains(e)) uf.unite(g.edge(e).u, g.edge(e).v);
    std::vector<int> label(static_cast<size_t>(g.vertex_count()), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        int root = uf.find(v);
        if (label[static_cast<size_t>(root)] < 0) label[static_cast<size_t>(root)] = root;
        label[static_cast<size_t>(v)] = label[static_cast<size_t>(root)];
    }
    // relabel by smallest member
    std::vector<int> smallest(static_cast<size_t>(g.vertex_count()), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = label[static_cast<size_t>(v)];
        if (smallest[static_cast<size_t>(r)] < 0) smallest[static_cast<size_t>(r)] = v;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        label[static_cast<size_t>(v)] = smallest[static_cast<size_t>(label[static_cast<size_t>(v)])];
    return label;
}

std::vector<int> component_sizes(const Graph& g, const EdgeSubset& s) {
    std::vector<int> label = component_labels(g, s);
    std::vector<int> count(static_cast<size_t>(g.vertex_count()), 0);
    for (int v = 0; v < g.vertex_count(); ++v) ++count[static_cast<size_t>(label[static_cast<size_t>(v)])];
    std::vector<int> sizes;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (count[static_cast<size_t>(v)] > 0) sizes.push_back(count[static_cast<size_t>(v)]);
    return sizes;
}

std::vector<int> odd_vertices(const Graph& g, const EdgeSubset& s) {
    check_association(g, s);
    std::vector<int> degree(static_cast<size_t>(g.vertex_count()), 0);
    for (int e = 0; e < g.edge_count(); ++e)
        if (s.contains(e)) {
            ++degree[static_cast<size_t>(g.edge(e).u)];
            ++degree[static_cast<size_t>(g.edge(e).v)];
        }
    std::vector<int> odd;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (degree[static_cast<size_t>(v)] % 2) odd.push_back(v);
    return odd;
}

int odd_vertex_count(const Graph& g, const EdgeSubset& s) {
    return static_cast<int>(odd_vertices(g, s).size());
}

long pair_count(const Graph& g, const EdgeSubset& s) {
    long total = 0;
    for (int size : component_sizes(g, s)) total += static_cast<long>(size) * (size - 1) / 2;
    return total;
}

} // namespace rcmc
