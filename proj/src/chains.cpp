#include "rcmc/chains.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace rcmc {

namespace {

bool connected_in(const Graph& g, const EdgeSubset& s, int a, int b)
{
    UnionFind uf(g.vertex_count());
    for (int e : s.indices()) {
        uf.unite(g.edge(e).u, g.edge(e).v);
    }
    return uf.find(a) == uf.find(b);
}

uint32_t odd_mask32(const Graph& g, const EdgeSubset& s)
{
    uint32_t om = 0;
    for (int e : s.indices()) {
        om ^= (uint32_t{1} << g.edge(e).u) ^ (uint32_t{1} << g.edge(e).v);
    }
    return om;
}

uint64_t derive_seed(uint64_t seed, uint64_t salt)
{
    SplitMix64 r(seed ^ salt);
    return r.next_u64();
}

} // namespace

Rational rc_flip_ratio(const Graph& g, const Params& pr, const EdgeSubset& x, int e)
{
    if (pr.p_rc() >= 1) {
        throw std::invalid_argument("rc_flip_ratio: needs p_rc < 1");
    }
    EdgeSubset y = x;
    y.flip(e);
    const Rational odds = pr.p_rc() / (1 - pr.p_rc());
    Rational r = x.contains(e) ? Rational(1 / odds) : odds;
    const int dk = component_count(g, y) - component_count(g, x);
    if (dk > 0) {
        r *= rational_pow(pr.q(), static_cast<unsigned long>(dk));
    } else if (dk < 0) {
        r /= rational_pow(pr.q(), static_cast<unsigned long>(-dk));
    }
    return r;
}

Rational worm_flip_ratio(const Graph& g, const Params& pr, const EdgeSubset& w, int e)
{
    const int before = odd_vertex_count(g, w);
    if (before > 2) {
        throw std::invalid_argument("worm_flip_ratio: state outside the worm space");
    }
    EdgeSubset y = w;
    y.flip(e);
    const int after = odd_vertex_count(g, y);
    if (after > 2) {
        return Rational(0);
    }
    const Rational odds = pr.p_even() / (1 - pr.p_even());
    Rational r = w.contains(e) ? Rational(1 / odds) : odds;
    if (after == 2 && before == 0) {
        r *= Params::worm_penalty(g.vertex_count());
    } else if (after == 0 && before == 2) {
        r /= Params::worm_penalty(g.vertex_count());
    }
    return r;
}

// ---- RcChain ----

RcChain::RcChain(const Graph& g, const Params& pr, EdgeSubset start, uint64_t seed)
    : g_(&g), pr_(pr), state_(std::move(start)), rng_(seed)
{
    if (pr.p_rc() >= 1) {
        throw std::invalid_argument("rc chain: needs p_rc < 1");
    }
    if (state_.arity() != g.edge_count()) {
        throw std::invalid_argument("rc chain: start state arity mismatch");
    }
    podds_ = to_double(pr.p_rc() / (1 - pr.p_rc()));
    q_ = to_double(pr.q());
}

StepTrace RcChain::step()
{
    StepTrace t;
    if (rng_.next_bool()) {
        t.lazy_hold = true;
        return t;
    }
    const int e = static_cast<int>(rng_.next_below(static_cast<uint64_t>(g_->edge_count())));
    t.edge = e;
    const Edge& ed = g_->edge(e);
    double r;
    if (!state_.contains(e)) {
        // insertion merges two components unless the endpoints already touch
        const bool conn = connected_in(*g_, state_, ed.u, ed.v);
        r = podds_ * (conn ? 1.0 : 1.0 / q_);
    } else {
        EdgeSubset y = state_;
        y.erase(e);
        const bool conn = connected_in(*g_, y, ed.u, ed.v);
        r = (1.0 / podds_) * (conn ? 1.0 : q_);
    }
    t.ratio = std::min(1.0, r);
    if (rng_.next_double() < r) {
        t.accepted = true;
        state_.flip(e);
    }
    return t;
}

void RcChain::run(long steps)
{
    for (long i = 0; i < steps; ++i) {
        step();
    }
}

// ---- WormChain ----

WormChain::WormChain(const Graph& g, const Params& pr, EdgeSubset start, uint64_t seed)
    : g_(&g), pr_(pr), state_(std::move(start)), rng_(seed)
{
    if (g.vertex_count() > 32) {
        throw std::invalid_argument("worm chain: odd-vertex tracking limited to 32 vertices");
    }
    if (state_.arity() != g.edge_count()) {
        throw std::invalid_argument("worm chain: start state arity mismatch");
    }
    odd_mask_ = odd_mask32(g, state_);
    defects_ = std::popcount(odd_mask_);
    if (defects_ > 2) {
        throw std::invalid_argument("worm chain: start state outside the worm space");
    }
    podds_ = to_double(pr.p_even() / (1 - pr.p_even()));
    const int n = g.vertex_count();
    penalty_ = 1.0 / (static_cast<double>(n) * n);
}

StepTrace WormChain::step()
{
    StepTrace t;
    if (rng_.next_bool()) {
        t.lazy_hold = true;
        return t;
    }
    const int e = static_cast<int>(rng_.next_below(static_cast<uint64_t>(g_->edge_count())));
    t.edge = e;
    const Edge& ed = g_->edge(e);
    const uint32_t par = (uint32_t{1} << ed.u) ^ (uint32_t{1} << ed.v);
    const uint32_t om = odd_mask_ ^ par;
    const int nd = std::popcount(om);

    double r = 0.0;
    if (nd > 2) {
        t.valid = false; // proposal leaves the worm space
    } else {
        r = state_.contains(e) ? 1.0 / podds_ : podds_;
        if (nd == 2 && defects_ == 0) {
            r *= penalty_;
        } else if (nd == 0 && defects_ == 2) {
            r /= penalty_;
        }
    }
    t.ratio = std::min(1.0, r);
    // the uniform is drawn even for doomed proposals so the stream position
    // depends only on the coin and edge draws
    if (rng_.next_double() < r) {
        t.accepted = true;
        state_.flip(e);
        odd_mask_ = om;
        defects_ = nd;
    }
    return t;
}

void WormChain::run(long steps)
{
    for (long i = 0; i < steps; ++i) {
        step();
    }
}

// ---- lift ----

EdgeSubset rerandomize(const Graph& g, const Params& pr, const EdgeSubset& w, SplitMix64& rng)
{
    const double pprime = to_double(pr.p_prime());
    EdgeSubset z = w;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!w.contains(e) && rng.next_double() < pprime) {
            z.insert(e);
        }
    }
    return z;
}

LiftedWormSampler::LiftedWormSampler(const Graph& g, const Params& pr, EdgeSubset start, uint64_t seed)
    : worm_(g, pr, std::move(start), derive_seed(seed, 0x9a0b5ef2d1c3a574ull)),
      g_(&g),
      pr_(pr),
      rng_(derive_seed(seed, 0x243f6a8885a308d3ull)),
      projected_(EdgeSubset::from_mask(g.edge_count(), 0))
{
    projected_ = rerandomize(*g_, pr_, worm_.state(), rng_);
}

StepTrace LiftedWormSampler::step()
{
    StepTrace t = worm_.step();
    projected_ = rerandomize(*g_, pr_, worm_.state(), rng_);
    return t;
}

// ---- Swendsen-Wang ----

SwChain::SwChain(const Graph& g, const Params& pr, std::vector<uint8_t> spins, uint64_t seed)
    : g_(&g), pr_(pr), spins_(std::move(spins)),
      kept_(EdgeSubset::from_mask(g.edge_count(), 0)), rng_(seed)
{
    if (static_cast<int>(spins_.size()) != g.vertex_count()) {
        throw std::invalid_argument("sw chain: spin vector size mismatch");
    }
    for (uint8_t s : spins_) {
        if (s > 1) {
            throw std::invalid_argument("sw chain: spins must be 0 or 1");
        }
    }
    p_ = to_double(pr.p_rc());
}

void SwChain::step()
{
    const int n = g_->vertex_count();
    UnionFind uf(n);
    EdgeSubset kept = EdgeSubset::from_mask(g_->edge_count(), 0);
    for (int e = 0; e < g_->edge_count(); ++e) {
        const Edge& ed = g_->edge(e);
        if (spins_[static_cast<size_t>(ed.u)] == spins_[static_cast<size_t>(ed.v)]
            && rng_.next_double() < p_) {
            kept.insert(e);
            uf.unite(ed.u, ed.v);
        }
    }
    std::vector<uint8_t> color(static_cast<size_t>(n), 2);
    for (int v = 0; v < n; ++v) {
        const int r = uf.find(v);
        if (color[static_cast<size_t>(r)] == 2) {
            color[static_cast<size_t>(r)] = rng_.next_bool() ? 1 : 0;
        }
        spins_[static_cast<size_t>(v)] = color[static_cast<size_t>(r)];
    }
    kept_ = kept;
}

void SwChain::run(long steps)
{
    for (long i = 0; i < steps; ++i) {
        step();
    }
}

int SwChain::aligned_edge_count() const
{
    int c = 0;
    for (int e = 0; e < g_->edge_count(); ++e) {
        const Edge& ed = g_->edge(e);
        if (spins_[static_cast<size_t>(ed.u)] == spins_[static_cast<size_t>(ed.v)]) {
            ++c;
        }
    }
    return c;
}

} // namespace rcmc
