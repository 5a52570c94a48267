#pragma once

#include <vector>

#include "rcmc/graph.hpp"
#include "rcmc/params.hpp"
#include "rcmc/rng.hpp"

namespace rcmc {

// What a single proposal did.  Every step consumes the same number of random
// draws regardless of state, so traces are reproducible from the seed alone.
struct StepTrace {
    bool lazy_hold = false; // held by the laziness coin, nothing proposed
    int edge = -1;          // proposed edge index (flip chains only)
    bool valid = true;      // worm chain: proposal stayed inside the state space
    bool accepted = false;
    double ratio = 1.0;     // acceptance ratio min(1, pi(y)/pi(x)) actually used
};

// ---- exact Metropolis ratios (shared by the simulators and the exact
//      transition-matrix builder) ----

// pi_rc(x ^ e) / pi_rc(x); requires 0 < p_rc < 1.
Rational rc_flip_ratio(const Graph& g, const Params& pr, const EdgeSubset& x, int e);

// pi_worm(w ^ e) / pi_worm(w); zero when the proposal leaves the worm space.
Rational worm_flip_ratio(const Graph& g, const Params& pr, const EdgeSubset& w, int e);

// ---- lazy single-bond-flip chain on random-cluster states ----
//
// One step: with probability 1/2 hold; otherwise pick an edge uniformly,
// propose flipping it and accept with the Metropolis ratio.
class RcChain {
public:
    RcChain(const Graph& g, const Params& pr, EdgeSubset start, uint64_t seed);

    const EdgeSubset& state() const { return state_; }
    StepTrace step();
    void run(long steps);

    const Graph& graph() const { return *g_; }

private:
    const Graph* g_;
    Params pr_;
    EdgeSubset state_;
    SplitMix64 rng_;
    double podds_;    // p_rc / (1 - p_rc)
    double q_;
};

// ---- lazy single-bond-flip worm chain on subgraphs with 0 or 2
//      odd-degree vertices ----
class WormChain {
public:
    WormChain(const Graph& g, const Params& pr, EdgeSubset start, uint64_t seed);

    const EdgeSubset& state() const { return state_; }
    int defect_count() const { return defects_; }
    StepTrace step();
    void run(long steps);

    const Graph& graph() const { return *g_; }

private:
    const Graph* g_;
    Params pr_;
    EdgeSubset state_;
    uint32_t odd_mask_ = 0;
    int defects_ = 0;
    SplitMix64 rng_;
    double podds_;    // p_even / (1 - p_even)
    double penalty_;  // 1 / n^2
};

// Adds every edge outside w independently with odds p' = p/(1-p).  Applied
// to a stationary worm state this produces a sample from the smoothed
// measure pi_hat; on the even stratum alone it produces random-cluster
// samples, which is the coupling the lifted flow rides on.
EdgeSubset rerandomize(const Graph& g, const Params& pr, const EdgeSubset& w, SplitMix64& rng);

// Worm chain plus a fresh re-randomization after every step; projected()
// is then a pi_hat sample once the underlying worm chain has mixed.
class LiftedWormSampler {
public:
    LiftedWormSampler(const Graph& g, const Params& pr, EdgeSubset start, uint64_t seed);

    StepTrace step();
    const EdgeSubset& worm_state() const { return worm_.state(); }
    const EdgeSubset& projected() const { return projected_; }

private:
    WormChain worm_;
    const Graph* g_;
    Params pr_;
    SplitMix64 rng_;
    EdgeSubset projected_;
};

// ---- Swendsen-Wang on spin assignments ----
//
// One step: keep each aligned edge with probability p_rc, then flip a fair
// coin per cluster.  kept_edges() exposes the intermediate bond state.
class SwChain {
public:
    SwChain(const Graph& g, const Params& pr, std::vector<uint8_t> spins, uint64_t seed);

    const std::vector<uint8_t>& spins() const { return spins_; }
    const EdgeSubset& kept_edges() const { return kept_; }
    void step();
    void run(long steps);

    int aligned_edge_count() const;

private:
    const Graph* g_;
    Params pr_;
    std::vector<uint8_t> spins_;
    EdgeSubset kept_;
    SplitMix64 rng_;
    double p_;
};

} // namespace rcmc
