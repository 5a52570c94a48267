#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rcmc/cycles.hpp"
#include "rcmc/exec.hpp"
#include "rcmc/params.hpp"
#include "rcmc/subset_tables.hpp"

namespace rcmc {

// delta(w, z) = p'^(|z|-|w|) (1-p')^(m-|z|) for w ⊆ z: the probability that
// re-randomizing every edge outside w lands exactly on z.
Rational delta_weight(const Params& pr, int m, int w_size, int z_size);

// ---- canonical paths through the worm space ----
//
// The path from even subgraph I to even subgraph F unwinds the cycles of
// I xor F in inventory order, flipping one edge per step along each cycle
// walk.  Every intermediate state has at most two odd vertices, no state
// repeats, and the length is |I xor F| <= m.
struct WormPath {
    std::vector<uint64_t> states; // states[0] = I, states[L] = F
    std::vector<int> flips;       // edge flipped at each step (unwinding order)
};

WormPath worm_path(const Graph& g, const CycleInventory& inv, uint64_t I, uint64_t F);

// The pair (I, F) routed through transition (w, w xor e) is recoverable from
// the complement state U = I xor F xor w, which again lies in the worm space.
uint64_t encode_pair(uint64_t I, uint64_t F, uint64_t w);

// Inverse of the encoding for a fixed transition: returns (I, F) such that
// the path from I to F crosses (w, w xor e) with encoding U, or nullopt if
// no such pair exists.
std::optional<std::pair<uint64_t, uint64_t>> decode_pair(
    const Graph& g, const CycleInventory& inv, uint64_t w, int e, uint64_t U);

// ---- the worm flow: one path per ordered pair of even subgraphs, with
//      weight pi_even(I) pi_even(F) ----

class WormFlow {
public:
    WormFlow(const SubsetTables& t, const Params& pr, const CycleInventory& inv);

    // total path weight crossing the directed transition (w, w xor e)
    const Rational& traffic(uint64_t w, int e) const
    {
        return traffic_[w * static_cast<uint64_t>(m_) + static_cast<uint64_t>(e)];
    }
    // total path weight of paths ending at w: pi_even(w)
    const Rational& end_mass(uint64_t w) const { return even_[w]; }

    long path_count() const { return paths_; }
    int max_length() const { return max_len_; }

    // legality invariants observed while building every path
    bool states_in_worm_space() const { return states_ok_; }
    bool no_repeated_states() const { return no_repeat_; }
    bool lengths_within_m() const { return len_ok_; }
    bool legal() const { return states_ok_ && no_repeat_ && len_ok_; }

    const SubsetTables& tables() const { return *t_; }
    const Params& params() const { return pr_; }

private:
    const SubsetTables* t_;
    Params pr_;
    int m_;
    std::vector<Rational> traffic_; // [mask * m + e]
    std::vector<Rational> even_;    // pi_even per mask
    long paths_ = 0;
    int max_len_ = 0;
    bool states_ok_ = true;
    bool no_repeat_ = true;
    bool len_ok_ = true;
};

// Certificate scan: traffic(w, w xor e) <= n^4 pi_worm(w) on every directed
// transition, and additionally <= n^4 pi_worm(w) p/(1-p) for insertions.
struct WormCertificates {
    bool ok = true;
    Rational max_ratio;      // worst traffic / bound over all transitions
    uint64_t worst_state = 0;
    int worst_edge = -1;
    long transitions = 0;    // transitions with positive traffic
};

WormCertificates check_worm_certificates(const WormFlow& flow, Exec exec = Exec::serial);

// Encoding scan: over every transition, the pairs routed through it have
// distinct encodings U in the worm space, decode_pair() inverts them, and
// the endpoint/complement weights satisfy w_p(I) w_p(F) = w_p(w) w_p(U).
struct EncodingCheck {
    bool injective = true;
    bool decodes = true;
    bool in_worm_space = true;
    bool weight_identity = true;
    long checked = 0;
    bool ok() const { return injective && decodes && in_worm_space && weight_identity; }
};

EncodingCheck check_encoding(const SubsetTables& t, const Params& pr, const CycleInventory& inv);

// ---- the lifted flow on random-cluster states ----
//
// Each worm path is lifted to a random trajectory on supersets: the start is
// drawn from delta(I, .), insertions are copied, deletions re-randomize the
// flipped edge, and a tail re-randomizes every edge outside F (in increasing
// edge-index order).  Aggregated traffic through an RC transition has a
// closed form as a subset convolution against the worm-flow traffic, which
// is what this class evaluates.
class LiftedTraffic {
public:
    LiftedTraffic(const WormFlow& flow, Exec exec = Exec::serial);

    // e must not lie in z: traffic through (z, z + e)
    const Rational& insert(uint64_t z, int e) const { return at(ins_, z, e); }
    // e must lie in z: traffic through (z, z - e)
    const Rational& erase(uint64_t z, int e) const { return at(del_, z, e); }
    // traffic through the self-loop (z, z)
    const Rational& loop(uint64_t z) const { return loop_[z]; }

    const SubsetTables& tables() const { return *t_; }
    const Params& params() const { return pr_; }

private:
    const Rational& at(const std::vector<Rational>& v, uint64_t z, int e) const
    {
        return v[z * static_cast<uint64_t>(m_) + static_cast<uint64_t>(e)];
    }

    const SubsetTables* t_;
    Params pr_;
    int m_;
    std::vector<Rational> ins_;
    std::vector<Rational> del_;
    std::vector<Rational> loop_;
};

// Per-transition traffic bounds for the lifted flow:
//   insertion:  T <= p/(1-p)   * 2 n^4 pi_rc(z)
//   deletion:   T <= (1-2p)/(1-p) * 2 n^4 pi_rc(z)
//   self-loop:  T <= 2 m n^4 pi_rc(z)
struct LiftedTrafficBounds {
    bool ok = true;
    Rational max_ratio; // worst traffic / bound (0/0 counts as satisfied)
    uint64_t worst_z = 0;
    int worst_edge = -1; // -1 marks a self-loop transition
    long transitions = 0;
};

LiftedTrafficBounds check_lifted_traffic_bounds(const LiftedTraffic& lt, Exec exec = Exec::serial);

// Congestion of the lifted flow against the single-bond chain, evaluated
// with the length factor L = 2m (the worst-case trajectory length):
//   rho = max over transitions (z, z') with P(z, z') > 0 of
//         L * traffic(z, z') / (pi_rc(z) P_rc(z, z')).
// Requires p_rc < 1.  The guaranteed envelope is 8 m^2 n^4.
struct CongestionResult {
    Rational rho;
    Rational envelope;   // 8 m^2 n^4
    bool within = false;
    uint64_t worst_z = 0;
    int worst_edge = -1; // -1 marks a self-loop transition
    int length_factor = 0;
};

CongestionResult rc_congestion(const LiftedTraffic& lt, Exec exec = Exec::serial);

// Flow validity: summed trajectory weight between every pair (x, y) of RC
// states equals pi_rc(x) pi_rc(y) (requires q = 2, p_rc = 2 p_even).  The
// same computation without the re-randomization tail must break somewhere;
// a witness pair is reported.  Also re-verifies the step law
// Pr(Z_k = z) = delta(w_k, z) along every lifted path.
struct FlowValidity {
    bool valid = true;          // full flow matches the product measure
    bool marginals_ok = true;   // per-step law holds
    bool truncated_differs = false;
    uint64_t witness_x = 0;
    uint64_t witness_y = 0;
    Rational truncated_value;   // truncated flow mass at the witness
    Rational expected;          // pi_rc(x) pi_rc(y) at the witness
};

FlowValidity check_flow_validity(const SubsetTables& t, const Params& pr,
                                 const CycleInventory& inv, int guard_m = 6);

} // namespace rcmc
