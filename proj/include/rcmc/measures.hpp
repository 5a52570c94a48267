#pragma once

#include <vector>

#include "rcmc/exec.hpp"
#include "rcmc/params.hpp"
#include "rcmc/subset_tables.hpp"

namespace rcmc {

// ---- per-state weights (unnormalized) ----

// i.i.d. edge weight p^size (1-p)^(m-size) at p = p_even.
Rational bernoulli_weight(const Params& pr, int m, int size);

// random-cluster weight p_rc^size (1-p_rc)^(m-size) q^kappa.
Rational rc_weight(const Params& pr, int m, int size, int kappa);

// worm weight: bernoulli_weight times 1 (even), 1/n^2 (two defects), 0 else.
Rational worm_weight(const Params& pr, int n, int m, int size, int odd_count);

// ---- partition functions (exact rationals) ----

// Sum over all 2^n spin assignments of beta^(#aligned edges).  Guarded by n.
Rational ising_partition(const Graph& g, const Rational& beta, Exec exec = Exec::serial);

Rational rc_partition(const SubsetTables& t, const Params& pr, Exec exec = Exec::serial);
Rational even_partition(const SubsetTables& t, const Params& pr, Exec exec = Exec::serial);

struct WormPartition {
    Rational z0;     // even subgraphs
    Rational z2;     // two-defect subgraphs
    Rational z_worm; // z0 + z2 / n^2
};
WormPartition worm_partition(const SubsetTables& t, const Params& pr, Exec exec = Exec::serial);

// Z_{u,v}: bernoulli mass of subsets whose odd-degree set is exactly {u, v}.
Rational hole_partition(const SubsetTables& t, const Params& pr, int u, int v);

// ---- float kernels (same sums in double precision) ----

double ising_partition_f(const Graph& g, double beta, Exec exec = Exec::serial);
double rc_partition_f(const SubsetTables& t, const Params& pr, Exec exec = Exec::serial);
double even_partition_f(const SubsetTables& t, const Params& pr, Exec exec = Exec::serial);
double worm_partition_f(const SubsetTables& t, const Params& pr, Exec exec = Exec::serial);

// ---- distributions over edge-subset bitmasks (exact, normalized) ----

std::vector<Rational> rc_distribution(const SubsetTables& t, const Params& pr);
std::vector<Rational> even_distribution(const SubsetTables& t, const Params& pr); // zero off even sets
std::vector<Rational> worm_distribution(const SubsetTables& t, const Params& pr); // zero off worm states

// ---- smoothed projection of the worm measure ----
//
// Re-randomizing every edge outside a worm state w independently with odds
// p' = p/(1-p) maps pi_worm to a distribution over all subsets z.  Two exact
// routes to the same vector:
//   closed form:  pi_hat(z) ∝ p^|z| (1-2p)^(m-|z|) (N(z) + N'(z)/n^2)
//                 with N(z) = 2^(|z| - n + kappa(z)), N'(z) = N(z) pair_count(z)
//   convolution:  pi_hat(z) = sum over worm states w ⊆ z of
//                 pi_worm(w) p'^(|z|-|w|) (1-p')^(m-|z|)
std::vector<Rational> hat_pi_formula(const SubsetTables& t, const Params& pr);
std::vector<Rational> hat_pi_convolution(const SubsetTables& t, const Params& pr, int guard_m = 16);

// Verifies the counting identities behind the closed form on every subset r:
// the even subsets of r number 2^(|r| - n + kappa(r)), and the subsets of r
// with odd set {u, v} number the same when u, v share a component, else 0.
bool even_count_check(const SubsetTables& t, int guard_m = 16);

// Pushforward of pi_even alone under the same edge re-randomization.  At
// q = 2 this lands exactly on the random-cluster distribution with edge
// probability 2p, which is what couples the two chains.
std::vector<Rational> even_pushforward(const SubsetTables& t, const Params& pr, int guard_m = 16);

// ---- distortion of the smoothed projection against the RC measure ----

struct DistortionReport {
    Rational max_ratio;        // max over states of pi_hat / pi_rc
    uint64_t worst_state = 0;
    bool absolutely_continuous = true; // pi_hat vanishes wherever pi_rc does
    bool within = false;               // max_ratio <= 3/2
};

// Requires q = 2.  pi_hat is taken from the closed form; states with
// pi_rc = 0 must carry no pi_hat mass (checked, never divided by).
DistortionReport hat_distortion_max(const SubsetTables& t, const Params& pr);

// ---- the three-model partition identity ----

struct EquivalenceReport {
    Rational z_ising;
    Rational z_rc;
    Rational z_even;
    Rational rc_scaled;   // beta^m * z_rc
    Rational even_scaled; // 2^n * beta^m * z_even
    bool ok = false;      // z_ising == rc_scaled == even_scaled
};

// Requires q = 2 and a finite beta (p_rc < 1).
EquivalenceReport verify_equivalence(const SubsetTables& t, const Params& pr, Exec exec = Exec::serial);

} // namespace rcmc
