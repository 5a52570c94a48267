#pragma once

#include <cstdint>
#include <vector>

#include "rcmc/exec.hpp"
#include "rcmc/guards.hpp"
#include "rcmc/params.hpp"
#include "rcmc/subset_tables.hpp"

namespace rcmc {

enum class ChainKind { rc_flip, worm_flip, swendsen_wang };

// Dense exact transition matrix of one of the three chains, over an explicit
// state list (edge-subset bitmasks; the worm chain keeps only the states with
// at most two odd vertices).  Rows are built independently, so the parallel
// build is bit-identical to the serial one.
class TransitionMatrix {
public:
    static TransitionMatrix rc_flip(const SubsetTables& t, const Params& pr,
                                    Exec exec = Exec::serial, int guard_m = kMatrixGuardM);
    static TransitionMatrix worm_flip(const SubsetTables& t, const Params& pr,
                                      Exec exec = Exec::serial, int guard_m = kMatrixGuardM);
    // One round of cluster coloring plus edge percolation, viewed on the bond
    // space: stationary for the random-cluster measure but not reversible and
    // not lazy.  Requires q = 2 and p_rc < 1.
    static TransitionMatrix swendsen_wang(const SubsetTables& t, const Params& pr,
                                          Exec exec = Exec::serial, int guard_m = kMatrixGuardM);

    ChainKind kind() const { return kind_; }
    long dim() const { return static_cast<long>(states_.size()); }
    const std::vector<uint64_t>& states() const { return states_; }
    const Rational& at(long i, long j) const { return p_[static_cast<size_t>(i) * states_.size() + static_cast<size_t>(j)]; }
    const Rational& pi(long i) const { return pi_[static_cast<size_t>(i)]; }
    const std::vector<Rational>& pi() const { return pi_; }

    bool rows_stochastic() const;        // every row sums to exactly 1
    bool detailed_balance() const;       // pi_i P_ij == pi_j P_ji
    bool stationary_fixed_point() const; // pi P == pi
    Rational min_diagonal() const;

private:
    TransitionMatrix() = default;

    ChainKind kind_ = ChainKind::rc_flip;
    std::vector<uint64_t> states_;
    std::vector<Rational> p_;  // row-major dim x dim
    std::vector<Rational> pi_; // stationary distribution over states_
};

// ---- exact mixing time by matrix powering ----
//
// tau is the first t at which the worst-start total variation distance
// max_x TV(P^t(x, .), pi) drops to eps; that distance is non-increasing in t,
// so squaring brackets tau and bisection pins it.  Small matrices run in
// rational arithmetic end to end; larger ones (or runaway entry sizes) fall
// back to double precision, where TV comparisons carry the stated tolerance.
struct MixingOptions {
    long max_exact_dim = 16;
    long bit_ceiling = 1L << 15; // per-entry numerator/denominator bit budget
    double tolerance = 1e-12;    // float-mode slack on TV <= eps
    long max_steps = 1L << 40;
};

struct MixingResult {
    long tau = -1;            // worst-start mixing time
    long tau_from_start = -1; // from the designated start state (default: index 0, the empty set)
    bool exact = true;        // stayed rational end to end
    double tolerance = 0.0;   // 0 when exact, MixingOptions::tolerance otherwise
    long dim = 0;
};

MixingResult mixing_time(const TransitionMatrix& M, const Rational& eps,
                         const MixingOptions& opt = {}, Exec exec = Exec::serial,
                         long start_index = 0);

// Mixing-time envelopes (logarithms evaluated in double precision):
//   chain envelope:  8 n^4 m^2 (m ln(1/(1-p)) + ln(1/eps))   with p = p_rc
//   flow envelope:   rho (m ln(1/(1-p)) + ln(1/eps))         for measured rho
// Both need p_rc < 1.
double mixing_envelope(int n, int m, const Params& pr, const Rational& eps);
double flow_envelope(const Rational& rho, int m, const Params& pr, const Rational& eps);

// 1 - lambda_2 of the similarity-symmetrized matrix; meaningful for the two
// reversible flip chains.
double spectral_gap(const TransitionMatrix& M);

// total variation distance (indices must align)
Rational tv_distance(const std::vector<Rational>& a, const std::vector<Rational>& b);
double tv_distance_f(const std::vector<double>& a, const std::vector<double>& b);

} // namespace rcmc
