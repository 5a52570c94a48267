#pragma once

#include <optional>

#include "rcmc/rational.hpp"

namespace rcmc {

// One parameter point seen through the three equivalent models.  The exact
// relations are
//     p_rc   = 1 - 1/beta        (so beta = 1/(1 - p_rc), beta > 1)
//     p_even = p_rc / 2
// and they are kept as rationals so every derived quantity stays exact.
// beta is absent exactly when p_rc = 1 (the beta -> infinity endpoint).
class Params {
public:
    static Params from_beta(const Rational& beta, const Rational& q = 2);
    static Params from_p_rc(const Rational& p_rc, const Rational& q = 2);
    static Params from_p_even(const Rational& p_even, const Rational& q = 2);

    const Rational& q() const { return q_; }
    const Rational& p_rc() const { return p_rc_; }
    const Rational& p_even() const { return p_even_; }
    const std::optional<Rational>& beta() const { return beta_; }

    // p' = p_even / (1 - p_even), the per-edge odds used by the lifted
    // re-randomization kernel.  Lies in (0, 1]; equals 1 iff p_even = 1/2.
    Rational p_prime() const { return p_even_ / (1 - p_even_); }

    // 1/n^2 down-weighting of the two-defect stratum.
    static Rational worm_penalty(int n);

private:
    Params() = default;

    Rational q_;
    Rational p_rc_;
    Rational p_even_;
    std::optional<Rational> beta_;
};

} // namespace rcmc
