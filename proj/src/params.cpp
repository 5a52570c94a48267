#include "rcmc/params.hpp"

#include <stdexcept>

namespace rcmc {

namespace {

void check_q(const Rational& q)
{
    if (q <= 0) {
        throw std::invalid_argument("params: q must be positive");
    }
}

} // namespace

Params Params::from_p_rc(const Rational& p_rc, const Rational& q)
{
    check_q(q);
    if (p_rc <= 0 || p_rc > 1) {
        throw std::invalid_argument("params: p_rc must lie in (0, 1]");
    }
    Params p;
    p.q_ = q;
    p.p_rc_ = p_rc;
    p.p_even_ = p_rc / 2;
    if (p_rc < 1) {
        p.beta_ = 1 / (1 - p_rc);
    }
    return p;
}

Params Params::from_p_even(const Rational& p_even, const Rational& q)
{
    if (p_even <= 0 || p_even > Rational(1, 2)) {
        throw std::invalid_argument("params: p_even must lie in (0, 1/2]");
    }
    return from_p_rc(2 * p_even, q);
}

Params Params::from_beta(const Rational& beta, const Rational& q)
{
    if (beta <= 1) {
        throw std::invalid_argument("params: beta must exceed 1");
    }
    return from_p_rc(1 - 1 / beta, q);
}

Rational Params::worm_penalty(int n)
{
    if (n <= 0) {
        throw std::invalid_argument("params: worm penalty needs n > 0");
    }
    return Rational(1, BigInt(n) * n);
}

} // namespace rcmc
