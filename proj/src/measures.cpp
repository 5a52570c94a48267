#include "rcmc/measures.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "rcmc/errors.hpp"
#include "rcmc/guards.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rcmc {

namespace {

template <class T>
std::vector<T> pow_table(const T& x, int max_e)
{
    std::vector<T> t(static_cast<size_t>(max_e) + 1);
    t[0] = T(1);
    for (int e = 1; e <= max_e; ++e) {
        t[static_cast<size_t>(e)] = t[static_cast<size_t>(e - 1)] * x;
    }
    return t;
}

// Sums term(i) for i in [0, total).  The parallel path splits the range into
// one contiguous block per thread and combines the partials in block order,
// so for rationals it reproduces the serial sum exactly; for doubles the
// grouping differs and callers compare with a tolerance.
template <class T, class Term>
T block_sum(uint64_t total, Exec exec, Term&& term)
{
#ifdef _OPENMP
    if (exec == Exec::parallel && total > 1) {
        const int nt = max_threads(exec);
        std::vector<T> partial(static_cast<size_t>(nt), T{});
#pragma omp parallel num_threads(nt)
        {
            const int tid = omp_get_thread_num();
            const uint64_t lo = total * static_cast<uint64_t>(tid) / static_cast<uint64_t>(nt);
            const uint64_t hi = total * (static_cast<uint64_t>(tid) + 1) / static_cast<uint64_t>(nt);
            T acc{};
            for (uint64_t i = lo; i < hi; ++i) {
                acc += term(i);
            }
            partial[static_cast<size_t>(tid)] = std::move(acc);
        }
        T out{};
        for (auto& p : partial) {
            out += p;
        }
        return out;
    }
#else
    (void)exec;
#endif
    T acc{};
    for (uint64_t i = 0; i < total; ++i) {
        acc += term(i);
    }
    return acc;
}

int aligned_edges(const Graph& g, uint64_t spins)
{
    int c = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
        if ((spins >> g.edge(e).u & 1u) == (spins >> g.edge(e).v & 1u)) {
            ++c;
        }
    }
    return c;
}

} // namespace

Rational bernoulli_weight(const Params& pr, int m, int size)
{
    return rational_pow(pr.p_even(), static_cast<unsigned long>(size))
        * rational_pow(1 - pr.p_even(), static_cast<unsigned long>(m - size));
}

Rational rc_weight(const Params& pr, int m, int size, int kappa)
{
    return rational_pow(pr.p_rc(), static_cast<unsigned long>(size))
        * rational_pow(1 - pr.p_rc(), static_cast<unsigned long>(m - size))
        * rational_pow(pr.q(), static_cast<unsigned long>(kappa));
}

Rational worm_weight(const Params& pr, int n, int m, int size, int odd_count)
{
    if (odd_count == 0) {
        return bernoulli_weight(pr, m, size);
    }
    if (odd_count == 2) {
        return bernoulli_weight(pr, m, size) * Params::worm_penalty(n);
    }
    return Rational(0);
}

Rational ising_partition(const Graph& g, const Rational& beta, Exec exec)
{
    if (g.vertex_count() > kEnumGuardN) {
        throw GuardError("vertex count", g.vertex_count(), kEnumGuardN);
    }
    const auto bp = pow_table(beta, g.edge_count());
    const uint64_t total = uint64_t{1} << g.vertex_count();
    return block_sum<Rational>(total, exec, [&](uint64_t spins) -> Rational {
        return bp[static_cast<size_t>(aligned_edges(g, spins))];
    });
}

Rational rc_partition(const SubsetTables& t, const Params& pr, Exec exec)
{
    const int m = t.graph().edge_count();
    const auto pp = pow_table(pr.p_rc(), m);
    const auto qp = pow_table(Rational(1 - pr.p_rc()), m);
    const auto qq = pow_table(pr.q(), t.graph().vertex_count());
    return block_sum<Rational>(t.size(), exec, [&](uint64_t mask) -> Rational {
        const int sz = std::popcount(mask);
        return pp[static_cast<size_t>(sz)] * qp[static_cast<size_t>(m - sz)]
            * qq[static_cast<size_t>(t.kappa(mask))];
    });
}

Rational even_partition(const SubsetTables& t, const Params& pr, Exec exec)
{
    const int m = t.graph().edge_count();
    const auto pp = pow_table(pr.p_even(), m);
    const auto qp = pow_table(Rational(1 - pr.p_even()), m);
    return block_sum<Rational>(t.size(), exec, [&](uint64_t mask) -> Rational {
        if (!t.is_even(mask)) {
            return Rational(0);
        }
        const int sz = std::popcount(mask);
        return pp[static_cast<size_t>(sz)] * qp[static_cast<size_t>(m - sz)];
    });
}

WormPartition worm_partition(const SubsetTables& t, const Params& pr, Exec exec)
{
    const int m = t.graph().edge_count();
    const auto pp = pow_table(pr.p_even(), m);
    const auto qp = pow_table(Rational(1 - pr.p_even()), m);
    WormPartition w;
    w.z0 = even_partition(t, pr, exec);
    w.z2 = block_sum<Rational>(t.size(), exec, [&](uint64_t mask) -> Rational {
        if (!t.is_two_defect(mask)) {
            return Rational(0);
        }
        const int sz = std::popcount(mask);
        return pp[static_cast<size_t>(sz)] * qp[static_cast<size_t>(m - sz)];
    });
    w.z_worm = w.z0 + w.z2 * Params::worm_penalty(t.graph().vertex_count());
    return w;
}

Rational hole_partition(const SubsetTables& t, const Params& pr, int u, int v)
{
    const Graph& g = t.graph();
    if (u == v || u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count()) {
        throw std::invalid_argument("hole_partition: need two distinct vertices");
    }
    const uint32_t target = (uint32_t{1} << u) | (uint32_t{1} << v);
    const int m = g.edge_count();
    const auto pp = pow_table(pr.p_even(), m);
    const auto qp = pow_table(Rational(1 - pr.p_even()), m);
    Rational z;
    for (uint64_t mask = 0; mask < t.size(); ++mask) {
        if (t.odd_mask(mask) == target) {
            const int sz = std::popcount(mask);
            z += pp[static_cast<size_t>(sz)] * qp[static_cast<size_t>(m - sz)];
        }
    }
    return z;
}

double ising_partition_f(const Graph& g, double beta, Exec exec)
{
    if (g.vertex_count() > kEnumGuardN) {
        throw GuardError("vertex count", g.vertex_count(), kEnumGuardN);
    }
    const auto bp = pow_table(beta, g.edge_count());
    const uint64_t total = uint64_t{1} << g.vertex_count();
    return block_sum<double>(total, exec, [&](uint64_t spins) {
        return bp[static_cast<size_t>(aligned_edges(g, spins))];
    });
}

double rc_partition_f(const SubsetTables& t, const Params& pr, Exec exec)
{
    const int m = t.graph().edge_count();
    const auto pp = pow_table(to_double(pr.p_rc()), m);
    const auto qp = pow_table(to_double(1 - pr.p_rc()), m);
    const auto qq = pow_table(to_double(pr.q()), t.graph().vertex_count());
    return block_sum<double>(t.size(), exec, [&](uint64_t mask) {
        const int sz = std::popcount(mask);
        return pp[static_cast<size_t>(sz)] * qp[static_cast<size_t>(m - sz)]
            * qq[static_cast<size_t>(t.kappa(mask))];
    });
}

double even_partition_f(const SubsetTables& t, const Params& pr, Exec exec)
{
    const int m = t.graph().edge_count();
    const auto pp = pow_table(to_double(pr.p_even()), m);
    const auto qp = pow_table(to_double(1 - pr.p_even()), m);
    return block_sum<double>(t.size(), exec, [&](uint64_t mask) {
        if (!t.is_even(mask)) {
            return 0.0;
        }
        const int sz = std::popcount(mask);
        return pp[static_cast<size_t>(sz)] * qp[static_cast<size_t>(m - sz)];
    });
}

double worm_partition_f(const SubsetTables& t, const Params& pr, Exec exec)
{
    const int m = t.graph().edge_count();
    const int n = t.graph().vertex_count();
    const auto pp = pow_table(to_double(pr.p_even()), m);
    const auto qp = pow_table(to_double(1 - pr.p_even()), m);
    const double pen = 1.0 / (static_cast<double>(n) * n);
    return block_sum<double>(t.size(), exec, [&](uint64_t mask) {
        const int oc = t.odd_count(mask);
        if (oc > 2) {
            return 0.0;
        }
        const int sz = std::popcount(mask);
        const double base = pp[static_cast<size_t>(sz)] * qp[static_cast<size_t>(m - sz)];
        return oc == 0 ? base : base * pen;
    });
}

std::vector<Rational> rc_distribution(const SubsetTables& t, const Params& pr)
{
    const int m = t.graph().edge_count();
    const Rational z = rc_partition(t, pr);
    std::vector<Rational> d(t.size());
    for (uint64_t mask = 0; mask < t.size(); ++mask) {
        d[mask] = rc_weight(pr, m, std::popcount(mask), t.kappa(mask)) / z;
    }
    return d;
}

std::vector<Rational> even_distribution(const SubsetTables& t, const Params& pr)
{
    const int m = t.graph().edge_count();
    const Rational z = even_partition(t, pr);
    std::vector<Rational> d(t.size());
    for (uint64_t mask = 0; mask < t.size(); ++mask) {
        if (t.is_even(mask)) {
            d[mask] = bernoulli_weight(pr, m, std::popcount(mask)) / z;
        }
    }
    return d;
}

std::vector<Rational> worm_distribution(const SubsetTables& t, const Params& pr)
{
    const Graph& g = t.graph();
    const Rational z = worm_partition(t, pr).z_worm;
    std::vector<Rational> d(t.size());
    for (uint64_t mask = 0; mask < t.size(); ++mask) {
        const Rational w = worm_weight(pr, g.vertex_count(), g.edge_count(),
                                       std::popcount(mask), t.odd_count(mask));
        if (w != 0) {
            d[mask] = w / z;
        }
    }
    return d;
}

std::vector<Rational> hat_pi_formula(const SubsetTables& t, const Params& pr)
{
    const Graph& g = t.graph();
    const int n = g.vertex_count();
    const int m = g.edge_count();
    const auto pp = pow_table(pr.p_even(), m);
    const auto qp = pow_table(Rational(1 - 2 * pr.p_even()), m);
    const Rational pen = Params::worm_penalty(n);

    std::vector<Rational> d(t.size());
    Rational total;
    for (uint64_t mask = 0; mask < t.size(); ++mask) {
        const int sz = std::popcount(mask);
        // even subgraphs of (V, mask): 2^(cycle space dimension)
        const Rational ncnt = pow2(sz - n + t.kappa(mask));
        const Rational mixed = ncnt * (1 + pen * t.pair_count(mask));
        d[mask] = pp[static_cast<size_t>(sz)] * qp[static_cast<size_t>(m - sz)] * mixed;
        total += d[mask];
    }
    for (auto& x : d) {
        x /= total;
    }
    return d;
}

std::vector<Rational> hat_pi_convolution(const SubsetTables& t, const Params& pr, int guard_m)
{
    const Graph& g = t.graph();
    const int m = g.edge_count();
    if (m > guard_m) {
        throw GuardError("edge count", m, guard_m);
    }
    const auto pw = worm_distribution(t, pr);
    const Rational pprime = pr.p_prime();
    const auto ap = pow_table(pprime, m);
    const auto bp = pow_table(Rational(1 - pprime), m);

    std::vector<Rational> d(t.size());
    for (uint64_t z = 0; z < t.size(); ++z) {
        const int zs = std::popcount(z);
        Rational acc;
        for (uint64_t w = z;; w = (w - 1) & z) {
            if (pw[w] != 0) {
                acc += pw[w] * ap[static_cast<size_t>(zs - std::popcount(w))]
                    * bp[static_cast<size_t>(m - zs)];
            }
            if (w == 0) {
                break;
            }
        }
        d[z] = acc;
    }
    return d;
}

std::vector<Rational> even_pushforward(const SubsetTables& t, const Params& pr, int guard_m)
{
    const Graph& g = t.graph();
    const int m = g.edge_count();
    if (m > guard_m) {
        throw GuardError("edge count", m, guard_m);
    }
    const auto pe = even_distribution(t, pr);
    const Rational pprime = pr.p_prime();
    const auto ap = pow_table(pprime, m);
    const auto bp = pow_table(Rational(1 - pprime), m);

    std::vector<Rational> d(t.size());
    for (uint64_t z = 0; z < t.size(); ++z) {
        const int zs = std::popcount(z);
        Rational acc;
        for (uint64_t w = z;; w = (w - 1) & z) {
            if (pe[w] != 0) {
                acc += pe[w] * ap[static_cast<size_t>(zs - std::popcount(w))]
                    * bp[static_cast<size_t>(m - zs)];
            }
            if (w == 0) {
                break;
            }
        }
        d[z] = acc;
    }
    return d;
}

DistortionReport hat_distortion_max(const SubsetTables& t, const Params& pr)
{
    if (pr.q() != 2) {
        throw std::invalid_argument("hat_distortion_max: distortion is against the q = 2 measure");
    }
    const auto hat = hat_pi_formula(t, pr);
    const auto rc = rc_distribution(t, pr);

    DistortionReport rep;
    bool any = false;
    for (uint64_t z = 0; z < t.size(); ++z) {
        if (rc[z] == 0) {
            if (hat[z] != 0) {
                rep.absolutely_continuous = false;
            }
            continue;
        }
        const Rational ratio = hat[z] / rc[z];
        if (!any || ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.worst_state = z;
            any = true;
        }
    }
    rep.within = rep.absolutely_continuous && rep.max_ratio <= Rational(3, 2);
    return rep;
}

bool even_count_check(const SubsetTables& t, int guard_m)
{
    const Graph& g = t.graph();
    const int n = g.vertex_count();
    const int m = g.edge_count();
    if (m > guard_m) {
        throw GuardError("edge count", m, guard_m);
    }
    for (uint64_t r = 0; r < t.size(); ++r) {
        BigInt even_cnt = 0;
        std::vector<BigInt> pair_cnt(static_cast<size_t>(n) * static_cast<size_t>(n));
        for (uint64_t s = r;; s = (s - 1) & r) {
            if (t.is_even(s)) {
                ++even_cnt;
            } else if (t.is_two_defect(s)) {
                const uint32_t om = t.odd_mask(s);
                const int u = std::countr_zero(om);
                const int v = 31 - std::countl_zero(om);
                ++pair_cnt[static_cast<size_t>(u) * static_cast<size_t>(n) + static_cast<size_t>(v)];
            }
            if (s == 0) {
                break;
            }
        }
        const BigInt expected = BigInt(1) << (std::popcount(r) - n + t.kappa(r));
        if (even_cnt != expected) {
            return false;
        }
        const auto labels = component_labels(g, EdgeSubset::from_mask(m, r));
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                const BigInt want = labels[static_cast<size_t>(u)] == labels[static_cast<size_t>(v)]
                    ? expected : BigInt(0);
                if (pair_cnt[static_cast<size_t>(u) * static_cast<size_t>(n) + static_cast<size_t>(v)] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

EquivalenceReport verify_equivalence(const SubsetTables& t, const Params& pr, Exec exec)
{
    if (!pr.beta()) {
        throw std::invalid_argument("verify_equivalence: needs finite beta (p_rc < 1)");
    }
    if (pr.q() != 2) {
        throw std::invalid_argument("verify_equivalence: identity holds at q = 2");
    }
    const Graph& g = t.graph();
    EquivalenceReport rep;
    rep.z_ising = ising_partition(g, *pr.beta(), exec);
    rep.z_rc = rc_partition(t, pr, exec);
    rep.z_even = even_partition(t, pr, exec);
    const Rational bm = rational_pow(*pr.beta(), static_cast<unsigned long>(g.edge_count()));
    rep.rc_scaled = bm * rep.z_rc;
    rep.even_scaled = pow2(g.vertex_count()) * bm * rep.z_even;
    rep.ok = rep.z_ising == rep.rc_scaled && rep.z_ising == rep.even_scaled;
    return rep;
}

} // namespace rcmc
