#include "rcmc/canonical_paths.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <tuple>

#include "rcmc/chains.hpp"
#include "rcmc/errors.hpp"
#include "rcmc/measures.hpp"

namespace rcmc {

namespace {

// best (= largest ratio) transition seen so far, with deterministic
// tie-breaking on (state, edge) so parallel scans reproduce the serial pick
struct Worst {
    Rational ratio;
    uint64_t state = 0;
    int edge = -1;
    bool any = false;

    void offer(const Rational& r, uint64_t z, int e)
    {
        if (!any || r > ratio || (r == ratio && std::tie(z, e) < std::tie(state, edge))) {
            ratio = r;
            state = z;
            edge = e;
            any = true;
        }
    }

    void merge(const Worst& o)
    {
        if (o.any) {
            offer(o.ratio, o.state, o.edge);
        }
    }
};

// (p')^k table plus (1-p')^k table up to m
struct PrimePowers {
    std::vector<Rational> up;
    std::vector<Rational> down;

    PrimePowers(const Params& pr, int m)
    {
        const Rational pp = pr.p_prime();
        const Rational om = 1 - pp;
        up.resize(static_cast<size_t>(m) + 1);
        down.resize(static_cast<size_t>(m) + 1);
        up[0] = 1;
        down[0] = 1;
        for (int k = 1; k <= m; ++k) {
            up[static_cast<size_t>(k)] = up[static_cast<size_t>(k - 1)] * pp;
            down[static_cast<size_t>(k)] = down[static_cast<size_t>(k - 1)] * om;
        }
    }

    Rational delta(int w_size, int z_size, int m) const
    {
        return up[static_cast<size_t>(z_size - w_size)] * down[static_cast<size_t>(m - z_size)];
    }
};

} // namespace

Rational delta_weight(const Params& pr, int m, int w_size, int z_size)
{
    if (w_size > z_size || z_size > m) {
        throw std::invalid_argument("delta_weight: need w_size <= z_size <= m");
    }
    const Rational pp = pr.p_prime();
    return rational_pow(pp, z_size - w_size) * rational_pow(1 - pp, m - z_size);
}

WormPath worm_path(const Graph& g, const CycleInventory& inv, uint64_t I, uint64_t F)
{
    const int m = g.edge_count();
    const auto cover = even_decomposition(g, EdgeSubset::from_mask(m, I ^ F), inv);
    const auto order = unwinding_order(cover);

    WormPath p;
    p.states.reserve(order.size() + 1);
    p.states.push_back(I);
    uint64_t cur = I;
    for (int e : order) {
        cur ^= uint64_t{1} << e;
        p.states.push_back(cur);
    }
    p.flips = order;
    return p;
}

uint64_t encode_pair(uint64_t I, uint64_t F, uint64_t w)
{
    return I ^ F ^ w;
}

std::optional<std::pair<uint64_t, uint64_t>> decode_pair(
    const Graph& g, const CycleInventory& inv, uint64_t w, int e, uint64_t U)
{
    const int m = g.edge_count();
    const uint64_t diff = w ^ U;
    if (!(diff >> e & 1u)) {
        return std::nullopt;
    }
    const EdgeSubset ds = EdgeSubset::from_mask(m, diff);
    if (odd_vertex_count(g, ds) != 0) {
        return std::nullopt;
    }
    const auto order = unwinding_order(even_decomposition(g, ds, inv));

    // edges before e's position have already been unwound: they are in their
    // final state in w and their initial state in U
    uint64_t prefix = 0;
    for (int f : order) {
        if (f == e) {
            const uint64_t I = w ^ prefix;
            const uint64_t F = I ^ diff;
            if (odd_vertex_count(g, EdgeSubset::from_mask(m, I)) != 0) {
                return std::nullopt;
            }
            return std::make_pair(I, F);
        }
        prefix |= uint64_t{1} << f;
    }
    return std::nullopt;
}

// ---- WormFlow ----

WormFlow::WormFlow(const SubsetTables& t, const Params& pr, const CycleInventory& inv)
    : t_(&t), pr_(pr), m_(t.graph().edge_count())
{
    if (m_ > 16) {
        throw GuardError("edge count", m_, 16);
    }
    const uint64_t total = t.size();
    traffic_.assign(total * static_cast<uint64_t>(m_), Rational(0));
    even_ = even_distribution(t, pr);

    std::vector<uint64_t> evens;
    for (uint64_t mask = 0; mask < total; ++mask) {
        if (t.is_even(mask)) {
            evens.push_back(mask);
        }
    }

    std::vector<uint64_t> sorted;
    for (uint64_t I : evens) {
        for (uint64_t F : evens) {
            const WormPath path = worm_path(t.graph(), inv, I, F);
            ++paths_;
            const int len = static_cast<int>(path.flips.size());
            max_len_ = std::max(max_len_, len);
            if (len > m_) {
                len_ok_ = false;
            }
            for (uint64_t s : path.states) {
                if (!t.is_worm_state(s)) {
                    states_ok_ = false;
                }
            }
            sorted = path.states;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                no_repeat_ = false;
            }
            const Rational wt = even_[I] * even_[F];
            for (int k = 0; k < len; ++k) {
                traffic_[path.states[static_cast<size_t>(k)] * static_cast<uint64_t>(m_)
                         + static_cast<uint64_t>(path.flips[static_cast<size_t>(k)])] += wt;
            }
        }
    }
}

// ---- certificates ----

WormCertificates check_worm_certificates(const WormFlow& flow, Exec exec)
{
    const SubsetTables& t = flow.tables();
    const Params& pr = flow.params();
    const Graph& g = t.graph();
    const int m = g.edge_count();
    const int n = g.vertex_count();
    const auto pw = worm_distribution(t, pr);
    const Rational n4 = rational_pow(Rational(n), 4);
    const Rational pfrac = pr.p_prime(); // p/(1-p)

    const int64_t total = static_cast<int64_t>(t.size());
    const int nt = max_threads(exec);
    std::vector<Worst> worst(static_cast<size_t>(nt));
    std::vector<long> counts(static_cast<size_t>(nt), 0);
    std::vector<uint8_t> violated(static_cast<size_t>(nt), 0);

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int64_t w = 0; w < total; ++w) {
        const int tid = thread_index();
        if (!t.is_worm_state(static_cast<uint64_t>(w))) {
            continue; // traffic off the worm space is identically zero
        }
        for (int e = 0; e < m; ++e) {
            const Rational& tr = flow.traffic(static_cast<uint64_t>(w), e);
            if (tr == 0) {
                continue;
            }
            ++counts[static_cast<size_t>(tid)];
            Rational bound = n4 * pw[static_cast<uint64_t>(w)];
            if (!(static_cast<uint64_t>(w) >> e & 1u)) {
                bound *= pfrac; // insertions satisfy the tighter bound
            }
            if (bound == 0) {
                violated[static_cast<size_t>(tid)] = 1;
                continue;
            }
            worst[static_cast<size_t>(tid)].offer(tr / bound, static_cast<uint64_t>(w), e);
        }
    }

    WormCertificates out;
    Worst best;
    for (int i = 0; i < nt; ++i) {
        best.merge(worst[static_cast<size_t>(i)]);
        out.transitions += counts[static_cast<size_t>(i)];
        if (violated[static_cast<size_t>(i)] != 0) {
            out.ok = false;
        }
    }
    if (best.any) {
        out.max_ratio = best.ratio;
        out.worst_state = best.state;
        out.worst_edge = best.edge;
        if (best.ratio > 1) {
            out.ok = false;
        }
    }
    return out;
}

EncodingCheck check_encoding(const SubsetTables& t, const Params& pr, const CycleInventory& inv)
{
    const Graph& g = t.graph();
    const int m = g.edge_count();
    EncodingCheck out;

    std::vector<uint64_t> evens;
    for (uint64_t mask = 0; mask < t.size(); ++mask) {
        if (t.is_even(mask)) {
            evens.push_back(mask);
        }
    }

    // (w, e, U) -> (I, F): a second pair hitting the same key is a collision
    std::map<std::tuple<uint64_t, int, uint64_t>, std::pair<uint64_t, uint64_t>> seen;
    for (uint64_t I : evens) {
        for (uint64_t F : evens) {
            const WormPath path = worm_path(g, inv, I, F);
            for (size_t k = 0; k < path.flips.size(); ++k) {
                const uint64_t w = path.states[k];
                const int e = path.flips[k];
                const uint64_t U = encode_pair(I, F, w);
                ++out.checked;

                if (!t.is_worm_state(U)) {
                    out.in_worm_space = false;
                }
                auto [it, fresh] = seen.try_emplace({w, e, U}, std::make_pair(I, F));
                if (!fresh && it->second != std::make_pair(I, F)) {
                    out.injective = false;
                }
                const auto dec = decode_pair(g, inv, w, e, U);
                if (!dec || dec->first != I || dec->second != F) {
                    out.decodes = false;
                }
                // per-edge membership multiset of {I, F} matches {w, U}
                const Rational lhs = bernoulli_weight(pr, m, std::popcount(I))
                    * bernoulli_weight(pr, m, std::popcount(F));
                const Rational rhs = bernoulli_weight(pr, m, std::popcount(w))
                    * bernoulli_weight(pr, m, std::popcount(U));
                if (lhs != rhs) {
                    out.weight_identity = false;
                }
            }
        }
    }
    return out;
}

// ---- LiftedTraffic ----

LiftedTraffic::LiftedTraffic(const WormFlow& flow, Exec exec)
    : t_(&flow.tables()), pr_(flow.params()), m_(t_->graph().edge_count())
{
#ifndef _OPENMP
    (void)exec;
#endif
    const SubsetTables& t = *t_;
    const uint64_t total = t.size();
    ins_.assign(total * static_cast<uint64_t>(m_), Rational(0));
    del_.assign(total * static_cast<uint64_t>(m_), Rational(0));
    loop_.assign(total, Rational(0));

    const PrimePowers pw(pr_, m_);
    const Rational pp = pr_.p_prime();
    const Rational omp_ = 1 - pp;
    const int m = m_;
    const int64_t itotal = static_cast<int64_t>(total);

#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::parallel)
    for (int64_t zi = 0; zi < itotal; ++zi) {
        const uint64_t z = static_cast<uint64_t>(zi);
        const int zs = std::popcount(z);
        Rational loop_acc(0);
        // accumulate over all worm states w below z
        for (uint64_t w = z;; w = (w - 1) & z) {
            if (t.is_worm_state(w)) {
                const Rational d = pw.delta(std::popcount(w), zs, m);
                const Rational& em = flow.end_mass(w); // pi_even(w), zero off evens

                for (int e = 0; e < m; ++e) {
                    if (z >> e & 1u) {
                        if (w >> e & 1u) {
                            // deletion of e at w: off-diagonal branch and the
                            // held branch through (z, z)
                            const Rational& tr = flow.traffic(w, e);
                            if (tr != 0) {
                                del_[z * static_cast<uint64_t>(m) + static_cast<uint64_t>(e)]
                                    += omp_ * d * tr;
                                loop_acc += pp * d * tr;
                            }
                        } else {
                            // insertion of e at w while z already carries e
                            const Rational& tr = flow.traffic(w, e);
                            if (tr != 0) {
                                loop_acc += d * tr;
                            }
                        }
                    } else {
                        // e outside z (hence outside w): insertion crosses
                        // (z, z + e) deterministically
                        const Rational& tr = flow.traffic(w, e);
                        if (tr != 0) {
                            ins_[z * static_cast<uint64_t>(m) + static_cast<uint64_t>(e)] += d * tr;
                        }
                    }
                }

                if (em != 0) {
                    // tail re-randomization of paths ending at w
                    const int held_in = zs - std::popcount(w); // edges of z \ w
                    const int held_out = m - zs;               // edges outside z
                    loop_acc += d * em * (pp * held_in + omp_ * held_out);
                    for (int e = 0; e < m; ++e) {
                        if (w >> e & 1u) {
                            continue;
                        }
                        if (z >> e & 1u) {
                            del_[z * static_cast<uint64_t>(m) + static_cast<uint64_t>(e)]
                                += omp_ * d * em;
                        } else {
                            ins_[z * static_cast<uint64_t>(m) + static_cast<uint64_t>(e)]
                                += pp * d * em;
                        }
                    }
                }
            }
            if (w == 0) {
                break;
            }
        }
        loop_[z] = loop_acc;
    }
}

LiftedTrafficBounds check_lifted_traffic_bounds(const LiftedTraffic& lt, Exec exec)
{
    const SubsetTables& t = lt.tables();
    const Params& pr = lt.params();
    const Graph& g = t.graph();
    const int m = g.edge_count();
    const int n = g.vertex_count();
    const auto prc = rc_distribution(t, pr);
    const Rational n4 = rational_pow(Rational(n), 4);
    const Rational pp = pr.p_prime();
    const Rational ins_coef = pp * 2 * n4;
    const Rational del_coef = (1 - pp) * 2 * n4;
    const Rational loop_coef = Rational(2 * m) * n4;

    const int64_t total = static_cast<int64_t>(t.size());
    const int nt = max_threads(exec);
    std::vector<Worst> worst(static_cast<size_t>(nt));
    std::vector<long> counts(static_cast<size_t>(nt), 0);
    std::vector<uint8_t> violated(static_cast<size_t>(nt), 0);

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int64_t zi = 0; zi < total; ++zi) {
        const uint64_t z = static_cast<uint64_t>(zi);
        const int tid = thread_index();
        auto consider = [&](const Rational& tr, const Rational& bound, int e) {
            if (tr == 0) {
                return;
            }
            ++counts[static_cast<size_t>(tid)];
            if (bound == 0) {
                violated[static_cast<size_t>(tid)] = 1;
                return;
            }
            worst[static_cast<size_t>(tid)].offer(tr / bound, z, e);
        };
        for (int e = 0; e < m; ++e) {
            if (z >> e & 1u) {
                consider(lt.erase(z, e), del_coef * prc[z], e);
            } else {
                consider(lt.insert(z, e), ins_coef * prc[z], e);
            }
        }
        consider(lt.loop(z), loop_coef * prc[z], -1);
    }

    LiftedTrafficBounds out;
    Worst best;
    for (int i = 0; i < nt; ++i) {
        best.merge(worst[static_cast<size_t>(i)]);
        out.transitions += counts[static_cast<size_t>(i)];
        if (violated[static_cast<size_t>(i)] != 0) {
            out.ok = false;
        }
    }
    if (best.any) {
        out.max_ratio = best.ratio;
        out.worst_z = best.state;
        out.worst_edge = best.edge;
        if (best.ratio > 1) {
            out.ok = false;
        }
    }
    return out;
}

CongestionResult rc_congestion(const LiftedTraffic& lt, Exec exec)
{
    const SubsetTables& t = lt.tables();
    const Params& pr = lt.params();
    const Graph& g = t.graph();
    if (pr.p_rc() >= 1) {
        throw std::invalid_argument("rc_congestion: needs p_rc < 1");
    }
    const int m = g.edge_count();
    const int n = g.vertex_count();
    const auto prc = rc_distribution(t, pr);
    const int L = 2 * m;

    const int64_t total = static_cast<int64_t>(t.size());
    const int nt = max_threads(exec);
    std::vector<Worst> worst(static_cast<size_t>(nt));

#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::parallel)
    for (int64_t zi = 0; zi < total; ++zi) {
        const uint64_t z = static_cast<uint64_t>(zi);
        const int tid = thread_index();
        const EdgeSubset zs = EdgeSubset::from_mask(m, z);
        Rational diag(1);
        for (int e = 0; e < m; ++e) {
            const Rational ratio = rc_flip_ratio(g, pr, zs, e);
            const Rational pzz = Rational(1, 2 * m) * (ratio < 1 ? ratio : Rational(1));
            diag -= pzz;
            const Rational& tr = z >> e & 1u ? lt.erase(z, e) : lt.insert(z, e);
            if (tr != 0) {
                worst[static_cast<size_t>(tid)].offer(L * tr / (prc[z] * pzz), z, e);
            }
        }
        if (lt.loop(z) != 0) {
            worst[static_cast<size_t>(tid)].offer(L * lt.loop(z) / (prc[z] * diag), z, -1);
        }
    }

    Worst best;
    for (int i = 0; i < nt; ++i) {
        best.merge(worst[static_cast<size_t>(i)]);
    }

    CongestionResult out;
    out.length_factor = L;
    out.envelope = Rational(8) * Rational(m) * m * rational_pow(Rational(n), 4);
    if (best.any) {
        out.rho = best.ratio;
        out.worst_z = best.state;
        out.worst_edge = best.edge;
    }
    out.within = out.rho <= out.envelope;
    return out;
}

// ---- flow validity ----

namespace {

// one lifted move applied to a distribution over supersets
void apply_insertion(std::vector<Rational>& v, int e, std::vector<Rational>& tmp)
{
    const uint64_t bit = uint64_t{1} << e;
    tmp.assign(v.size(), Rational(0));
    for (uint64_t z = 0; z < v.size(); ++z) {
        if (v[z] != 0) {
            tmp[z | bit] += v[z];
        }
    }
    v.swap(tmp);
}

void apply_deletion(std::vector<Rational>& v, int e, const Rational& pp, std::vector<Rational>& tmp)
{
    const uint64_t bit = uint64_t{1} << e;
    const Rational omp_ = 1 - pp;
    tmp.assign(v.size(), Rational(0));
    for (uint64_t z = 0; z < v.size(); ++z) {
        if (v[z] == 0) {
            continue;
        }
        if (z & bit) {
            tmp[z] += pp * v[z];
            tmp[z & ~bit] += omp_ * v[z];
        } else {
            tmp[z] += v[z];
        }
    }
    v.swap(tmp);
}

void apply_tail(std::vector<Rational>& v, int e, const Rational& pp, std::vector<Rational>& tmp)
{
    const uint64_t bit = uint64_t{1} << e;
    const Rational omp_ = 1 - pp;
    tmp.assign(v.size(), Rational(0));
    for (uint64_t z = 0; z < v.size(); ++z) {
        if (v[z] == 0) {
            continue;
        }
        tmp[z | bit] += pp * v[z];
        tmp[z & ~bit] += omp_ * v[z];
    }
    v.swap(tmp);
}

} // namespace

FlowValidity check_flow_validity(const SubsetTables& t, const Params& pr,
                                 const CycleInventory& inv, int guard_m)
{
    const Graph& g = t.graph();
    const int m = g.edge_count();
    if (m > guard_m) {
        throw GuardError("edge count", m, guard_m);
    }
    if (pr.q() != 2) {
        throw std::invalid_argument("check_flow_validity: the product target needs q = 2");
    }

    const uint64_t total = t.size();
    const auto pe = even_distribution(t, pr);
    const auto prc = rc_distribution(t, pr);
    const PrimePowers pw(pr, m);
    const Rational pp = pr.p_prime();

    std::vector<Rational> full(total * total, Rational(0));
    std::vector<Rational> trunc(total * total, Rational(0));

    std::vector<uint64_t> evens;
    for (uint64_t mask = 0; mask < total; ++mask) {
        if (t.is_even(mask)) {
            evens.push_back(mask);
        }
    }

    FlowValidity out;
    std::vector<Rational> v, tmp;

    for (uint64_t I : evens) {
        for (uint64_t F : evens) {
            const Rational wt = pe[I] * pe[F];
            const WormPath path = worm_path(g, inv, I, F);
            std::vector<int> tail;
            for (int e = 0; e < m; ++e) {
                if (!(F >> e & 1u)) {
                    tail.push_back(e);
                }
            }

            // step law: starting from delta(I, .), the distribution after
            // main step k must be delta(w_k, .), and delta(F, .) under the tail
            v.assign(total, Rational(0));
            for (uint64_t z = 0; z < total; ++z) {
                if ((z & I) == I) {
                    v[z] = pw.delta(std::popcount(I), std::popcount(z), m);
                }
            }
            auto check_marginal = [&](uint64_t wk) {
                for (uint64_t z = 0; z < total; ++z) {
                    const Rational want = (z & wk) == wk
                        ? pw.delta(std::popcount(wk), std::popcount(z), m)
                        : Rational(0);
                    if (v[z] != want) {
                        out.marginals_ok = false;
                        return;
                    }
                }
            };
            for (size_t k = 0; k < path.flips.size(); ++k) {
                const uint64_t prev = path.states[k];
                const int e = path.flips[k];
                if (prev >> e & 1u) {
                    apply_deletion(v, e, pp, tmp);
                } else {
                    apply_insertion(v, e, tmp);
                }
                check_marginal(path.states[k + 1]);
            }
            for (int e : tail) {
                apply_tail(v, e, pp, tmp);
                check_marginal(F);
            }

            // joint flow mass per (start, end) pair
            for (uint64_t x = 0; x < total; ++x) {
                if ((x & I) != I) {
                    continue;
                }
                const Rational dx = wt * pw.delta(std::popcount(I), std::popcount(x), m);
                v.assign(total, Rational(0));
                v[x] = 1;
                for (size_t k = 0; k < path.flips.size(); ++k) {
                    const uint64_t prev = path.states[k];
                    const int e = path.flips[k];
                    if (prev >> e & 1u) {
                        apply_deletion(v, e, pp, tmp);
                    } else {
                        apply_insertion(v, e, tmp);
                    }
                }
                for (uint64_t y = 0; y < total; ++y) {
                    if (v[y] != 0) {
                        trunc[x * total + y] += dx * v[y];
                    }
                }
                for (int e : tail) {
                    apply_tail(v, e, pp, tmp);
                }
                for (uint64_t y = 0; y < total; ++y) {
                    if (v[y] != 0) {
                        full[x * total + y] += dx * v[y];
                    }
                }
            }
        }
    }

    for (uint64_t x = 0; x < total && out.valid; ++x) {
        for (uint64_t y = 0; y < total; ++y) {
            if (full[x * total + y] != prc[x] * prc[y]) {
                out.valid = false;
                break;
            }
        }
    }
    for (uint64_t x = 0; x < total && !out.truncated_differs; ++x) {
        for (uint64_t y = 0; y < total; ++y) {
            const Rational expect = prc[x] * prc[y];
            if (trunc[x * total + y] != expect) {
                out.truncated_differs = true;
                out.witness_x = x;
                out.witness_y = y;
                out.truncated_value = trunc[x * total + y];
                out.expected = expect;
                break;
            }
        }
    }
    return out;
}

} // namespace rcmc
