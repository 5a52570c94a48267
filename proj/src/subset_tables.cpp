#include "rcmc/subset_tables.hpp"

#include <bit>

#include "rcmc/errors.hpp"

namespace rcmc {

namespace {

// Runs one union-find over the edges of `mask`, reporting component count
// (isolated vertices included) and sum over components of C(size, 2).
void scan_components(const Graph& g, uint64_t mask, int& kappa, int& pairs)
{
    const int n = g.vertex_count();
    int parent[64];
    int size[64];
    for (int v = 0; v < n; ++v) {
        parent[v] = v;
        size[v] = 1;
    }
    auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    kappa = n;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(mask >> e & 1u)) {
            continue;
        }
        int a = find(g.edge(e).u);
        int b = find(g.edge(e).v);
        if (a == b) {
            continue;
        }
        if (size[a] < size[b]) {
            std::swap(a, b);
        }
        parent[b] = a;
        size[a] += size[b];
        --kappa;
    }
    pairs = 0;
    for (int v = 0; v < n; ++v) {
        if (find(v) == v) {
            pairs += size[v] * (size[v] - 1) / 2;
        }
    }
}

} // namespace

SubsetTables::SubsetTables(const Graph& g, Exec exec, int guard_m)
    : g_(&g)
{
    if (g.edge_count() > guard_m) {
        throw GuardError("edge count", g.edge_count(), guard_m);
    }
    if (g.vertex_count() > kEnumGuardN) {
        throw GuardError("vertex count", g.vertex_count(), kEnumGuardN);
    }

    const uint64_t total = size();
    kappa_.resize(total);
    odd_mask_.resize(total);
    odd_count_.resize(total);
    pair_count_.resize(total);

    std::vector<uint32_t> par(static_cast<size_t>(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) {
        par[static_cast<size_t>(e)] =
            (uint32_t{1} << g.edge(e).u) ^ (uint32_t{1} << g.edge(e).v);
    }

    if (exec == Exec::serial) {
        fill_odd_serial(par);
    } else {
        fill_odd_parallel(par);
    }
    fill_components(exec);
}

void SubsetTables::fill_odd_serial(const std::vector<uint32_t>& par)
{
    odd_mask_[0] = 0;
    odd_count_[0] = 0;
    const uint64_t total = size();
    for (uint64_t mask = 1; mask < total; ++mask) {
        const uint64_t low = mask & (~mask + 1);
        const int e = std::countr_zero(low);
        const uint32_t om = odd_mask_[mask ^ low] ^ par[static_cast<size_t>(e)];
        odd_mask_[mask] = om;
        odd_count_[mask] = static_cast<uint8_t>(std::popcount(om));
    }
}

void SubsetTables::fill_odd_parallel(const std::vector<uint32_t>& par)
{
    const int64_t total = static_cast<int64_t>(size());
    const int m = g_->edge_count();
#pragma omp parallel for schedule(static)
    for (int64_t mask = 0; mask < total; ++mask) {
        uint32_t om = 0;
        for (int e = 0; e < m; ++e) {
            if (mask >> e & 1) {
                om ^= par[static_cast<size_t>(e)];
            }
        }
        odd_mask_[mask] = om;
        odd_count_[mask] = static_cast<uint8_t>(std::popcount(om));
    }
}

void SubsetTables::fill_components(Exec exec)
{
#ifndef _OPENMP
    (void)exec;
#endif
    const int64_t total = static_cast<int64_t>(size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int64_t mask = 0; mask < total; ++mask) {
        int kappa = 0;
        int pairs = 0;
        scan_components(*g_, static_cast<uint64_t>(mask), kappa, pairs);
        kappa_[mask] = static_cast<uint8_t>(kappa);
        pair_count_[mask] = static_cast<uint16_t>(pairs);
    }
}

} // namespace rcmc
