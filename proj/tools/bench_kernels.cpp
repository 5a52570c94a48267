// Times every OpenMP kernel against its serial reference implementation and
// verifies that the two produce identical results.  Usage:
//
//   bench_kernels [--p <rational>] [--repeats <k>] [--quick]
//
// --quick shrinks every instance (used as a smoke test); the default sizes
// are chosen so the parallel kernels have something to chew on.

#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "rcmc/canonical_paths.hpp"
#include "rcmc/cycles.hpp"
#include "rcmc/exact_analysis.hpp"
#include "rcmc/exec.hpp"
#include "rcmc/graph.hpp"
#include "rcmc/measures.hpp"
#include "rcmc/params.hpp"
#include "rcmc/rng.hpp"

namespace {

using namespace rcmc;

Graph ring_plus_random(int n, int m, uint64_t seed)
{
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) {
        edges.push_back({v, (v + 1) % n});
    }
    SplitMix64 rng(seed);
    while (static_cast<int>(edges.size()) < m) {
        const int u = static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));
        const int v = static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));
        if (u != v) {
            edges.push_back({u, v});
        }
    }
    return Graph(n, std::move(edges));
}

template <typename F>
double time_best(int repeats, F&& f)
{
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const double t0 = wall_time();
        f();
        best = std::min(best, wall_time() - t0);
    }
    return best;
}

struct Row {
    std::string kernel;
    std::string instance;
    double serial = 0;
    double parallel = 0;
    bool identical = false;
};

void print(const std::vector<Row>& rows)
{
    std::cout << "kernel,instance,serial_s,parallel_s,speedup,identical\n";
    for (const auto& r : rows) {
        std::cout << r.kernel << ',' << r.instance << ',' << r.serial << ',' << r.parallel << ','
                  << (r.parallel > 0 ? r.serial / r.parallel : 0.0) << ','
                  << (r.identical ? "yes" : "no") << '\n';
    }
}

bool tables_equal(const SubsetTables& a, const SubsetTables& b)
{
    for (uint64_t z = 0; z < a.size(); ++z) {
        if (a.kappa(z) != b.kappa(z) || a.odd_mask(z) != b.odd_mask(z)
            || a.pair_count(z) != b.pair_count(z)) {
            return false;
        }
    }
    return true;
}

bool lifted_equal(const LiftedTraffic& a, const LiftedTraffic& b, int m)
{
    for (uint64_t z = 0; z < a.tables().size(); ++z) {
        if (a.loop(z) != b.loop(z)) {
            return false;
        }
        for (int e = 0; e < m; ++e) {
            const Rational& x = z >> e & 1u ? a.erase(z, e) : a.insert(z, e);
            const Rational& y = z >> e & 1u ? b.erase(z, e) : b.insert(z, e);
            if (x != y) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv)
{
    std::string p_s = "1/2";
    int repeats = 3;
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--p") == 0 && i + 1 < argc) {
            p_s = argv[++i];
        } else if (std::strcmp(argv[i], "--repeats") == 0 && i + 1 < argc) {
            repeats = std::stoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--quick") == 0) {
            quick = true;
        } else {
            std::cerr << "usage: bench_kernels [--p <rational>] [--repeats <k>] [--quick]\n";
            return 2;
        }
    }
    const Params pr = Params::from_p_rc(parse_rational(p_s));

    const Graph g_tables = quick ? ring_plus_random(4, 6, 7) : ring_plus_random(7, 18, 7);
    const Graph g_flow = quick ? ring_plus_random(4, 6, 7) : ring_plus_random(12, 14, 11);
    const Graph g_lift = quick ? ring_plus_random(4, 6, 7) : ring_plus_random(6, 11, 13);
    const Graph g_mat = quick ? ring_plus_random(4, 6, 7) : ring_plus_random(5, 10, 17);

    std::vector<Row> rows;

    {
        Row r{"subset-tables", "n=" + std::to_string(g_tables.vertex_count()) + ",m="
              + std::to_string(g_tables.edge_count()), 0, 0, false};
        r.serial = time_best(repeats, [&] { SubsetTables t(g_tables, Exec::serial); });
        r.parallel = time_best(repeats, [&] { SubsetTables t(g_tables, Exec::parallel); });
        const SubsetTables ts(g_tables, Exec::serial);
        const SubsetTables tp(g_tables, Exec::parallel);
        r.identical = tables_equal(ts, tp);
        rows.push_back(r);

        Rational zs, zp;
        Row r2{"rc-partition", r.instance, 0, 0, false};
        r2.serial = time_best(repeats, [&] { zs = rc_partition(ts, pr, Exec::serial); });
        r2.parallel = time_best(repeats, [&] { zp = rc_partition(tp, pr, Exec::parallel); });
        r2.identical = zs == zp;
        rows.push_back(r2);

        Row r3{"even-partition", r.instance, 0, 0, false};
        r3.serial = time_best(repeats, [&] { zs = even_partition(ts, pr, Exec::serial); });
        r3.parallel = time_best(repeats, [&] { zp = even_partition(tp, pr, Exec::parallel); });
        r3.identical = zs == zp;
        rows.push_back(r3);

        if (pr.beta()) {
            Row r4{"ising-partition", r.instance, 0, 0, false};
            r4.serial = time_best(repeats, [&] { zs = ising_partition(g_tables, *pr.beta(), Exec::serial); });
            r4.parallel = time_best(repeats, [&] { zp = ising_partition(g_tables, *pr.beta(), Exec::parallel); });
            r4.identical = zs == zp;
            rows.push_back(r4);
        }
    }

    {
        const std::string inst = "n=" + std::to_string(g_flow.vertex_count()) + ",m="
            + std::to_string(g_flow.edge_count());
        const SubsetTables t(g_flow, Exec::parallel);
        const CycleInventory inv = cycle_inventory(g_flow);
        const WormFlow flow(t, pr, inv);
        WormCertificates cs, cp;
        Row r{"worm-certificates", inst, 0, 0, false};
        r.serial = time_best(repeats, [&] { cs = check_worm_certificates(flow, Exec::serial); });
        r.parallel = time_best(repeats, [&] { cp = check_worm_certificates(flow, Exec::parallel); });
        r.identical = cs.ok == cp.ok && cs.max_ratio == cp.max_ratio
            && cs.worst_state == cp.worst_state && cs.worst_edge == cp.worst_edge
            && cs.transitions == cp.transitions;
        rows.push_back(r);
    }

    {
        const std::string inst = "n=" + std::to_string(g_lift.vertex_count()) + ",m="
            + std::to_string(g_lift.edge_count());
        const SubsetTables t(g_lift, Exec::parallel);
        const CycleInventory inv = cycle_inventory(g_lift);
        const WormFlow flow(t, pr, inv);
        Row r{"lifted-traffic", inst, 0, 0, false};
        r.serial = time_best(repeats, [&] { LiftedTraffic lt(flow, Exec::serial); });
        r.parallel = time_best(repeats, [&] { LiftedTraffic lt(flow, Exec::parallel); });
        const LiftedTraffic ls(flow, Exec::serial);
        const LiftedTraffic lp(flow, Exec::parallel);
        r.identical = lifted_equal(ls, lp, g_lift.edge_count());
        rows.push_back(r);

        if (pr.p_rc() < 1) {
            CongestionResult qs, qp;
            Row r2{"congestion-scan", inst, 0, 0, false};
            r2.serial = time_best(repeats, [&] { qs = rc_congestion(ls, Exec::serial); });
            r2.parallel = time_best(repeats, [&] { qp = rc_congestion(lp, Exec::parallel); });
            r2.identical = qs.rho == qp.rho && qs.worst_z == qp.worst_z
                && qs.worst_edge == qp.worst_edge;
            rows.push_back(r2);
        }
    }

    if (pr.p_rc() < 1) {
        const std::string inst = "n=" + std::to_string(g_mat.vertex_count()) + ",m="
            + std::to_string(g_mat.edge_count());
        const SubsetTables t(g_mat, Exec::parallel);
        Row r{"rc-matrix-build", inst, 0, 0, false};
        r.serial = time_best(repeats, [&] { auto M = TransitionMatrix::rc_flip(t, pr, Exec::serial); });
        r.parallel = time_best(repeats, [&] { auto M = TransitionMatrix::rc_flip(t, pr, Exec::parallel); });
        const auto ms = TransitionMatrix::rc_flip(t, pr, Exec::serial);
        const auto mp = TransitionMatrix::rc_flip(t, pr, Exec::parallel);
        bool same = ms.dim() == mp.dim();
        for (long i = 0; same && i < ms.dim(); ++i) {
            for (long j = 0; j < ms.dim(); ++j) {
                if (ms.at(i, j) != mp.at(i, j)) {
                    same = false;
                    break;
                }
            }
        }
        r.identical = same;
        rows.push_back(r);
    }

    print(rows);
    for (const auto& r : rows) {
        if (!r.identical) {
            std::cerr << "kernel mismatch: " << r.kernel << "\n";
            return 1;
        }
    }
    return 0;
}
