#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "battery.hpp"
#include "rcmc/canonical_paths.hpp"
#include "rcmc/exact_analysis.hpp"
#include "rcmc/measures.hpp"

using namespace rcmc;

// The parallel kernels are required to reproduce the serial reference
// bit-for-bit wherever the arithmetic is exact (rationals, and the row-wise
// float matrix products whose in-row order is fixed).  Only the float
// partition sums may differ, by reduction grouping, within tolerance.

TEST_CASE("subset tables")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables s(ng.g, Exec::serial);
        const SubsetTables p(ng.g, Exec::parallel);
        for (uint64_t z = 0; z < s.size(); ++z) {
            REQUIRE(s.kappa(z) == p.kappa(z));
            REQUIRE(s.odd_mask(z) == p.odd_mask(z));
            REQUIRE(s.pair_count(z) == p.pair_count(z));
        }
    }
}

TEST_CASE("partition sums")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g);
        for (const Params& pr : battery::params()) {
            CHECK(rc_partition(t, pr, Exec::serial) == rc_partition(t, pr, Exec::parallel));
            CHECK(even_partition(t, pr, Exec::serial) == even_partition(t, pr, Exec::parallel));
            const WormPartition a = worm_partition(t, pr, Exec::serial);
            const WormPartition b = worm_partition(t, pr, Exec::parallel);
            CHECK(a.z0 == b.z0);
            CHECK(a.z2 == b.z2);
            CHECK(a.z_worm == b.z_worm);
            if (pr.beta()) {
                CHECK(ising_partition(ng.g, *pr.beta(), Exec::serial)
                      == ising_partition(ng.g, *pr.beta(), Exec::parallel));
            }

            // float sums: grouping differs, so compare within tolerance
            const double zs = rc_partition_f(t, pr, Exec::serial);
            const double zp = rc_partition_f(t, pr, Exec::parallel);
            CHECK(std::abs(zs - zp) <= 1e-12 * std::abs(zs));
        }
    }
}

TEST_CASE("flow certificates and congestion")
{
    for (const auto& ng : battery::graphs()) {
        if (ng.g.edge_count() > 6) {
            continue;
        }
        const SubsetTables t(ng.g);
        const CycleInventory inv = cycle_inventory(ng.g);
        for (const Params& pr : battery::params(false)) {
            const WormFlow flow(t, pr, inv);
            const WormCertificates cs = check_worm_certificates(flow, Exec::serial);
            const WormCertificates cp = check_worm_certificates(flow, Exec::parallel);
            CHECK(cs.ok == cp.ok);
            CHECK(cs.max_ratio == cp.max_ratio);
            CHECK(cs.worst_state == cp.worst_state);
            CHECK(cs.worst_edge == cp.worst_edge);
            CHECK(cs.transitions == cp.transitions);

            const LiftedTraffic ls(flow, Exec::serial);
            const LiftedTraffic lp(flow, Exec::parallel);
            for (uint64_t z = 0; z < t.size(); ++z) {
                REQUIRE(ls.loop(z) == lp.loop(z));
                for (int e = 0; e < ng.g.edge_count(); ++e) {
                    if (z >> e & 1u) {
                        REQUIRE(ls.erase(z, e) == lp.erase(z, e));
                    } else {
                        REQUIRE(ls.insert(z, e) == lp.insert(z, e));
                    }
                }
            }

            const LiftedTrafficBounds bs = check_lifted_traffic_bounds(ls, Exec::serial);
            const LiftedTrafficBounds bp = check_lifted_traffic_bounds(ls, Exec::parallel);
            CHECK(bs.max_ratio == bp.max_ratio);
            CHECK(bs.worst_z == bp.worst_z);
            CHECK(bs.worst_edge == bp.worst_edge);

            const CongestionResult rs = rc_congestion(ls, Exec::serial);
            const CongestionResult rp = rc_congestion(ls, Exec::parallel);
            CHECK(rs.rho == rp.rho);
            CHECK(rs.worst_z == rp.worst_z);
            CHECK(rs.worst_edge == rp.worst_edge);
        }
    }
}

TEST_CASE("transition matrices")
{
    for (const auto& ng : battery::graphs()) {
        if (ng.g.edge_count() > 5) {
            continue;
        }
        const SubsetTables t(ng.g);
        for (const Params& pr : battery::params(false)) {
            const TransitionMatrix a = TransitionMatrix::rc_flip(t, pr, Exec::serial);
            const TransitionMatrix b = TransitionMatrix::rc_flip(t, pr, Exec::parallel);
            REQUIRE(a.dim() == b.dim());
            for (long i = 0; i < a.dim(); ++i) {
                for (long j = 0; j < a.dim(); ++j) {
                    REQUIRE(a.at(i, j) == b.at(i, j));
                }
            }
            const TransitionMatrix sa = TransitionMatrix::swendsen_wang(t, pr, Exec::serial);
            const TransitionMatrix sb = TransitionMatrix::swendsen_wang(t, pr, Exec::parallel);
            for (long i = 0; i < sa.dim(); ++i) {
                for (long j = 0; j < sa.dim(); ++j) {
                    REQUIRE(sa.at(i, j) == sb.at(i, j));
                }
            }
        }
    }
}

TEST_CASE("mixing times, both arithmetic modes")
{
    // rational mode: triangle fits the exact-dimension budget
    const Graph tri = Graph::parse_string("3 3\n0 1\n0 2\n1 2\n");
    const SubsetTables tt(tri);
    const Params pr = Params::from_p_rc(Rational(1, 2));
    const TransitionMatrix M = TransitionMatrix::rc_flip(tt, pr);
    const MixingResult ms = mixing_time(M, Rational(1, 10), {}, Exec::serial);
    const MixingResult mp = mixing_time(M, Rational(1, 10), {}, Exec::parallel);
    CHECK(ms.tau == mp.tau);
    CHECK(ms.tau_from_start == mp.tau_from_start);
    CHECK(ms.exact == mp.exact);

    // float mode: the row-parallel product keeps a fixed in-row order, so
    // the fallback is bit-identical too
    const SubsetTables tb(battery::graphs()[7].g);
    const Params p2 = Params::from_p_rc(Rational(4, 5));
    const TransitionMatrix B = TransitionMatrix::rc_flip(tb, p2, Exec::parallel);
    const MixingResult fs = mixing_time(B, Rational(1, 10), {}, Exec::serial);
    const MixingResult fp = mixing_time(B, Rational(1, 10), {}, Exec::parallel);
    CHECK(!fs.exact);
    CHECK(fs.tau == fp.tau);
    CHECK(fs.tau_from_start == fp.tau_from_start);
}
