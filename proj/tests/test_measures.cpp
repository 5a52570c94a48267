#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "battery.hpp"
#include "oracles.hpp"
#include "rcmc/measures.hpp"
#include "rcmc/subset_tables.hpp"

using namespace rcmc;

TEST_CASE("frozen partition values")
{
    const Graph edge = Graph::parse_string("2 1\n0 1\n");
    const Graph tri = Graph::parse_string("3 3\n0 1\n0 2\n1 2\n");
    const SubsetTables te(edge), tt(tri);

    CHECK(ising_partition(edge, Rational(2)) == 6);
    CHECK(ising_partition(tri, Rational(2)) == 28);

    const Params half = Params::from_p_rc(Rational(1, 2));
    CHECK(rc_partition(te, half) == 3);
    CHECK(rc_partition(tt, half) == Rational(7, 2));

    const Params quarter = Params::from_p_even(Rational(1, 4));
    CHECK(even_partition(tt, quarter) == Rational(7, 16));
    const WormPartition w = worm_partition(tt, quarter);
    CHECK(w.z0 == Rational(7, 16));
    CHECK(w.z2 == Rational(9, 16));
    CHECK(w.z_worm == Rational(1, 2));
    CHECK(hole_partition(tt, quarter, 0, 1) == Rational(3, 16));
}

TEST_CASE("partition sums match the independent oracles")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g);
        for (const Params& pr : battery::params()) {
            CAPTURE(ng.name);
            CAPTURE(to_fraction(pr.p_even()));
            CHECK(even_partition(t, pr) == oracle::even_z(ng.g, pr));
            CHECK(rc_partition(t, pr) == oracle::rc_z(ng.g, pr));
            CHECK(worm_partition(t, pr).z_worm == oracle::worm_z(ng.g, pr));
            if (pr.beta()) {
                CHECK(ising_partition(ng.g, *pr.beta()) == oracle::ising_z(ng.g, *pr.beta()));
            }
        }
    }
}

TEST_CASE("three-model partition identity")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g);
        for (const Params& pr : battery::params(false)) {
            CAPTURE(ng.name);
            const EquivalenceReport r = verify_equivalence(t, pr);
            CHECK(r.ok);
            CHECK(r.z_ising == r.rc_scaled);
            CHECK(r.z_ising == r.even_scaled);
        }
    }
}

TEST_CASE("distributions are normalized and supported where they should be")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g);
        for (const Params& pr : battery::params()) {
            CAPTURE(ng.name);
            const auto rc = rc_distribution(t, pr);
            const auto even = even_distribution(t, pr);
            const auto worm = worm_distribution(t, pr);
            Rational src(0), se(0), sw(0);
            for (uint64_t z = 0; z < t.size(); ++z) {
                src += rc[z];
                se += even[z];
                sw += worm[z];
                if (!t.is_even(z)) {
                    CHECK(even[z] == 0);
                }
                if (!t.is_worm_state(z)) {
                    CHECK(worm[z] == 0);
                }
            }
            CHECK(src == 1);
            CHECK(se == 1);
            CHECK(sw == 1);
        }
    }
}

TEST_CASE("counting identities behind the closed form")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g);
        CHECK(even_count_check(t));
        // independent re-count: even subsets of r number 2^(|r| - n + kappa(r))
        const int m = ng.g.edge_count();
        for (uint64_t r = 0; r < (uint64_t{1} << m); ++r) {
            const long expected = 1L << (std::popcount(r) - ng.g.vertex_count()
                                         + oracle::dfs_components(ng.g, r));
            CHECK(oracle::even_subsets_of(ng.g, r) == expected);
        }
    }
}

TEST_CASE("smoothed projection: both routes agree and distortion is bounded")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g);
        for (const Params& pr : battery::params()) {
            CAPTURE(ng.name);
            CAPTURE(to_fraction(pr.p_even()));
            const auto direct = hat_pi_formula(t, pr);
            const auto conv = hat_pi_convolution(t, pr);
            REQUIRE(direct.size() == conv.size());
            for (uint64_t z = 0; z < t.size(); ++z) {
                CHECK(direct[z] == conv[z]);
            }

            const DistortionReport d = hat_distortion_max(t, pr);
            CHECK(d.absolutely_continuous);
            CHECK(d.max_ratio <= Rational(3, 2));
            CHECK(d.within);
        }
    }
}

TEST_CASE("frozen distortion value on the triangle")
{
    const Graph tri = Graph::parse_string("3 3\n0 1\n0 2\n1 2\n");
    const SubsetTables t(tri);
    const DistortionReport d = hat_distortion_max(t, Params::from_p_even(Rational(1, 4)));
    CHECK(d.max_ratio == Rational(7, 6));
}

TEST_CASE("even pushforward lands on the random-cluster distribution")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g);
        for (const Params& pr : battery::params()) {
            CAPTURE(ng.name);
            const auto lifted = even_pushforward(t, pr);
            const auto rc = rc_distribution(t, pr);
            REQUIRE(lifted.size() == rc.size());
            for (uint64_t z = 0; z < t.size(); ++z) {
                CHECK(lifted[z] == rc[z]);
            }
        }
    }
}

TEST_CASE("stratum comparisons")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g);
        const int n = ng.g.vertex_count();
        for (const Params& pr : battery::params()) {
            CAPTURE(ng.name);
            const WormPartition w = worm_partition(t, pr);
            // each two-defect slice is dominated by the even slice
            for (int u = 0; u < n; ++u) {
                for (int v = u + 1; v < n; ++v) {
                    CHECK(hole_partition(t, pr, u, v) <= w.z0);
                }
            }
            CHECK(w.z2 <= Rational(choose2(n)) * w.z0);
            CHECK(w.z_worm <= Rational(3, 2) * w.z0);
            CHECK(w.z_worm == w.z0 + w.z2 / (n * n));
        }
    }
}

TEST_CASE("float kernels track the exact sums")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g);
        for (const Params& pr : battery::params()) {
            const double ze = to_double(even_partition(t, pr));
            CHECK(std::abs(even_partition_f(t, pr) - ze) <= 1e-12 * ze);
            const double zr = to_double(rc_partition(t, pr));
            CHECK(std::abs(rc_partition_f(t, pr) - zr) <= 1e-12 * zr);
            const double zw = to_double(worm_partition(t, pr).z_worm);
            CHECK(std::abs(worm_partition_f(t, pr) - zw) <= 1e-12 * zw);
            if (pr.beta()) {
                const double zi = to_double(ising_partition(ng.g, *pr.beta()));
                CHECK(std::abs(ising_partition_f(ng.g, to_double(*pr.beta())) - zi) <= 1e-9 * zi);
            }
        }
    }
}

TEST_CASE("subset tables agree with direct graph statistics")
{
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g);
        const int m = ng.g.edge_count();
        for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
            const EdgeSubset s = EdgeSubset::from_mask(m, mask);
            CHECK(t.kappa(mask) == component_count(ng.g, s));
            CHECK(t.odd_count(mask) == odd_vertex_count(ng.g, s));
            CHECK(t.pair_count(mask) == pair_count(ng.g, s));
            CHECK(t.is_even(mask) == (oracle::odd_set(ng.g, mask) == 0));
            CHECK(t.is_worm_state(mask)
                  == (std::popcount(oracle::odd_set(ng.g, mask)) <= 2));
        }
    }
}
