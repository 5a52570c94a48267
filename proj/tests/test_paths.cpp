#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <set>
#include <vector>

#include "battery.hpp"
#include "oracles.hpp"
#include "rcmc/canonical_paths.hpp"
#include "rcmc/errors.hpp"
#include "rcmc/measures.hpp"

using namespace rcmc;

namespace {

std::vector<uint64_t> even_masks(const Graph& g)
{
    std::vector<uint64_t> out;
    for (uint64_t s = 0; s < (uint64_t{1} << g.edge_count()); ++s) {
        if (oracle::odd_set(g, s) == 0) {
            out.push_back(s);
        }
    }
    return out;
}

} // namespace

TEST_CASE("delta weights form a distribution over supersets")
{
    const Params pr = Params::from_p_even(Rational(1, 10));
    const int m = 5;
    for (int w = 0; w <= m; ++w) {
        Rational total(0);
        // sum over z >= w grouped by |z|
        for (int z = w; z <= m; ++z) {
            BigInt ways(1);
            for (int i = 0; i < z - w; ++i) {
                ways = ways * (m - w - i) / (i + 1);
            }
            total += Rational(ways) * delta_weight(pr, m, w, z);
        }
        CHECK(total == 1);
    }
}

TEST_CASE("worm paths are legal walks from I to F")
{
    for (const auto& ng : battery::graphs()) {
        if (ng.g.edge_count() > 6) {
            continue;
        }
        const CycleInventory inv = cycle_inventory(ng.g);
        const auto evens = even_masks(ng.g);
        for (uint64_t I : evens) {
            for (uint64_t F : evens) {
                CAPTURE(ng.name);
                const WormPath path = worm_path(ng.g, inv, I, F);
                REQUIRE(!path.states.empty());
                CHECK(path.states.front() == I);
                CHECK(path.states.back() == F);
                CHECK(path.flips.size() == static_cast<size_t>(std::popcount(I ^ F)));
                CHECK(path.flips.size() + 1 == path.states.size());
                CHECK(path.flips.size() <= static_cast<size_t>(ng.g.edge_count()));

                std::set<uint64_t> seen;
                for (size_t k = 0; k < path.states.size(); ++k) {
                    CHECK(seen.insert(path.states[k]).second); // no repeats
                    const int odd = std::popcount(oracle::odd_set(ng.g, path.states[k]));
                    CHECK((odd == 0 || odd == 2)); // stays in the worm space
                    if (k < path.flips.size()) {
                        CHECK(path.states[k + 1]
                              == (path.states[k] ^ (uint64_t{1} << path.flips[k])));
                    }
                }
            }
        }
    }
}

TEST_CASE("transition encoding is injective and decodable")
{
    for (const auto& ng : battery::graphs()) {
        if (ng.g.edge_count() > 6) {
            continue;
        }
        const CycleInventory inv = cycle_inventory(ng.g);
        const auto evens = even_masks(ng.g);
        for (uint64_t I : evens) {
            for (uint64_t F : evens) {
                const WormPath path = worm_path(ng.g, inv, I, F);
                for (size_t k = 0; k < path.flips.size(); ++k) {
                    const uint64_t w = path.states[k];
                    const int e = path.flips[k];
                    const uint64_t U = encode_pair(I, F, w);
                    CHECK(U == (I ^ F ^ w));
                    const auto back = decode_pair(ng.g, inv, w, e, U);
                    REQUIRE(back.has_value());
                    CHECK(back->first == I);
                    CHECK(back->second == F);
                }
            }
        }

        // library-wide scan of the same facts plus the weight identity
        const SubsetTables t(ng.g);
        for (const Params& pr : battery::params()) {
            const EncodingCheck ec = check_encoding(t, pr, inv);
            CAPTURE(ng.name);
            CHECK(ec.injective);
            CHECK(ec.decodes);
            CHECK(ec.in_worm_space);
            CHECK(ec.weight_identity);
            CHECK(ec.ok());
        }
    }
}

TEST_CASE("decode rejects ineligible transitions")
{
    const Graph tri = Graph::parse_string("3 3\n0 1\n0 2\n1 2\n");
    const CycleInventory inv = cycle_inventory(tri);
    // the flipped edge must lie in the set the endpoints disagree on
    CHECK(!decode_pair(tri, inv, 0, 0, 0).has_value()); // here that set is empty
}

TEST_CASE("worm flow legality and the frozen triangle value")
{
    const Graph tri = Graph::parse_string("3 3\n0 1\n0 2\n1 2\n");
    const SubsetTables t(tri);
    const Params pr = Params::from_p_even(Rational(1, 4));
    const WormFlow flow(t, pr, cycle_inventory(tri));
    CHECK(flow.legal());
    CHECK(flow.path_count() == 4); // two even subgraphs -> four ordered pairs
    CHECK(flow.max_length() == 3);
    CHECK(flow.traffic(0, 0) == Rational(27, 784));

    // paths ending at each even state carry its stationary mass
    const auto even = even_distribution(t, pr);
    for (uint64_t w = 0; w < t.size(); ++w) {
        CHECK(flow.end_mass(w) == even[w]);
    }
}

TEST_CASE("worm traffic certificates hold across the battery")
{
    for (const auto& ng : battery::graphs()) {
        if (ng.g.edge_count() > 6) {
            continue;
        }
        const SubsetTables t(ng.g);
        const CycleInventory inv = cycle_inventory(ng.g);
        for (const Params& pr : battery::params()) {
            CAPTURE(ng.name);
            CAPTURE(to_fraction(pr.p_even()));
            const WormFlow flow(t, pr, inv);
            CHECK(flow.legal());
            const WormCertificates c = check_worm_certificates(flow);
            CHECK(c.ok);
            CHECK(c.max_ratio <= 1);
        }
    }
}

TEST_CASE("closed-form lifted traffic equals trajectory enumeration")
{
    for (const auto& ng : battery::graphs()) {
        const int m = ng.g.edge_count();
        if (m > 4) {
            continue; // brute-force enumeration is the whole point here
        }
        const SubsetTables t(ng.g);
        const CycleInventory inv = cycle_inventory(ng.g);
        for (const Params& pr : battery::params(false)) {
            CAPTURE(ng.name);
            CAPTURE(to_fraction(pr.p_even()));
            const WormFlow flow(t, pr, inv);
            const LiftedTraffic lifted(flow);
            const oracle::FlowTraffic brute = oracle::enumerate_flow(ng.g, pr);

            for (uint64_t z = 0; z < t.size(); ++z) {
                CHECK(lifted.loop(z) == brute.loop[z]);
                for (int e = 0; e < m; ++e) {
                    const auto idx = z * static_cast<uint64_t>(m) + static_cast<uint64_t>(e);
                    if (z >> e & 1u) {
                        CHECK(lifted.erase(z, e) == brute.del[idx]);
                        CHECK(brute.ins[idx] == 0);
                    } else {
                        CHECK(lifted.insert(z, e) == brute.ins[idx]);
                        CHECK(brute.del[idx] == 0);
                    }
                }
            }

            // independent confirmation of flow validity: endpoint pair mass is
            // exactly the product random-cluster measure
            const auto rc = rc_distribution(t, pr);
            for (uint64_t x = 0; x < t.size(); ++x) {
                for (uint64_t y = 0; y < t.size(); ++y) {
                    CHECK(brute.pair_mass[x * t.size() + y] == rc[x] * rc[y]);
                }
            }
        }
    }
}

TEST_CASE("lifted traffic bounds and congestion across the battery")
{
    for (const auto& ng : battery::graphs()) {
        if (ng.g.edge_count() > 6) {
            continue;
        }
        const SubsetTables t(ng.g);
        const CycleInventory inv = cycle_inventory(ng.g);
        for (const Params& pr : battery::params(false)) {
            CAPTURE(ng.name);
            CAPTURE(to_fraction(pr.p_even()));
            const WormFlow flow(t, pr, inv);
            const LiftedTraffic lifted(flow);
            const LiftedTrafficBounds b = check_lifted_traffic_bounds(lifted);
            CHECK(b.ok);
            CHECK(b.max_ratio <= 1);

            const CongestionResult c = rc_congestion(lifted);
            const int n = ng.g.vertex_count();
            const int m = ng.g.edge_count();
            CHECK(c.length_factor == 2 * m);
            CHECK(c.envelope == Rational(8) * m * m * n * n * n * n);
            CHECK(c.rho <= c.envelope);
            CHECK(c.within);
        }
    }
}

TEST_CASE("frozen congestion on the triangle")
{
    const Graph tri = Graph::parse_string("3 3\n0 1\n0 2\n1 2\n");
    const SubsetTables t(tri);
    const Params pr = Params::from_p_even(Rational(1, 4));
    const WormFlow flow(t, pr, cycle_inventory(tri));
    const CongestionResult c = rc_congestion(LiftedTraffic(flow));
    CHECK(c.rho == Rational(222, 7));
    CHECK(c.envelope == 5832);
}

TEST_CASE("flow validity holds with the tail and fails without it")
{
    bool some_truncated_failure = false;
    for (const auto& ng : battery::graphs()) {
        if (ng.g.edge_count() > 6) {
            continue;
        }
        const SubsetTables t(ng.g);
        const CycleInventory inv = cycle_inventory(ng.g);
        for (const Params& pr : battery::params(false)) {
            CAPTURE(ng.name);
            CAPTURE(to_fraction(pr.p_even()));
            const FlowValidity fv = check_flow_validity(t, pr, inv);
            CHECK(fv.valid);
            CHECK(fv.marginals_ok);
            if (fv.truncated_differs) {
                some_truncated_failure = true;
                CHECK(fv.truncated_value != fv.expected);
            }
        }
    }
    CHECK(some_truncated_failure);
}

TEST_CASE("flow validity guard")
{
    const SubsetTables t(battery::graphs()[7].g); // 8 edges
    const Params pr = Params::from_p_even(Rational(1, 4));
    CHECK_THROWS_AS(check_flow_validity(t, pr, cycle_inventory(t.graph())), GuardError);
}
