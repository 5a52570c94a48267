// Acceptance gate: one line per criterion, each verified end to end against
// independent oracles or closed-form envelopes, with a wall-clock budget.
// Exits nonzero if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "battery.hpp"
#include "oracles.hpp"
#include "rcmc/canonical_paths.hpp"
#include "rcmc/chains.hpp"
#include "rcmc/exact_analysis.hpp"
#include "rcmc/measures.hpp"

using namespace rcmc;

namespace {

struct Criterion {
    std::string label;
    double budget_s;
    std::function<bool(std::string&)> run;
};

bool fail(std::string& detail, const std::string& msg)
{
    if (!detail.empty()) {
        detail += "; ";
    }
    detail += msg;
    return false;
}

// ---- 1: the three formulations share one partition function ----

bool partition_identity(std::string& detail)
{
    bool ok = true;
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g, Exec::parallel);
        for (const Params& pr : battery::params(false)) {
            const EquivalenceReport r = verify_equivalence(t, pr, Exec::parallel);
            const Rational reference = oracle::ising_z(ng.g, *pr.beta());
            if (!r.ok || r.z_ising != reference) {
                ok = fail(detail, ng.name + " @ p_even=" + to_fraction(pr.p_even()));
            }
        }
    }
    return ok;
}

// ---- 2: even subgraphs of (V, r) number 2^(|r| - n + kappa(r)) for every r ----

bool even_count_identity(std::string& detail)
{
    bool ok = true;
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g, Exec::parallel);
        if (!even_count_check(t)) {
            ok = fail(detail, ng.name + " (library scan)");
        }
        const int m = ng.g.edge_count();
        for (uint64_t r = 0; r < (uint64_t{1} << m); ++r) {
            const long expected = 1L << (std::popcount(r) - ng.g.vertex_count()
                                         + oracle::dfs_components(ng.g, r));
            if (oracle::even_subsets_of(ng.g, r) != expected) {
                return fail(detail, ng.name + " r=" + std::to_string(r));
            }
        }
    }
    return ok;
}

// ---- 3: re-randomizing the even measure gives exactly the random-cluster law ----

bool pushforward_coupling(std::string& detail)
{
    bool ok = true;
    for (const auto& ng : battery::graphs()) {
        if (ng.g.edge_count() > 6) {
            continue;
        }
        const SubsetTables t(ng.g, Exec::parallel);
        for (const Params& pr : battery::params()) {
            const auto lifted = even_pushforward(t, pr);
            const auto rc = rc_distribution(t, pr);
            for (uint64_t z = 0; z < t.size(); ++z) {
                if (lifted[z] != rc[z]) {
                    ok = fail(detail, ng.name + " @ p_even=" + to_fraction(pr.p_even())
                                          + " z=" + std::to_string(z));
                    break;
                }
            }
        }
    }
    return ok;
}

// ---- 4: smoothed worm projection stays within 3/2 of the target, both
//         computation routes agree, and the defect strata are dominated ----

bool distortion_bound(std::string& detail)
{
    bool ok = true;
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g, Exec::parallel);
        const int n = ng.g.vertex_count();
        for (const Params& pr : battery::params()) {
            const std::string where = ng.name + " @ p_even=" + to_fraction(pr.p_even());
            const auto a = hat_pi_formula(t, pr);
            const auto b = hat_pi_convolution(t, pr);
            for (uint64_t z = 0; z < t.size(); ++z) {
                if (a[z] != b[z]) {
                    ok = fail(detail, where + " (routes diverge)");
                    break;
                }
            }
            const DistortionReport d = hat_distortion_max(t, pr);
            if (!d.within || !d.absolutely_continuous || d.max_ratio > Rational(3, 2)) {
                ok = fail(detail, where + " ratio=" + to_fraction(d.max_ratio));
            }
            const WormPartition w = worm_partition(t, pr, Exec::parallel);
            for (int u = 0; u < n; ++u) {
                for (int v = u + 1; v < n; ++v) {
                    if (hole_partition(t, pr, u, v) > w.z0) {
                        ok = fail(detail, where + " hole " + std::to_string(u) + ","
                                              + std::to_string(v));
                    }
                }
            }
            if (w.z2 > Rational(choose2(n)) * w.z0 || w.z_worm > Rational(3, 2) * w.z0) {
                ok = fail(detail, where + " strata");
            }
        }
    }
    return ok;
}

// ---- 5: one canonical path per ordered pair of even subgraphs; legal walks,
//         per-transition traffic certificates ----

bool worm_flow_certificates(std::string& detail)
{
    bool ok = true;
    for (const auto& ng : battery::graphs()) {
        if (ng.g.edge_count() > 6) {
            continue;
        }
        const SubsetTables t(ng.g, Exec::parallel);
        const CycleInventory inv = cycle_inventory(ng.g);
        for (const Params& pr : battery::params()) {
            const std::string where = ng.name + " @ p_even=" + to_fraction(pr.p_even());
            const WormFlow flow(t, pr, inv);
            if (!flow.legal() || flow.max_length() > ng.g.edge_count()) {
                ok = fail(detail, where + " (legality)");
            }
            long evens = 0;
            for (uint64_t z = 0; z < t.size(); ++z) {
                evens += t.is_even(z) ? 1 : 0;
            }
            if (flow.path_count() != evens * evens) {
                ok = fail(detail, where + " (path census)");
            }
            const WormCertificates c = check_worm_certificates(flow, Exec::parallel);
            if (!c.ok) {
                ok = fail(detail, where + " ratio=" + to_fraction(c.max_ratio));
            }
        }
    }
    return ok;
}

// ---- 6: the lifted flow transports exactly the product of the target law
//         with itself; dropping the tail breaks that somewhere ----

bool lifted_flow_validity(std::string& detail)
{
    bool ok = true;
    bool truncated_breaks = false;
    for (const auto& ng : battery::graphs()) {
        if (ng.g.edge_count() > 6) {
            continue;
        }
        const SubsetTables t(ng.g, Exec::parallel);
        const CycleInventory inv = cycle_inventory(ng.g);
        for (const Params& pr : battery::params(false)) {
            const std::string where = ng.name + " @ p_even=" + to_fraction(pr.p_even());
            const EncodingCheck ec = check_encoding(t, pr, inv);
            if (!ec.ok()) {
                ok = fail(detail, where + " (encoding)");
            }
            const FlowValidity fv = check_flow_validity(t, pr, inv);
            if (!fv.valid || !fv.marginals_ok) {
                ok = fail(detail, where + " (transport)");
            }
            truncated_breaks = truncated_breaks || fv.truncated_differs;
        }
    }
    if (!truncated_breaks) {
        ok = fail(detail, "tail-free flow never deviated (it must, somewhere)");
    }
    return ok;
}

// ---- 7: per-transition traffic bounds, the congestion envelope 8 m^2 n^4,
//         and exact agreement with brute-force trajectory enumeration ----

bool traffic_and_congestion(std::string& detail)
{
    bool ok = true;
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g, Exec::parallel);
        const CycleInventory inv = cycle_inventory(ng.g);
        const int m = ng.g.edge_count();
        const int n = ng.g.vertex_count();
        for (const Params& pr : battery::params(false)) {
            const std::string where = ng.name + " @ p_even=" + to_fraction(pr.p_even());
            const WormFlow flow(t, pr, inv);
            const LiftedTraffic lifted(flow, Exec::parallel);
            const LiftedTrafficBounds b = check_lifted_traffic_bounds(lifted, Exec::parallel);
            if (!b.ok) {
                ok = fail(detail, where + " bound ratio=" + to_fraction(b.max_ratio));
            }
            const CongestionResult c = rc_congestion(lifted, Exec::parallel);
            if (!c.within || c.rho > c.envelope
                || c.envelope != Rational(8) * m * m * n * n * n * n) {
                ok = fail(detail, where + " rho=" + to_fraction(c.rho));
            }
            if (m <= 4) {
                const oracle::FlowTraffic brute = oracle::enumerate_flow(ng.g, pr);
                const auto rc = rc_distribution(t, pr);
                for (uint64_t z = 0; z < t.size(); ++z) {
                    if (lifted.loop(z) != brute.loop[z]) {
                        ok = fail(detail, where + " loop@" + std::to_string(z));
                    }
                    for (int e = 0; e < m; ++e) {
                        const auto idx =
                            z * static_cast<uint64_t>(m) + static_cast<uint64_t>(e);
                        const Rational& got =
                            (z >> e & 1u) ? lifted.erase(z, e) : lifted.insert(z, e);
                        const Rational& want =
                            (z >> e & 1u) ? brute.del[idx] : brute.ins[idx];
                        if (got != want) {
                            ok = fail(detail, where + " edge@" + std::to_string(z));
                        }
                    }
                    for (uint64_t y = 0; y < t.size(); ++y) {
                        if (brute.pair_mass[z * t.size() + y] != rc[z] * rc[y]) {
                            ok = fail(detail, where + " pair mass");
                        }
                    }
                }
            }
        }
    }
    return ok;
}

// ---- 8: exact mixing times stay below both closed-form envelopes ----

bool mixing_below_envelopes(std::string& detail)
{
    bool ok = true;
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g, Exec::parallel);
        const CycleInventory inv = cycle_inventory(ng.g);
        const int m = ng.g.edge_count();
        const int n = ng.g.vertex_count();
        for (const Params& pr : battery::params(false)) {
            const WormFlow flow(t, pr, inv);
            const CongestionResult cong = rc_congestion(LiftedTraffic(flow, Exec::parallel),
                                                        Exec::parallel);
            const TransitionMatrix M = TransitionMatrix::rc_flip(t, pr, Exec::parallel);
            for (const Rational& eps : {Rational(1, 4), Rational(1, 10)}) {
                const std::string where = ng.name + " @ p_rc=" + to_fraction(pr.p_rc())
                    + " eps=" + to_fraction(eps);
                const MixingResult r = mixing_time(M, eps, {}, Exec::parallel);
                if (r.tau < 0 || r.tau_from_start < 0) {
                    ok = fail(detail, where + " (no answer)");
                    continue;
                }
                if (!r.exact && r.tolerance != 1e-12) {
                    ok = fail(detail, where + " (undocumented tolerance)");
                }
                if (static_cast<double>(r.tau) > mixing_envelope(n, m, pr, eps)) {
                    ok = fail(detail, where + " tau=" + std::to_string(r.tau));
                }
                if (static_cast<double>(r.tau_from_start)
                    > flow_envelope(cong.rho, m, pr, eps)) {
                    ok = fail(detail, where + " tau0=" + std::to_string(r.tau_from_start));
                }
            }
        }
    }
    return ok;
}

// ---- 9: kernel structure of all three chains ----

bool kernel_structure(std::string& detail)
{
    bool ok = true;
    for (const auto& ng : battery::graphs()) {
        const SubsetTables t(ng.g, Exec::parallel);
        for (const Params& pr : battery::params(false)) {
            const std::string where = ng.name + " @ p_rc=" + to_fraction(pr.p_rc());
            const TransitionMatrix rc = TransitionMatrix::rc_flip(t, pr, Exec::parallel);
            if (!rc.rows_stochastic() || !rc.detailed_balance()
                || rc.min_diagonal() < Rational(1, 2)) {
                ok = fail(detail, where + " (single-bond kernel)");
            }
            const TransitionMatrix wm = TransitionMatrix::worm_flip(t, pr, Exec::parallel);
            if (!wm.rows_stochastic() || !wm.detailed_balance()
                || wm.min_diagonal() < Rational(1, 2)) {
                ok = fail(detail, where + " (worm kernel)");
            }
            const TransitionMatrix sw = TransitionMatrix::swendsen_wang(t, pr, Exec::parallel);
            if (!sw.rows_stochastic() || !sw.stationary_fixed_point()) {
                ok = fail(detail, where + " (cluster kernel)");
            }
        }
    }
    return ok;
}

// ---- 10: seeded samplers actually converge to the exact law ----

bool sampler_sanity(std::string& detail)
{
    bool ok = true;
    const Params pr = Params::from_p_rc(Rational(1, 2));
    const uint64_t seed = 20260814;
    for (const char* name : {"single_edge", "triangle"}) {
        const Graph g = Graph::load(battery::graph_path(name));
        const SubsetTables t(g);
        const auto pi = rc_distribution(t, pr);
        RcChain chain(g, pr, EdgeSubset(g.edge_count()), seed);
        chain.run(1000); // burn-in
        std::vector<long> counts(t.size(), 0);
        const long steps = 100000;
        for (long i = 0; i < steps; ++i) {
            chain.step();
            ++counts[chain.state().mask64()];
        }
        double tv = 0;
        for (uint64_t z = 0; z < t.size(); ++z) {
            tv += std::abs(static_cast<double>(counts[z]) / static_cast<double>(steps)
                           - to_double(pi[z]));
        }
        tv /= 2;
        if (tv > 0.02) {
            ok = fail(detail, std::string(name) + " tv=" + std::to_string(tv));
        }
    }
    return ok;
}

// ---- 11: identical run specifications give byte-identical CLI output ----

bool byte_identical_cli(std::string& detail)
{
#ifndef RCMC_CLI_PATH
    return fail(detail, "CLI path not wired into the build");
#else
    auto shell = [](const std::string& cmd) {
        const int status = std::system(cmd.c_str());
        return status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    };
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    const std::string args = std::string(" sample rc --graph ")
        + battery::graph_path("k4") + " --p 2/5 --steps 23 --samples 17 --seed 424242 --out ";
    if (!shell(std::string(RCMC_CLI_PATH) + args + "acc_rep_a.jsonl")
        || !shell(std::string(RCMC_CLI_PATH) + args + "acc_rep_b.jsonl")) {
        return fail(detail, "CLI run failed");
    }
    const std::string a = slurp("acc_rep_a.jsonl");
    const std::string b = slurp("acc_rep_b.jsonl");
    std::remove("acc_rep_a.jsonl");
    std::remove("acc_rep_b.jsonl");
    if (a.empty() || a != b) {
        return fail(detail, "replays diverged");
    }
    return true;
#endif
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {"three-formulation partition identity, exact, full battery", 1.0, partition_identity},
        {"even-subgraph count identity on every edge subset", 10.0, even_count_identity},
        {"even-measure pushforward equals the random-cluster law", 5.0, pushforward_coupling},
        {"smoothed projection distortion within 3/2; strata dominated", 10.0, distortion_bound},
        {"worm-flow legality and per-transition traffic certificates", 60.0,
         worm_flow_certificates},
        {"lifted flow transports the exact product law; tail-free flow breaks", 120.0,
         lifted_flow_validity},
        {"lifted traffic bounds, congestion envelope, brute-force agreement", 300.0,
         traffic_and_congestion},
        {"exact mixing times below both closed-form envelopes", 300.0, mixing_below_envelopes},
        {"kernel structure: reversibility, laziness, cluster-step stationarity", 30.0,
         kernel_structure},
        {"seeded samplers converge to the exact stationary law", 30.0, sampler_sanity},
        {"identical run specifications give byte-identical output", 10.0, byte_identical_cli},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > criteria[i].budget_s) {
            ok = false;
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += "over budget";
        }
        std::printf("[%s] %2zu %s (%.2fs / budget %.0fs)\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].label.c_str(), secs, criteria[i].budget_s);
        if (!ok) {
            ++failures;
            if (!detail.empty()) {
                std::printf("       %s\n", detail.c_str());
            }
        }
    }
    std::printf("%d/%zu acceptance criteria satisfied\n",
                static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
