// rcmc: verification, exact computation, sampling, mixing analysis,
// congestion reporting and chain benchmarking for the random-cluster /
// even-subgraph / Ising model family on small graphs.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 bad input,
// 3 an enumeration guard refused the instance.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcmc/canonical_paths.hpp"
#include "rcmc/chains.hpp"
#include "rcmc/cycles.hpp"
#include "rcmc/errors.hpp"
#include "rcmc/exact_analysis.hpp"
#include "rcmc/graph.hpp"
#include "rcmc/guards.hpp"
#include "rcmc/measures.hpp"
#include "rcmc/params.hpp"
#include "rcmc/report.hpp"
#include "rcmc/rng.hpp"

namespace {

using nlohmann::json;
using namespace rcmc;

struct RunSpec {
    std::string graph_path;
    std::string beta_s;
    std::string p_s;
    std::string q_s = "2";
    std::string eps_s = "1/4";
    uint64_t seed = 1;
    long steps = 0;
    long samples = 1;
    std::string format = "json";
    std::string out_path;
    int guard_m = -1; // -1: per-module defaults
    std::string kind;
};

Params make_params(const RunSpec& spec)
{
    const Rational q = parse_rational(spec.q_s);
    if (!spec.beta_s.empty() && !spec.p_s.empty()) {
        throw std::invalid_argument("give exactly one of --beta and --p");
    }
    if (!spec.beta_s.empty()) {
        return Params::from_beta(parse_rational(spec.beta_s), q);
    }
    if (!spec.p_s.empty()) {
        return Params::from_p_rc(parse_rational(spec.p_s), q);
    }
    throw std::invalid_argument("give exactly one of --beta and --p");
}

json params_echo(const Params& pr)
{
    json j;
    j["q"] = rational_str(pr.q());
    j["p_rc"] = rational_str(pr.p_rc());
    j["p_even"] = rational_str(pr.p_even());
    j["beta"] = pr.beta() ? json(rational_str(*pr.beta())) : json(nullptr);
    return j;
}

int effective_guard(const RunSpec& spec, int module_default)
{
    return spec.guard_m > 0 ? spec.guard_m : module_default;
}

// buffered emission so the output is one atomic deterministic block
void flush_records(const RunSpec& spec, const std::vector<json>& recs)
{
    std::ostringstream buf;
    if (spec.format == "csv") {
        CsvWriter csv({"check", "graph", "field", "value"});
        for (const auto& r : recs) {
            const std::string check = r.value("check", "");
            const std::string graph = r.value("graph", "");
            for (auto it = r.begin(); it != r.end(); ++it) {
                if (it.key() == "check" || it.key() == "graph") {
                    continue;
                }
                csv.row({check, graph, it.key(), it.value().dump()});
            }
        }
        csv.write(buf);
    } else {
        for (const auto& r : recs) {
            emit_jsonl(buf, r);
        }
    }
    if (spec.out_path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(spec.out_path, std::ios::binary);
        if (!f) {
            throw std::invalid_argument("cannot open output file " + spec.out_path);
        }
        f << buf.str();
    }
}

// ---- verify ----

int cmd_verify(const RunSpec& spec)
{
    const Params pr = make_params(spec);
    const Graph g = Graph::load(spec.graph_path);
    const int n = g.vertex_count();
    const int m = g.edge_count();
    const bool q2 = pr.q() == 2;

    SubsetTables t(g, Exec::parallel, effective_guard(spec, kEnumGuardM));

    std::vector<json> recs;
    bool all_pass = true;
    const json echo = params_echo(pr);
    auto rec = [&](const std::string& check) {
        json r = base_record(check, spec.graph_path);
        r["params"] = echo;
        return r;
    };
    auto push = [&](json r) {
        if (r.contains("pass") && !r["pass"].get<bool>()) {
            all_pass = false;
        }
        recs.push_back(std::move(r));
    };

    {
        json r = rec("equivalence");
        if (q2 && pr.beta()) {
            const auto rep = verify_equivalence(t, pr, Exec::parallel);
            r["z_ising"] = exact_value(rep.z_ising);
            r["z_rc_scaled"] = exact_value(rep.rc_scaled);
            r["z_even_scaled"] = exact_value(rep.even_scaled);
            r["pass"] = rep.ok;
        } else {
            r["skipped"] = "needs q = 2 and p_rc < 1";
        }
        push(std::move(r));
    }
    {
        json r = rec("even-count");
        const int guard = effective_guard(spec, 16);
        if (m <= guard) {
            r["pass"] = even_count_check(t, guard);
        } else {
            r["skipped"] = "edge count above subset-enumeration guard";
        }
        push(std::move(r));
    }
    {
        json r = rec("coupling");
        const int guard = effective_guard(spec, 16);
        if (q2 && m <= guard) {
            r["pass"] = even_pushforward(t, pr, guard) == rc_distribution(t, pr);
        } else {
            r["skipped"] = "needs q = 2 and edge count within guard";
        }
        push(std::move(r));
    }
    {
        json r = rec("distortion");
        const int guard = effective_guard(spec, 16);
        if (q2 && m <= guard) {
            const bool routes = hat_pi_formula(t, pr) == hat_pi_convolution(t, pr, guard);
            const auto rep = hat_distortion_max(t, pr);
            const auto wp = worm_partition(t, pr, Exec::parallel);
            bool holes_ok = true;
            for (int u = 0; u < n && holes_ok; ++u) {
                for (int v = u + 1; v < n; ++v) {
                    if (hole_partition(t, pr, u, v) > wp.z0) {
                        holes_ok = false;
                        break;
                    }
                }
            }
            const bool strata_ok = wp.z2 <= Rational(choose2(n)) * wp.z0
                && wp.z_worm <= Rational(3, 2) * wp.z0;
            r["routes_agree"] = routes;
            r["max_ratio"] = exact_value(rep.max_ratio);
            r["absolutely_continuous"] = rep.absolutely_continuous;
            r["hole_masses_ok"] = holes_ok;
            r["strata_ok"] = strata_ok;
            r["pass"] = routes && rep.within && holes_ok && strata_ok;
        } else {
            r["skipped"] = "needs q = 2 and edge count within guard";
        }
        push(std::move(r));
    }

    const int flow_guard = effective_guard(spec, 16);
    const bool flow_feasible = m <= flow_guard && m <= 16;
    if (flow_feasible) {
        const CycleInventory inv = cycle_inventory(g);
        const WormFlow flow(t, pr, inv);
        {
            json r = rec("worm-traffic");
            const auto certs = check_worm_certificates(flow, Exec::parallel);
            r["paths"] = flow.path_count();
            r["max_length"] = flow.max_length();
            r["legal"] = flow.legal();
            r["transitions"] = certs.transitions;
            r["max_ratio"] = exact_value(certs.max_ratio);
            r["pass"] = flow.legal() && certs.ok;
            push(std::move(r));
        }
        {
            json r = rec("encoding");
            const auto enc = check_encoding(t, pr, inv);
            r["checked"] = enc.checked;
            r["pass"] = enc.ok();
            push(std::move(r));
        }
        const int lift_guard = effective_guard(spec, 12);
        if (q2 && m <= lift_guard) {
            const LiftedTraffic lt(flow, Exec::parallel);
            {
                json r = rec("lifted-traffic");
                const auto b = check_lifted_traffic_bounds(lt, Exec::parallel);
                r["transitions"] = b.transitions;
                r["max_ratio"] = exact_value(b.max_ratio);
                r["pass"] = b.ok;
                push(std::move(r));
            }
            {
                json r = rec("congestion");
                if (pr.p_rc() < 1) {
                    const auto c = rc_congestion(lt, Exec::parallel);
                    r["rho"] = exact_value(c.rho);
                    r["envelope"] = exact_value(c.envelope);
                    r["pass"] = c.within;
                } else {
                    r["skipped"] = "needs p_rc < 1";
                }
                push(std::move(r));
            }
        } else {
            json r = rec("lifted-traffic");
            r["skipped"] = "needs q = 2 and edge count within guard";
            push(std::move(r));
        }
        {
            json r = rec("flow-validity");
            const int fv_guard = effective_guard(spec, 6);
            if (q2 && m <= fv_guard) {
                const auto fv = check_flow_validity(t, pr, inv, fv_guard);
                r["marginals_ok"] = fv.marginals_ok;
                r["truncated_differs"] = fv.truncated_differs;
                r["pass"] = fv.valid && fv.marginals_ok;
                push(std::move(r));
            } else {
                r["skipped"] = "needs q = 2 and edge count within guard";
                push(std::move(r));
            }
        }
    } else {
        json r = rec("worm-traffic");
        r["skipped"] = "edge count above flow guard";
        push(std::move(r));
    }

    {
        json r = rec("chain-kernels");
        const int guard = effective_guard(spec, kMatrixGuardM);
        if (m <= guard) {
            bool pass = true;
            if (pr.p_rc() < 1) {
                const auto rc = TransitionMatrix::rc_flip(t, pr, Exec::parallel, guard);
                const bool lazy = rc.min_diagonal() >= Rational(1, 2);
                pass = pass && rc.rows_stochastic() && rc.detailed_balance() && lazy;
                r["rc_reversible"] = rc.detailed_balance();
                r["rc_lazy"] = lazy;
            }
            const auto wm = TransitionMatrix::worm_flip(t, pr, Exec::parallel, guard);
            const bool wlazy = wm.min_diagonal() >= Rational(1, 2);
            pass = pass && wm.rows_stochastic() && wm.detailed_balance() && wlazy;
            r["worm_reversible"] = wm.detailed_balance();
            r["worm_lazy"] = wlazy;
            if (q2) {
                const auto sw = TransitionMatrix::swendsen_wang(t, pr, Exec::parallel, guard);
                const bool sst = sw.rows_stochastic() && sw.stationary_fixed_point();
                pass = pass && sst;
                r["sw_stationary"] = sst;
            }
            r["pass"] = pass;
        } else {
            r["skipped"] = "edge count above matrix guard";
        }
        push(std::move(r));
    }

    flush_records(spec, recs);
    return all_pass ? 0 : 1;
}

// ---- exact ----

int cmd_exact(const RunSpec& spec)
{
    const Params pr = make_params(spec);
    const Graph g = Graph::load(spec.graph_path);
    SubsetTables t(g, Exec::parallel, effective_guard(spec, kEnumGuardM));

    json r = base_record("exact", spec.graph_path);
    r["params"] = params_echo(pr);
    r["z_rc"] = exact_value(rc_partition(t, pr, Exec::parallel));
    r["z_even"] = exact_value(even_partition(t, pr, Exec::parallel));
    const auto wp = worm_partition(t, pr, Exec::parallel);
    r["z_worm_even"] = exact_value(wp.z0);
    r["z_worm_defect"] = exact_value(wp.z2);
    r["z_worm"] = exact_value(wp.z_worm);
    if (pr.q() == 2 && pr.beta()) {
        const auto rep = verify_equivalence(t, pr, Exec::parallel);
        r["z_ising"] = exact_value(rep.z_ising);
        r["z_rc_scaled"] = exact_value(rep.rc_scaled);
        r["z_even_scaled"] = exact_value(rep.even_scaled);
        r["equivalent"] = rep.ok;
    }
    flush_records(spec, {r});
    return 0;
}

// ---- sample ----

int cmd_sample(const RunSpec& spec)
{
    const Params pr = make_params(spec);
    const Graph g = Graph::load(spec.graph_path);
    const int m = g.edge_count();
    const EdgeSubset empty = EdgeSubset::from_mask(m, 0);

    std::vector<json> recs;
    auto rec = [&](long idx) {
        json r = base_record("sample", spec.graph_path);
        r["params"] = params_echo(pr);
        r["kind"] = spec.kind;
        r["seed"] = spec.seed;
        r["index"] = idx;
        return r;
    };

    if (spec.kind == "rc") {
        RcChain chain(g, pr, empty, spec.seed);
        for (long i = 0; i < spec.samples; ++i) {
            chain.run(spec.steps);
            json r = rec(i);
            r["state"] = chain.state().to_string();
            r["edges"] = chain.state().size();
            recs.push_back(std::move(r));
        }
    } else if (spec.kind == "worm") {
        WormChain chain(g, pr, empty, spec.seed);
        for (long i = 0; i < spec.samples; ++i) {
            chain.run(spec.steps);
            json r = rec(i);
            r["state"] = chain.state().to_string();
            r["edges"] = chain.state().size();
            r["defects"] = chain.defect_count();
            recs.push_back(std::move(r));
        }
    } else if (spec.kind == "lift") {
        LiftedWormSampler chain(g, pr, empty, spec.seed);
        for (long i = 0; i < spec.samples; ++i) {
            for (long s = 0; s < spec.steps; ++s) {
                chain.step();
            }
            json r = rec(i);
            r["worm_state"] = chain.worm_state().to_string();
            r["state"] = chain.projected().to_string();
            r["edges"] = chain.projected().size();
            recs.push_back(std::move(r));
        }
    } else { // sw
        if (pr.q() != 2) {
            throw std::invalid_argument("sw sampling needs q = 2");
        }
        SwChain chain(g, pr, std::vector<uint8_t>(static_cast<size_t>(g.vertex_count()), 0),
                      spec.seed);
        for (long i = 0; i < spec.samples; ++i) {
            chain.run(spec.steps);
            json r = rec(i);
            std::string spins;
            for (uint8_t s : chain.spins()) {
                spins += s ? '1' : '0';
            }
            r["spins"] = spins;
            r["state"] = chain.kept_edges().to_string();
            r["aligned"] = chain.aligned_edge_count();
            recs.push_back(std::move(r));
        }
    }
    flush_records(spec, recs);
    return 0;
}

// ---- mix ----

int cmd_mix(const RunSpec& spec)
{
    const Params pr = make_params(spec);
    const Rational eps = parse_rational(spec.eps_s);
    const Graph g = Graph::load(spec.graph_path);
    const int n = g.vertex_count();
    const int m = g.edge_count();
    const int guard = effective_guard(spec, kMatrixGuardM);
    SubsetTables t(g, Exec::parallel, effective_guard(spec, kEnumGuardM));

    TransitionMatrix M = spec.kind == "rc" ? TransitionMatrix::rc_flip(t, pr, Exec::parallel, guard)
        : spec.kind == "worm"              ? TransitionMatrix::worm_flip(t, pr, Exec::parallel, guard)
                                           : TransitionMatrix::swendsen_wang(t, pr, Exec::parallel, guard);

    const MixingResult mr = mixing_time(M, eps);

    json r = base_record("mix", spec.graph_path);
    r["params"] = params_echo(pr);
    r["kind"] = spec.kind;
    r["p"] = rational_str(pr.p_rc());
    r["eps"] = rational_str(eps);
    r["tau_exact"] = mr.tau;
    r["tau_from_empty"] = mr.tau_from_start;
    r["mode"] = mr.exact ? "rational" : "float";
    r["tolerance"] = mr.tolerance;
    r["gap"] = spec.kind == "sw" ? json(nullptr) : json(spectral_gap(M));

    bool pass = true;
    if (spec.kind == "rc") {
        const double envelope = mixing_envelope(n, m, pr, eps);
        r["bound_chain"] = envelope;
        pass = pass && static_cast<double>(mr.tau) <= envelope;
        const int flow_guard = effective_guard(spec, 16);
        if (pr.q() == 2 && m <= flow_guard && m <= 16) {
            const CycleInventory inv = cycle_inventory(g);
            const WormFlow flow(t, pr, inv);
            const LiftedTraffic lt(flow, Exec::parallel);
            const auto c = rc_congestion(lt, Exec::parallel);
            r["rho"] = rational_str(c.rho);
            const double fb = flow_envelope(c.rho, m, pr, eps);
            r["bound_flow"] = fb;
            pass = pass && static_cast<double>(mr.tau_from_start) <= fb;
        } else {
            r["rho"] = nullptr;
            r["bound_flow"] = nullptr;
        }
    } else {
        r["bound_chain"] = nullptr;
        r["bound_flow"] = nullptr;
        r["rho"] = nullptr;
    }
    r["pass"] = pass;
    flush_records(spec, {r});
    return pass ? 0 : 1;
}

// ---- congestion ----

int cmd_congestion(const RunSpec& spec)
{
    const Params pr = make_params(spec);
    const Graph g = Graph::load(spec.graph_path);
    const int m = g.edge_count();
    SubsetTables t(g, Exec::parallel, effective_guard(spec, kEnumGuardM));
    const int flow_guard = effective_guard(spec, 16);
    if (m > flow_guard) {
        throw GuardError("edge count", m, flow_guard);
    }
    const CycleInventory inv = cycle_inventory(g);
    const WormFlow flow(t, pr, inv);

    std::vector<json> recs;
    bool all_pass = true;
    {
        json r = base_record("worm-traffic", spec.graph_path);
        r["params"] = params_echo(pr);
        const auto certs = check_worm_certificates(flow, Exec::parallel);
        r["paths"] = flow.path_count();
        r["max_length"] = flow.max_length();
        r["legal"] = flow.legal();
        r["transitions"] = certs.transitions;
        r["max_ratio"] = exact_value(certs.max_ratio);
        r["pass"] = flow.legal() && certs.ok;
        all_pass = all_pass && flow.legal() && certs.ok;
        recs.push_back(std::move(r));
    }
    if (pr.q() == 2 && m <= effective_guard(spec, 12)) {
        const LiftedTraffic lt(flow, Exec::parallel);
        {
            json r = base_record("lifted-traffic", spec.graph_path);
            r["params"] = params_echo(pr);
            const auto b = check_lifted_traffic_bounds(lt, Exec::parallel);
            r["transitions"] = b.transitions;
            r["max_ratio"] = exact_value(b.max_ratio);
            r["pass"] = b.ok;
            all_pass = all_pass && b.ok;
            recs.push_back(std::move(r));
        }
        if (pr.p_rc() < 1) {
            json r = base_record("congestion", spec.graph_path);
            r["params"] = params_echo(pr);
            const auto c = rc_congestion(lt, Exec::parallel);
            r["rho"] = exact_value(c.rho);
            r["envelope"] = exact_value(c.envelope);
            r["length_factor"] = c.length_factor;
            r["worst_edge"] = c.worst_edge;
            r["pass"] = c.within;
            all_pass = all_pass && c.within;
            recs.push_back(std::move(r));
        }
    }
    flush_records(spec, recs);
    return all_pass ? 0 : 1;
}

// ---- bench ----

double integrated_autocorrelation(const std::vector<double>& x)
{
    const size_t n = x.size();
    if (n < 2) {
        return 1.0;
    }
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double var = 0;
    for (double v : x) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(n);
    if (var == 0) {
        return 1.0;
    }
    double iat = 1.0;
    for (size_t k = 1; k < n / 2; ++k) {
        double c = 0;
        for (size_t i = 0; i + k < n; ++i) {
            c += (x[i] - mean) * (x[i + k] - mean);
        }
        c /= static_cast<double>(n - k) * var;
        if (c <= 0) {
            break;
        }
        iat += 2 * c;
    }
    return iat;
}

int cmd_bench(const RunSpec& spec)
{
    const Params pr = make_params(spec);
    if (pr.q() != 2) {
        throw std::invalid_argument("bench compares the q = 2 chains");
    }
    const Graph g = Graph::load(spec.graph_path);
    const int m = g.edge_count();
    SplitMix64 master(spec.seed);
    const uint64_t rc_seed = master.next_u64();
    const uint64_t sw_seed = master.next_u64();

    std::vector<json> recs;
    auto rec = [&](const std::string& chain, const std::vector<double>& obs) {
        json r = base_record("bench", spec.graph_path);
        r["params"] = params_echo(pr);
        r["chain"] = chain;
        r["seed"] = spec.seed;
        r["burn_in"] = spec.steps;
        r["samples"] = spec.samples;
        const double mean = obs.empty()
            ? 0.0
            : std::accumulate(obs.begin(), obs.end(), 0.0) / static_cast<double>(obs.size());
        r["mean_edges"] = mean;
        const double iat = integrated_autocorrelation(obs);
        r["iat"] = iat;
        r["ess"] = obs.empty() ? 0.0 : static_cast<double>(obs.size()) / iat;
        return r;
    };

    {
        RcChain chain(g, pr, EdgeSubset::from_mask(m, 0), rc_seed);
        chain.run(spec.steps);
        std::vector<double> obs;
        obs.reserve(static_cast<size_t>(spec.samples));
        for (long i = 0; i < spec.samples; ++i) {
            chain.step();
            obs.push_back(static_cast<double>(chain.state().size()));
        }
        recs.push_back(rec("rc", obs));
    }
    {
        SwChain chain(g, pr, std::vector<uint8_t>(static_cast<size_t>(g.vertex_count()), 0),
                      sw_seed);
        chain.run(spec.steps);
        std::vector<double> obs;
        obs.reserve(static_cast<size_t>(spec.samples));
        for (long i = 0; i < spec.samples; ++i) {
            chain.step();
            obs.push_back(static_cast<double>(chain.kept_edges().size()));
        }
        recs.push_back(rec("sw", obs));
    }
    flush_records(spec, recs);
    return 0;
}

void add_common(CLI::App* sub, RunSpec& spec, bool with_eps, bool with_rng)
{
    sub->add_option("--graph", spec.graph_path, "graph file (n m header, one edge per line)")
        ->required();
    auto* ob = sub->add_option("--beta", spec.beta_s, "Ising parameter beta > 1 (rational)");
    auto* op = sub->add_option("--p", spec.p_s, "random-cluster edge probability p_rc (rational)");
    ob->excludes(op);
    op->excludes(ob);
    sub->add_option("--q", spec.q_s, "cluster weight q (rational, default 2)");
    if (with_eps) {
        sub->add_option("--eps", spec.eps_s, "total-variation target (rational, default 1/4)");
    }
    if (with_rng) {
        sub->add_option("--seed", spec.seed, "random seed");
        sub->add_option("--steps", spec.steps, "steps between emitted samples / burn-in");
        sub->add_option("--samples", spec.samples, "number of samples");
    }
    sub->add_option("--format", spec.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", spec.out_path, "output path (default: stdout)");
    sub->add_option("--guard-m", spec.guard_m, "override all edge-count guards");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"random-cluster / even-subgraph / Ising samplers and exact verification"};
    app.require_subcommand(1);
    RunSpec spec;

    auto* verify = app.add_subcommand("verify", "run the full exact invariant suite");
    add_common(verify, spec, false, false);
    auto* exact = app.add_subcommand("exact", "exact partition functions");
    add_common(exact, spec, false, false);
    auto* sample = app.add_subcommand("sample", "run a sampler and emit states");
    sample->add_option("kind", spec.kind, "chain: rc | worm | lift | sw")
        ->required()
        ->check(CLI::IsMember({"rc", "worm", "lift", "sw"}));
    add_common(sample, spec, false, true);
    auto* mix = app.add_subcommand("mix", "exact mixing time against the closed-form bounds");
    mix->add_option("kind", spec.kind, "chain: rc | worm | sw")
        ->required()
        ->check(CLI::IsMember({"rc", "worm", "sw"}));
    add_common(mix, spec, true, false);
    auto* congestion = app.add_subcommand("congestion", "flow traffic certificates and congestion");
    add_common(congestion, spec, false, false);
    auto* bench = app.add_subcommand("bench", "edge-count autocorrelation of rc vs sw chains");
    add_common(bench, spec, false, true);
    bench->get_option("--steps")->default_val(1000);
    bench->get_option("--samples")->default_val(20000);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    try {
        if (app.got_subcommand(verify)) {
            return cmd_verify(spec);
        }
        if (app.got_subcommand(exact)) {
            return cmd_exact(spec);
        }
        if (app.got_subcommand(sample)) {
            return cmd_sample(spec);
        }
        if (app.got_subcommand(mix)) {
            return cmd_mix(spec);
        }
        if (app.got_subcommand(congestion)) {
            return cmd_congestion(spec);
        }
        if (app.got_subcommand(bench)) {
            return cmd_bench(spec);
        }
    } catch (const GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "input: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
