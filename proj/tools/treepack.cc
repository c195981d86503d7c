/* vim: set sw=4 sts=4 et : */

#include <treepack/cycles.hh>
#include <treepack/diagnostics.hh>
#include <treepack/errors.hh>
#include <treepack/forest.hh>
#include <treepack/generate.hh>
#include <treepack/graph.hh>
#include <treepack/orientation.hh>
#include <treepack/packer.hh>
#include <treepack/rng.hh>
#include <treepack/walk.hh>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <mutex>
#include <thread>

using namespace treepack;
using nlohmann::json;

namespace
{
    const char * const version = "0.3.0";

    struct Common
    {
        std::uint64_t seed = 0;
        std::string out;
        std::string format;
        std::int64_t budget = -1;
        int retries = -1;
        double slack = -1;
    };

    struct Context
    {
        Common common;
        std::vector<std::string> argv;

        auto meta() const -> json
        {
            return { { "version", version }, { "seed", common.seed }, { "argv", argv } };
        }

        auto write(const std::string & text) const -> void
        {
            if (common.out.empty() || common.out == "-") {
                std::cout << text;
                std::cout.flush();
                return;
            }
            std::ofstream f(common.out, std::ios::binary);
            if (! f)
                throw PreconditionError("cannot open " + common.out + " for writing");
            f << text;
        }

        /// JSON documents carry the header as a "meta" member; line formats
        /// as a leading comment.
        auto emit(json doc) const -> void
        {
            json out = { { "meta", meta() } };
            for (auto & [k, v] : doc.items())
                out[k] = v;
            write(out.dump(2) + "\n");
        }

        auto comment(const std::string & lead) const -> std::string
        {
            return lead + " " + meta().dump() + "\n";
        }
    };

    auto add_common(CLI::App * sub, Common & c, bool formats = true) -> void
    {
        sub->add_option("--seed", c.seed, "Random seed");
        sub->add_option("--out", c.out, "Output file (default: stdout)");
        if (formats)
            sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({ "json", "csv", "dot", "text" }));
    }

    auto read_file(const std::string & path) -> std::string
    {
        std::ifstream f(path, std::ios::binary);
        if (! f)
            throw PreconditionError("cannot open " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    auto load_graph(const std::string & path) -> SimpleGraph
    {
        std::istringstream in(read_file(path));
        return read_graph(in);
    }

    auto load_trees(const std::string & path) -> std::vector<RootedForest>
    {
        std::istringstream in(read_file(path));
        return read_forests(in);
    }

    auto edges_json(const std::vector<Edge> & edges) -> json
    {
        json a = json::array();
        for (auto & e : edges)
            a.push_back({ e.u, e.v });
        return a;
    }

    auto hsv(int i, int count) -> std::string
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f 0.750 0.850", count > 0 ? static_cast<double>(i) / count : 0.0);
        return buf;
    }

    auto graph_dot(const SimpleGraph & g) -> std::string
    {
        std::ostringstream s;
        s << "graph G {\n";
        for (VertexId v = 0 ; v < g.order() ; ++v)
            s << "  " << v << ";\n";
        for (auto & e : g.edges())
            s << "  " << e.u << " -- " << e.v << ";\n";
        s << "}\n";
        return s.str();
    }

    /// One colour per tree image; uncovered host edges in grey.
    auto certificate_dot(const SimpleGraph & g, const std::vector<RootedForest> & trees, const PackingCertificate & cert) -> std::string
    {
        std::vector<int> owner(g.size(), -1);
        for (auto & a : cert.assignments)
            for (auto & e : trees[a.tree_id].edges()) {
                int i = g.edge_index(a.map[e.u], a.map[e.v]);
                if (i >= 0)
                    owner[i] = a.tree_id;
            }
        std::ostringstream s;
        s << "graph G {\n";
        for (VertexId v = 0 ; v < g.order() ; ++v)
            s << "  " << v << ";\n";
        for (int i = 0 ; i < g.size() ; ++i) {
            auto & e = g.edges()[i];
            s << "  " << e.u << " -- " << e.v;
            if (owner[i] >= 0)
                s << " [color=\"" << hsv(owner[i], static_cast<int>(trees.size())) << "\", label=\"T" << owner[i] << "\"]";
            else
                s << " [color=\"grey\", style=dashed]";
            s << ";\n";
        }
        s << "}\n";
        return s.str();
    }

    auto certificate_json(const PackingCertificate & cert) -> json
    {
        return json::parse(certificate_to_json(cert));
    }

    // gen-graph

    struct GenGraphArgs
    {
        std::string kind = "complete";
        int n = 0;
        double p = 0.5;
        int d = 0;
    };

    auto run_gen_graph(const Context & ctx, const GenGraphArgs & a) -> int
    {
        SimpleGraph g;
        if (a.kind == "complete")
            g = SimpleGraph::complete(a.n);
        else if (a.kind == "gnp")
            g = gen_gnp(a.n, a.p, ctx.common.seed);
        else
            g = gen_regular(a.n, a.d, ctx.common.seed, ctx.common.retries > 0 ? ctx.common.retries : 1000);

        auto & f = ctx.common.format;
        if (f == "json")
            ctx.emit({ { "n", g.order() }, { "m", g.size() }, { "edges", edges_json(g.edges()) } });
        else if (f == "csv") {
            std::string s = ctx.comment("#") + "u,v\n";
            for (auto & e : g.edges())
                s += std::to_string(e.u) + "," + std::to_string(e.v) + "\n";
            ctx.write(s);
        }
        else if (f == "dot")
            ctx.write(ctx.comment("//") + graph_dot(g));
        else {
            std::ostringstream s;
            s << ctx.comment("#");
            write_graph(s, g);
            ctx.write(s.str());
        }
        return 0;
    }

    // gen-trees

    struct GenTreesArgs
    {
        std::string kind = "gl";
        int n = 0;
        int delta = 3;
        int count = 1;
    };

    auto run_gen_trees(const Context & ctx, const GenTreesArgs & a) -> int
    {
        std::vector<RootedForest> trees;
        if (a.kind == "gl")
            trees = gen_gl_sequence(a.n, a.delta, ctx.common.seed);
        else if (a.kind == "ringel") {
            auto t = gen_random_tree(a.n + 1, a.delta, ctx.common.seed);
            trees.assign(2 * a.n + 1, t);
        }
        else
            for (int i = 0 ; i < a.count ; ++i)
                trees.push_back(gen_random_tree(a.n, a.delta, mix_seed(ctx.common.seed, static_cast<std::uint64_t>(i))));

        std::ostringstream s;
        write_forests(s, trees);
        ctx.emit(json::parse(s.str()));
        return 0;
    }

    // diagnose

    struct DiagnoseArgs
    {
        std::string graph;
        std::string check = "quasi-random";
        std::string epsilon = "1/10", p = "1", beta = "1/2", alpha = "1/2", nu = "1/10", tau = "1/5";
        int split = -1;
        bool super = false;
    };

    auto report_json(const DiagnosticsReport & r) -> json
    {
        json w = json::array();
        for (auto & s : r.witness)
            w.push_back(s);
        return { { "check", r.check }, { "verdict", to_string(r.verdict) }, { "mode", to_string(r.mode) },
            { "witness", w }, { "detail", r.detail }, { "samples", r.samples } };
    }

    auto run_diagnose(const Context & ctx, const DiagnoseArgs & a) -> int
    {
        auto g = load_graph(a.graph);
        std::int64_t trials = ctx.common.budget > 0 ? ctx.common.budget : 20000;
        DiagnosticsReport r;
        if (a.check == "quasi-random")
            r = check_quasi_random(g, { parse_rational(a.epsilon), parse_rational(a.p) });
        else if (a.check == "dense") {
            DenseParams p;
            p.beta = parse_rational(a.beta);
            p.alpha = parse_rational(a.alpha);
            p.trials = trials;
            p.seed = ctx.common.seed;
            r = check_dense(g, p);
        }
        else if (a.check == "expander") {
            ExpanderParams p;
            p.nu = parse_rational(a.nu);
            p.tau = parse_rational(a.tau);
            p.trials = trials;
            p.seed = ctx.common.seed;
            r = check_robust_expander(g, p);
        }
        else {
            int k = a.split >= 0 ? a.split : g.order() / 2;
            VertexSet left, right;
            for (VertexId v = 0 ; v < g.order() ; ++v)
                (v < k ? left : right).push_back(v);
            RegularityParams p;
            p.epsilon = parse_rational(a.epsilon);
            p.super = a.super;
            p.trials = trials;
            p.seed = ctx.common.seed;
            r = check_regular_pair(BipartitionView(g, left, right), p);
        }
        ctx.emit(report_json(r));
        return r.passed() ? 0 : 1;
    }

    // walk-embed

    struct WalkArgs
    {
        int n = 1000;
        int delta = 3;
        int ell = 5;
        std::int64_t m = -1;
    };

    auto run_walk_embed(const Context & ctx, const WalkArgs & a) -> int
    {
        auto t = gen_random_tree(a.n, a.delta, ctx.common.seed);
        WalkEmbedParams p;
        p.ell = a.ell;
        p.m = a.m > 0 ? a.m : static_cast<std::int64_t>(std::ceil(1.05 * a.n / a.ell));
        p.seed = ctx.common.seed;
        if (ctx.common.retries > 0)
            p.retry_limit = ctx.common.retries;
        CycleBlowup blowup(a.ell, static_cast<int>(p.m));
        auto r = walk_embed_tree(t, blowup, p);
        ctx.emit({ { "ok", r.ok }, { "attempts", r.attempts }, { "n", a.n }, { "ell", a.ell }, { "m", p.m },
            { "max_load", r.max_load }, { "max_pair_load", r.max_pair_load }, { "loads", r.assignment.loads },
            { "pair_loads", r.assignment.pair_loads } });
        return r.ok ? 0 : 1;
    }

    // cycle-decomp

    struct CycleArgs
    {
        std::string graph;
        int r = 3;
    };

    auto run_cycle_decomp(const Context & ctx, const CycleArgs & a) -> int
    {
        auto g = load_graph(a.graph);
        CycleDecompParams p;
        p.r = a.r;
        p.seed = ctx.common.seed;
        if (ctx.common.retries > 0)
            p.hamilton_restarts = ctx.common.retries;
        if (ctx.common.slack >= 0)
            p.fair_slack = static_cast<std::int64_t>(ctx.common.slack);
        auto r = decompose_long_cycles(g, p);
        bool valid = r.ok && cycle_list_is_valid(g, r.cycles, r.leftover);
        ctx.emit({ { "ok", r.ok }, { "verified", valid }, { "failure", r.failure }, { "iterations", r.iterations },
            { "cycles", r.cycles.cycles }, { "hamilton", r.cycles.hamilton }, { "leftover", edges_json(r.leftover.edges()) },
            { "gap_history", r.gap_history } });
        return valid ? 0 : 1;
    }

    // orient

    auto run_orient(const Context & ctx, const std::string & graph) -> int
    {
        auto g = load_graph(graph);
        OrientParams p;
        p.seed = ctx.common.seed;
        if (ctx.common.retries > 0)
            p.restarts = ctx.common.retries;
        auto r = orient_with_fallback(g, p);
        int dbar = g.order() > 0 ? g.size() / g.order() : 0;
        bool verified = r.feasible && orientation_is_out_regular(g, r.orientation, dbar);
        json arcs = json::array();
        for (auto & e : r.orientation.arcs)
            arcs.push_back({ e.u, e.v });
        ctx.emit({ { "feasible", r.feasible }, { "verified", verified }, { "method", r.method }, { "dbar", dbar },
            { "arcs", arcs }, { "witness", r.oracle.witness }, { "reason", r.oracle.reason },
            { "layer_iterations", r.layered.iterations } });
        return verified ? 0 : 1;
    }

    // pack-exact, pack-heuristic, verify

    struct PackArgs
    {
        std::string graph, trees, cert;
        std::string mode = "decompose";
        double time_limit = 110;
    };

    auto emit_certificate(const Context & ctx, const SimpleGraph & g, const std::vector<RootedForest> & trees,
            const PackingCertificate * cert, json extra) -> void
    {
        if (ctx.common.format == "dot" && cert) {
            ctx.write(ctx.comment("//") + certificate_dot(g, trees, *cert));
            return;
        }
        if (cert) {
            auto doc = certificate_json(*cert);
            for (auto & [k, v] : doc.items())
                extra[k] = v;
        }
        ctx.emit(extra);
    }

    auto run_pack_exact(const Context & ctx, const PackArgs & a) -> int
    {
        auto g = load_graph(a.graph);
        auto trees = load_trees(a.trees);
        ExactOptions o;
        if (ctx.common.budget > 0)
            o.budget = ctx.common.budget;
        auto mode = parse_pack_mode(a.mode);
        auto r = pack_exact(g, trees, mode, o);

        json extra = { { "status", to_string(r.status) }, { "nodes", r.nodes }, { "reason", r.reason } };
        if (r.reason == "edge-count") {
            std::int64_t total = 0;
            for (auto & t : trees)
                total += t.size();
            extra["coverage"] = { { "tree_edges", total }, { "host_edges", g.size() },
                { "suggested_mode", total <= g.size() ? "pack" : "none" } };
        }
        bool ok = r.status == ExactStatus::found && verify_certificate(g, trees, r.certificate).ok;
        emit_certificate(ctx, g, trees, ok ? &r.certificate : nullptr, extra);
        return ok ? 0 : 1;
    }

    auto run_pack_heuristic(const Context & ctx, const PackArgs & a) -> int
    {
        auto g = load_graph(a.graph);
        auto trees = load_trees(a.trees);
        HeuristicConfig c;
        c.seed = ctx.common.seed;
        c.time_limit_seconds = a.time_limit;
        if (ctx.common.retries > 0)
            c.restarts = ctx.common.retries;
        if (ctx.common.budget > 0)
            c.finish_budget = ctx.common.budget;
        if (ctx.common.slack >= 0)
            c.vortex_slack = ctx.common.slack;
        auto r = pack_heuristic(g, trees, c);

        json phases = json::array();
        for (auto & p : r.phases)
            phases.push_back({ { "phase", p.phase }, { "trees", p.trees }, { "residual_edges", p.residual_edges }, { "ok", p.ok } });
        json extra = { { "ok", r.ok }, { "attempts", r.attempts }, { "failed_phase", r.failed_phase }, { "failure", r.failure },
            { "residual_edges", r.residual_edges }, { "phases", phases } };
        bool ok = r.ok && verify_certificate(g, trees, r.certificate).ok;
        emit_certificate(ctx, g, trees, ok ? &r.certificate : nullptr, extra);
        return ok ? 0 : 1;
    }

    auto run_verify(const Context & ctx, const PackArgs & a) -> int
    {
        auto g = load_graph(a.graph);
        auto trees = load_trees(a.trees);
        auto cert = certificate_from_json(read_file(a.cert));
        auto r = verify_certificate(g, trees, cert);
        json doc = { { "verdict", r.ok ? "pass" : "fail" }, { "violation", r.violation }, { "tree_id", r.tree_id },
            { "vertex", r.vertex } };
        doc["edge"] = r.edge ? json{ r.edge->u, r.edge->v } : json(nullptr);
        ctx.emit(doc);
        return r.ok ? 0 : 1;
    }

    // bench

    struct BenchArgs
    {
        std::string kind = "gl";
        int n = 6;
        int instances = 10;
        int delta = 4;
        unsigned jobs = 1;
    };

    struct BenchRow
    {
        int instance = 0;
        std::uint64_t seed = 0;
        int trees = 0;
        std::string status;
        std::int64_t work = 0;
        bool pass = false;
    };

    auto bench_one(const BenchArgs & a, const Common & common, int i) -> BenchRow
    {
        BenchRow row;
        row.instance = i;
        row.seed = common.seed + static_cast<std::uint64_t>(i);
        std::vector<RootedForest> trees;
        SimpleGraph g;
        if (a.kind == "ringel") {
            g = SimpleGraph::complete(2 * a.n + 1);
            trees.assign(2 * a.n + 1, gen_random_tree(a.n + 1, a.delta, row.seed));
        }
        else {
            g = SimpleGraph::complete(a.n);
            trees = gen_gl_sequence(a.n, a.delta, row.seed);
        }
        row.trees = static_cast<int>(trees.size());

        if (a.kind == "heuristic") {
            HeuristicConfig c;
            c.seed = row.seed;
            if (common.retries > 0)
                c.restarts = common.retries;
            c.time_limit_seconds = 1e9;
            auto r = pack_heuristic(g, trees, c);
            row.status = r.ok ? "found" : "failed:" + r.failed_phase;
            row.work = r.attempts;
            row.pass = r.ok && verify_certificate(g, trees, r.certificate).ok;
        }
        else {
            ExactOptions o;
            if (common.budget > 0)
                o.budget = common.budget;
            auto r = pack_exact(g, trees, PackMode::decompose, o);
            row.status = to_string(r.status);
            row.work = r.nodes;
            row.pass = r.status == ExactStatus::found && verify_certificate(g, trees, r.certificate).ok;
        }
        return row;
    }

    auto run_bench(const Context & ctx, const BenchArgs & a) -> int
    {
        std::vector<BenchRow> rows(std::max(0, a.instances));
        unsigned jobs = std::max(1u, a.jobs);
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex lock;
        for (unsigned w = 0 ; w < jobs ; ++w)
            pool.emplace_back([&, w] {
                for (int i = static_cast<int>(w) ; i < a.instances ; i += static_cast<int>(jobs)) {
                    try {
                        rows[i] = bench_one(a, ctx.common, i);
                    }
                    catch (...) {
                        std::lock_guard<std::mutex> g(lock);
                        if (! error)
                            error = std::current_exception();
                    }
                }
            });
        for (auto & t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);

        bool all = std::all_of(rows.begin(), rows.end(), [] (const BenchRow & r) { return r.pass; });
        const char * work = a.kind == "heuristic" ? "attempts" : "nodes";
        if (ctx.common.format == "json") {
            json list = json::array();
            for (auto & r : rows)
                list.push_back({ { "instance", r.instance }, { "seed", r.seed }, { "trees", r.trees }, { "status", r.status },
                    { work, r.work }, { "verdict", r.pass ? "pass" : "fail" } });
            ctx.emit({ { "kind", a.kind }, { "n", a.n }, { "rows", list }, { "all_pass", all } });
        }
        else {
            std::string s = ctx.comment("#") + "instance,seed,n,trees,status," + work + ",verdict\n";
            for (auto & r : rows)
                s += std::to_string(r.instance) + "," + std::to_string(r.seed) + "," + std::to_string(a.n) + ","
                    + std::to_string(r.trees) + "," + r.status + "," + std::to_string(r.work) + ","
                    + (r.pass ? "pass" : "fail") + "\n";
            ctx.write(s);
        }
        return all ? 0 : 1;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{ "Tree packing and decomposition toolkit" };
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    Context ctx;
    for (int i = 1 ; i < argc ; ++i)
        ctx.argv.emplace_back(argv[i]);
    Common & c = ctx.common;

    GenGraphArgs gg;
    auto * gen_graph = app.add_subcommand("gen-graph", "Generate a host graph");
    add_common(gen_graph, c);
    gen_graph->add_option("--kind", gg.kind, "complete, gnp or regular")->check(CLI::IsMember({ "complete", "gnp", "regular" }));
    gen_graph->add_option("--n", gg.n, "Vertices")->required()->check(CLI::NonNegativeNumber);
    gen_graph->add_option("--p", gg.p, "Edge probability (gnp)")->check(CLI::Range(0.0, 1.0));
    gen_graph->add_option("--d", gg.d, "Degree (regular)")->check(CLI::NonNegativeNumber);
    gen_graph->add_option("--retries", c.retries, "Samples for the regular generator");

    GenTreesArgs gt;
    auto * gen_trees = app.add_subcommand("gen-trees", "Generate a tree family");
    add_common(gen_trees, c, false);
    gen_trees->add_option("--kind", gt.kind, "gl (T_1..T_n), ringel (2n+1 copies of one tree on n+1 vertices) or random")
        ->check(CLI::IsMember({ "gl", "ringel", "random" }));
    gen_trees->add_option("--n", gt.n, "Size parameter")->required()->check(CLI::PositiveNumber);
    gen_trees->add_option("--delta", gt.delta, "Maximum degree")->check(CLI::PositiveNumber);
    gen_trees->add_option("--count", gt.count, "Trees (random)")->check(CLI::NonNegativeNumber);

    DiagnoseArgs dg;
    auto * diagnose = app.add_subcommand("diagnose", "Structural checks on a graph");
    add_common(diagnose, c, false);
    diagnose->add_option("--graph", dg.graph, "Graph file")->required();
    diagnose->add_option("--check", dg.check)->check(CLI::IsMember({ "quasi-random", "dense", "expander", "regular-pair" }));
    diagnose->add_option("--epsilon", dg.epsilon);
    diagnose->add_option("--p", dg.p);
    diagnose->add_option("--beta", dg.beta);
    diagnose->add_option("--alpha", dg.alpha);
    diagnose->add_option("--nu", dg.nu);
    diagnose->add_option("--tau", dg.tau);
    diagnose->add_option("--split", dg.split, "Regular pair: vertices below this index form one side");
    diagnose->add_flag("--super", dg.super, "Regular pair: also test the super-regular degree condition");
    diagnose->add_option("--budget", c.budget, "Samples for sampled checks");

    WalkArgs wk;
    auto * walk = app.add_subcommand("walk-embed", "Embed a random tree into a cycle blow-up");
    add_common(walk, c, false);
    walk->add_option("--n", wk.n, "Tree order")->check(CLI::PositiveNumber);
    walk->add_option("--delta", wk.delta)->check(CLI::PositiveNumber);
    walk->add_option("--ell", wk.ell, "Cycle length")->check(CLI::Range(3, 1 << 20));
    walk->add_option("--m", wk.m, "Cluster capacity (default ceil(1.05 n / ell))");
    walk->add_option("--retries", c.retries, "Assignment attempts");

    CycleArgs cy;
    auto * cycle = app.add_subcommand("cycle-decomp", "Hamilton and long odd cycle decomposition");
    add_common(cycle, c, false);
    cycle->add_option("--graph", cy.graph)->required();
    cycle->add_option("--r", cy.r)->check(CLI::PositiveNumber);
    cycle->add_option("--retries", c.retries, "Hamilton search restarts");
    cycle->add_option("--slack", c.slack, "Fair partition slack");

    std::string orient_graph;
    auto * orient = app.add_subcommand("orient", "Out-regular orientation");
    add_common(orient, c, false);
    orient->add_option("--graph", orient_graph)->required();
    orient->add_option("--retries", c.retries, "Restarts of the layer algorithm");

    PackArgs pe;
    auto * pack_exact_cmd = app.add_subcommand("pack-exact", "Exact backtracking decomposition");
    add_common(pack_exact_cmd, c);
    pack_exact_cmd->add_option("--graph", pe.graph)->required();
    pack_exact_cmd->add_option("--trees", pe.trees)->required();
    pack_exact_cmd->add_option("--mode", pe.mode)->check(CLI::IsMember({ "decompose", "pack" }));
    pack_exact_cmd->add_option("--budget", c.budget, "Node budget");

    PackArgs ph;
    auto * pack_heur = app.add_subcommand("pack-heuristic", "Vortex, bulk, cover, finish and absorb pipeline");
    add_common(pack_heur, c);
    pack_heur->add_option("--graph", ph.graph)->required();
    pack_heur->add_option("--trees", ph.trees)->required();
    pack_heur->add_option("--retries", c.retries, "Restarts");
    pack_heur->add_option("--budget", c.budget, "Node budget of the finishing search");
    pack_heur->add_option("--slack", c.slack, "Vortex degree-window widening factor");
    pack_heur->add_option("--time-limit", ph.time_limit, "Seconds before no further restart is started");

    PackArgs vf;
    auto * verify = app.add_subcommand("verify", "Check a certificate");
    add_common(verify, c, false);
    verify->add_option("--graph", vf.graph)->required();
    verify->add_option("--trees", vf.trees)->required();
    verify->add_option("--cert", vf.cert)->required();

    BenchArgs bb;
    auto * bench = app.add_subcommand("bench", "Batch of seeded instances");
    add_common(bench, c);
    bench->add_option("kind", bb.kind, "gl, ringel or heuristic")->check(CLI::IsMember({ "gl", "ringel", "heuristic" }));
    bench->add_option("--n", bb.n)->check(CLI::PositiveNumber);
    bench->add_option("--instances", bb.instances)->check(CLI::NonNegativeNumber);
    bench->add_option("--delta", bb.delta)->check(CLI::PositiveNumber);
    bench->add_option("--jobs", bb.jobs, "Worker threads")->check(CLI::PositiveNumber);
    bench->add_option("--budget", c.budget, "Node budget per instance");
    bench->add_option("--retries", c.retries, "Heuristic restarts per instance");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen_graph)
            return run_gen_graph(ctx, gg);
        if (*gen_trees)
            return run_gen_trees(ctx, gt);
        if (*diagnose)
            return run_diagnose(ctx, dg);
        if (*walk)
            return run_walk_embed(ctx, wk);
        if (*cycle)
            return run_cycle_decomp(ctx, cy);
        if (*orient)
            return run_orient(ctx, orient_graph);
        if (*pack_exact_cmd)
            return run_pack_exact(ctx, pe);
        if (*pack_heur)
            return run_pack_heuristic(ctx, ph);
        if (*verify)
            return run_verify(ctx, vf);
        if (*bench) {
            if (c.format.empty())
                c.format = "csv";
            return run_bench(ctx, bb);
        }
    }
    catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const PreconditionError & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
