/* vim: set sw=4 sts=4 et : */

// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 only
// when all of them pass.

#include "oracles.hh"

#include <treepack/covering.hh>
#include <treepack/cycles.hh>
#include <treepack/errors.hh>
#include <treepack/forest.hh>
#include <treepack/generate.hh>
#include <treepack/orientation.hh>
#include <treepack/packer.hh>
#include <treepack/rng.hh>
#include <treepack/walk.hh>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace treepack;

namespace
{
    using clock_type = std::chrono::steady_clock;

    auto seconds_since(clock_type::time_point t) -> double
    {
        return std::chrono::duration<double>(clock_type::now() - t).count();
    }

    int failures = 0;

    auto report(int id, const std::string & name, bool ok, const std::string & detail) -> void
    {
        std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << detail << std::endl;
        if (! ok)
            ++failures;
    }

    auto fmt(double x, int digits = 2) -> std::string
    {
        std::ostringstream s;
        s.setf(std::ios::fixed);
        s.precision(digits);
        s << x;
        return s.str();
    }

    struct Instance
    {
        SimpleGraph host;
        std::vector<RootedForest> trees;
        PackingCertificate cert;
    };

    std::vector<Instance> increasing_instances;

    auto increasing_sequences() -> void
    {
        auto start = clock_type::now();
        int found = 0, verified = 0, infeasible = 0, total = 0;
        for (int n = 2 ; n <= 8 ; ++n)
            for (std::uint64_t s = 0 ; s < 50 ; ++s) {
                ++total;
                auto g = SimpleGraph::complete(n);
                auto trees = gen_gl_sequence(n, 4, mix_seed(1000 + static_cast<std::uint64_t>(n), s));
                auto r = pack_exact(g, trees, PackMode::decompose);
                if (r.status == ExactStatus::infeasible)
                    ++infeasible;
                if (r.status != ExactStatus::found)
                    continue;
                ++found;
                if (verify_certificate(g, trees, r.certificate).ok)
                    ++verified;
                increasing_instances.push_back({ g, trees, r.certificate });
            }
        double t = seconds_since(start);
        report(1, "increasing-tree decompositions of K_n, n = 2..8", verified == total && t <= 120,
                std::to_string(verified) + "/" + std::to_string(total) + " verified, " + std::to_string(infeasible)
                + " infeasible, " + fmt(t, 3) + " s");
    }

    auto copies_of_one_tree() -> void
    {
        auto start = clock_type::now();
        int ok = 0, total = 0;
        std::string classes;
        for (int n = 2 ; n <= 4 ; ++n) {
            auto kinds = enumerate_unlabelled_trees(n + 1);
            classes += (classes.empty() ? "" : ",") + std::to_string(kinds.size());
            auto g = SimpleGraph::complete(2 * n + 1);
            for (auto & t : kinds) {
                ++total;
                std::vector<RootedForest> copies(2 * n + 1, t);
                auto r = pack_exact(g, copies, PackMode::decompose);
                if (r.status == ExactStatus::found && verify_certificate(g, copies, r.certificate).ok)
                    ++ok;
            }
        }
        double t = seconds_since(start);
        report(2, "2n+1 copies of each tree on n+1 vertices into K_{2n+1}, n = 2..4",
                ok == total && total == 6 && t <= 60,
                std::to_string(ok) + "/" + std::to_string(total) + " verified (classes " + classes + "), " + fmt(t, 3) + " s");
    }

    auto out_degrees_ok(const SimpleGraph & g, const Orientation & o, int d) -> bool
    {
        if (static_cast<int>(o.arcs.size()) != g.size())
            return false;
        std::set<Edge> seen;
        std::vector<int> out(g.order(), 0);
        for (auto & a : o.arcs) {
            if (! g.adjacent(a.u, a.v) || ! seen.insert(make_edge(a.u, a.v)).second)
                return false;
            ++out[a.u];
        }
        return std::all_of(out.begin(), out.end(), [&] (int x) { return x == d; });
    }

    auto orientations() -> void
    {
        int regular_ok = 0;
        double slowest = 0;
        for (std::uint64_t s = 0 ; s < 200 ; ++s) {
            Rng rng(mix_seed(3000, s));
            int d = 1 + static_cast<int>(rng.below(5));
            int n = static_cast<int>(rng.uniform_int(std::max(10, 2 * d + 1), 50));
            auto g = gen_regular(n, 2 * d, rng.next_u64());
            auto start = clock_type::now();
            OrientParams p;
            p.seed = rng.next_u64();
            bool ok = false;
            try {
                auto r = orient_out_regular(g, p);
                ok = r.ok && out_degrees_ok(g, r.orientation, d) && orient_exact_oracle(g, d).feasible;
            }
            catch (const std::exception &) {
            }
            slowest = std::max(slowest, seconds_since(start));
            regular_ok += ok;
        }

        // near-regular hosts: a dense random regular graph with k edges
        // traded for non-edges, so the degree gap is small against pn
        auto near_regular = [] (Rng & rng) {
            int n = static_cast<int>(rng.uniform_int(20, 50));
            int half = static_cast<int>(std::lround((0.5 + 0.4 * rng.real()) * (n - 1) / 2));
            auto g = gen_regular(n, 2 * half, rng.next_u64());
            int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 4)));
            auto edges = g.edges();
            rng.shuffle(edges);
            std::set<Edge> added;
            while (static_cast<int>(added.size()) < k) {
                VertexId a = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
                VertexId b = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
                if (a != b && ! g.adjacent(a, b))
                    added.insert(make_edge(a, b));
            }
            auto kept = remove_edges(g, std::vector<Edge>(edges.begin(), edges.begin() + k)).edges();
            kept.insert(kept.end(), added.begin(), added.end());
            return SimpleGraph(n, kept);
        };
        // G(n, p) trimmed to m = 0 mod n: degree gaps comparable to dbar
        auto trimmed_gnp = [] (Rng & rng) {
            int n = static_cast<int>(rng.uniform_int(20, 50));
            auto g = gen_gnp(n, 0.5 + 0.4 * rng.real(), rng.next_u64());
            auto edges = g.edges();
            rng.shuffle(edges);
            return remove_edges(g, std::vector<Edge>(edges.begin(), edges.begin() + g.size() % n));
        };

        struct Tally { int feasible = 0, by_layers = 0, by_fallback = 0, verified = 0; };
        auto run = [] (std::uint64_t salt, const std::function<SimpleGraph(Rng &)> & make) {
            Tally tally;
            for (std::uint64_t s = 0, tried = 0 ; tried < 200 ; ++s) {
                Rng rng(mix_seed(salt, s));
                auto g = make(rng);
                if (g.is_regular() || g.size() == 0)
                    continue;
                ++tried;
                int d = g.size() / g.order();
                if (! orient_exact_oracle(g, d).feasible)
                    continue;
                ++tally.feasible;
                OrientParams p;
                p.seed = rng.next_u64();
                p.restarts = 5;
                bool layered = false;
                try {
                    auto r = orient_out_regular(g, p);
                    layered = r.ok && out_degrees_ok(g, r.orientation, d);
                }
                catch (const PreconditionError &) {
                }
                if (layered) {
                    ++tally.by_layers;
                    ++tally.verified;
                    continue;
                }
                auto f = orient_with_fallback(g, p);
                if (f.feasible && out_degrees_ok(g, f.orientation, d)) {
                    ++tally.by_fallback;
                    ++tally.verified;
                }
            }
            return tally;
        };

        auto near = run(4000, near_regular);
        auto wide = run(4500, trimmed_gnp);
        auto pct = [] (const Tally & t) { return t.feasible ? 100.0 * t.by_layers / t.feasible : 0.0; };
        report(3, "out-regular orientations", regular_ok == 200 && slowest <= 1.0 && pct(near) >= 90
                && near.verified == near.feasible,
                "regular " + std::to_string(regular_ok) + "/200 (slowest " + fmt(slowest, 3) + " s); near-regular: "
                + std::to_string(near.by_layers) + "/" + std::to_string(near.feasible) + " feasible solved by layers ("
                + fmt(pct(near), 1) + "%), " + std::to_string(near.by_fallback) + " by fallback, "
                + std::to_string(near.verified) + " verified; info, trimmed G(n,p): " + fmt(pct(wide), 1)
                + "% by layers, " + std::to_string(wide.verified) + "/" + std::to_string(wide.feasible) + " verified");
    }

    auto walk_mixing() -> void
    {
        const std::int64_t trials = 1'000'000;
        bool ok = true;
        double worst_dev = 0, worst_z = 0;
        for (int ell : { 3, 5, 7 }) {
            auto table = simulate_walk(ell, { 50 }, trials, 5000 + static_cast<std::uint64_t>(ell));
            auto exact = oracle::walk_distribution(ell, 50);
            for (int i = 0 ; i < ell ; ++i) {
                double dev = std::abs(table[0][i] - 1.0 / ell);
                double se = std::sqrt(exact[i] * (1 - exact[i]) / trials);
                double z = std::abs(table[0][i] - exact[i]) / se;
                worst_dev = std::max(worst_dev, dev);
                worst_z = std::max(worst_z, z);
                ok = ok && dev <= 0.01 && z <= 4;
            }
        }
        auto even = simulate_walk(4, { 49, 50 }, 100000, 5004);
        bool parity = even[0][0] == 0 && even[0][2] == 0 && even[1][1] == 0 && even[1][3] == 0
            && std::abs(even[1][0] + even[1][2] - 1.0) < 1e-9;
        report(4, "walk mixing on odd cycles", ok && parity,
                "max |p - 1/l| = " + fmt(worst_dev, 5) + ", max z = " + fmt(worst_z, 2) + ", even cycle alternates: "
                + (parity ? "yes" : "no"));
    }

    auto walk_loads() -> void
    {
        const int n = 10000, ell = 5;
        const std::int64_t m = static_cast<std::int64_t>(std::ceil(1.05 * n / ell));
        CycleBlowup blowup(ell, static_cast<int>(m));
        int ok = 0, first_try = 0, verified = 0;
        for (std::uint64_t s = 0 ; s < 100 ; ++s) {
            auto t = gen_random_tree(n, 3, mix_seed(6000, s));
            WalkEmbedParams p;
            p.ell = ell;
            p.m = m;
            p.seed = mix_seed(6100, s);
            auto r = walk_embed_tree(t, blowup, p);
            if (! r.ok)
                continue;
            ++ok;
            first_try += r.attempts == 1;
            auto & phi = *r.embedding;
            bool good = phi.is_total() && r.max_load <= m && r.max_pair_load <= m;
            std::vector<char> used(blowup.order(), 0);
            for (auto v : phi.map) {
                good = good && v >= 0 && v < blowup.order() && ! used[v];
                if (v >= 0 && v < blowup.order())
                    used[v] = 1;
            }
            for (auto & e : t.edges())
                good = good && blowup.adjacent(phi.map[e.u], phi.map[e.v]);
            verified += good;
        }
        report(5, "walk embedding loads, n = 10^4, l = 5, m = 1.05 n / l", ok >= 95 && verified == ok,
                std::to_string(ok) + "/100 within capacity " + std::to_string(m) + " (" + std::to_string(first_try)
                + " on the first seed), " + std::to_string(verified) + " verified");
    }

    auto property_suites() -> void
    {
        std::vector<std::string> broken;
        auto expect = [&] (bool cond, const std::string & what) {
            if (! cond && std::find(broken.begin(), broken.end(), what) == broken.end())
                broken.push_back(what);
        };

        for (std::uint64_t s = 0 ; s < 1000 ; ++s) {
            Rng rng(mix_seed(7000, s));
            int n = 1 + static_cast<int>(rng.below(300));
            auto t = gen_random_tree(n, 3, rng.next_u64());
            int g = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            auto parts = decompose_rooted(t, { g, 3 });
            std::vector<int> hits(n, 0);
            for (auto & h : parts) {
                expect(h.size >= g && h.size <= 6 * g, "decomposition part size");
                for (auto v : h.vertices)
                    ++hits[v];
            }
            expect(std::all_of(hits.begin(), hits.end(), [] (int c) { return c == 1; }), "decomposition partition");
        }

        int extracted = 0;
        for (std::uint64_t s = 0 ; extracted < 1000 ; ++s) {
            Rng rng(mix_seed(7100, s));
            int n = 50 + static_cast<int>(rng.below(500));
            auto t = gen_random_tree(n, 3, rng.next_u64());
            int k = static_cast<int>(rng.below(3));
            Rational alpha(1, 2 * static_cast<std::int64_t>(std::pow(3, k)) + static_cast<std::int64_t>(rng.below(20)));
            if (alpha * Rational(n) < 1)
                continue;
            ++extracted;
            VertexId x = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
            try {
                auto h = extract_subtree(t, x, alpha, k);
                auto d = bfs_distances(t.to_graph(), x);
                expect(Rational(h.size) >= alpha * Rational(n) && Rational(h.size) <= alpha * Rational(3 * n), "extraction window");
                expect(d[h.y] >= k, "extraction distance");
            }
            catch (const std::exception &) {
                expect(false, "extraction raised");
            }
        }

        for (std::uint64_t s = 0 ; s < 1000 ; ++s) {
            Rng rng(mix_seed(7200, s));
            int n = 1 + static_cast<int>(rng.below(80));
            WeightedSet ws;
            ws.m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            ws.cap = Rational(1 + static_cast<std::int64_t>(rng.below(9)), 1 + static_cast<std::int64_t>(rng.below(3)));
            Rational total(0);
            for (int i = 0 ; i < n ; ++i) {
                ws.w.push_back(ws.cap * Rational(static_cast<std::int64_t>(rng.below(1000)), 1000));
                total += ws.w.back();
            }
            auto parts = weight_partition(ws);
            std::vector<int> hits(n, 0);
            for (auto & p : parts) {
                Rational w(0);
                for (int i : p) {
                    w += ws.w[i];
                    ++hits[i];
                }
                expect(w <= Rational(2) * total / Rational(ws.m) + ws.cap, "weight bound");
                expect(static_cast<std::int64_t>(p.size()) <= ceil_of(Rational(2 * n, ws.m)), "part size bound");
            }
            expect(std::all_of(hits.begin(), hits.end(), [] (int c) { return c == 1; }), "weight partition cover");
        }

        for (std::uint64_t s = 0 ; s < 1000 ; ++s) {
            Rng rng(mix_seed(7300, s));
            int na = 2 + static_cast<int>(rng.below(15)), nb = 1 + static_cast<int>(rng.below(12));
            std::vector<Edge> e;
            for (int b = 0 ; b < nb ; ++b) {
                std::vector<int> wings;
                for (int a = 0 ; a < na ; ++a)
                    if (rng.coin())
                        wings.push_back(a);
                if (wings.size() % 2)
                    wings.pop_back();
                for (int a : wings)
                    e.push_back({ a, na + b });
            }
            SimpleGraph g(na + nb, e);
            VertexSet a, b;
            for (int i = 0 ; i < na ; ++i)
                a.push_back(i);
            for (int j = 0 ; j < nb ; ++j)
                b.push_back(na + j);
            BipartitionView view(g, a, b);
            auto flocks = seagull_decompose(view);
            expect(static_cast<int>(flocks.size()) <= 3 * view.max_degree(), "flock count");
            std::multiset<Edge> covered;
            for (auto & f : flocks) {
                std::set<VertexId> seen;
                for (auto & sg : f) {
                    for (auto v : { sg.wing1, sg.centre, sg.wing2 })
                        expect(seen.insert(v).second, "flock vertex-disjointness");
                    expect(sg.centre >= na && sg.wing1 < na && sg.wing2 < na, "seagull sides");
                    covered.insert(make_edge(sg.wing1, sg.centre));
                    covered.insert(make_edge(sg.wing2, sg.centre));
                }
            }
            expect(covered == std::multiset<Edge>(g.edges().begin(), g.edges().end()), "flock edge partition");
        }

        int euler_ok = 0;
        for (std::uint64_t s = 0 ; s < 1000 ; ++s) {
            Rng rng(mix_seed(7400, s));
            int n = 6 + static_cast<int>(rng.below(40));
            auto g = gen_gnp(n, 0.35 + 0.6 * rng.real(), rng.next_u64());
            auto r = make_eulerian(g);
            if (! r.ok)
                continue;
            ++euler_ok;
            bool even = true;
            for (VertexId v = 0 ; v < n ; ++v)
                even = even && r.eulerian.degree(v) % 2 == 0;
            expect(even, "eulerian degrees");
            expect(max_degree(r.removed) <= 3, "removed max degree");
            expect(r.eulerian.size() + static_cast<int>(r.removed.size()) == g.size(), "eulerian edge split");
        }

        int cycles_ok = 0, cycle_runs = 0, with_loop = 0;
        for (std::uint64_t s = 0 ; cycle_runs < 1000 ; ++s) {
            Rng rng(mix_seed(7500, s));
            CycleDecompParams p;
            p.r = 3 + static_cast<int>(rng.below(3));
            p.seed = rng.next_u64();
            // parts of size up to n/r + 2 stay below n/(r-1) only from n = 2r(r-1) on
            int low = std::max(21, 2 * p.r * (p.r - 1) + 1);
            int n = low + 2 * static_cast<int>(rng.below(static_cast<std::uint64_t>((61 - low) / 2 + 1)));
            int d = 2 * static_cast<int>(rng.uniform_int((n + 3) / 4, (n - 1) / 2));
            auto g = oracle::near_regular_eulerian(n, d, 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 3))), rng.next_u64());
            ++cycle_runs;
            CycleDecompResult r;
            try {
                r = decompose_long_cycles(g, p);
            }
            catch (const PreconditionError &) {
                continue;
            }
            catch (const std::exception &) {
                expect(false, "cycle decomposition raised");
                continue;
            }
            if (! r.ok)
                continue;
            ++cycles_ok;
            with_loop += r.iterations > 0;
            std::multiset<Edge> all;
            for (std::size_t i = 0 ; i < r.cycles.cycles.size() ; ++i) {
                auto & c = r.cycles.cycles[i];
                expect(std::set<VertexId>(c.begin(), c.end()).size() == c.size(), "simple cycles");
                for (std::size_t j = 0 ; j < c.size() ; ++j) {
                    Edge e = make_edge(c[j], c[(j + 1) % c.size()]);
                    expect(g.adjacent(e.u, e.v), "cycle edges in host");
                    all.insert(e);
                }
                if (! r.cycles.hamilton[i])
                    expect(c.size() % 2 == 1 && static_cast<double>(c.size()) >= (1.0 - 1.0 / (p.r - 1)) * n, "short or even cycle");
                else
                    expect(static_cast<int>(c.size()) == n, "hamilton length");
            }
            for (auto & e : r.leftover.edges())
                all.insert(e);
            expect(all == std::multiset<Edge>(g.edges().begin(), g.edges().end()), "cycles plus leftover partition");
            int prev = r.initial_gap;
            for (std::size_t i = 1 ; i < r.gap_history.size() ; ++i) {
                int gap = r.gap_history[i];
                expect(gap == prev - 2, "gap decrease");
                prev = gap;
            }
        }

        std::string detail = "decompositions, extractions, weight partitions, flocks 1000 each; eulerian "
            + std::to_string(euler_ok) + "/1000 constructed; long cycles " + std::to_string(cycles_ok) + "/"
            + std::to_string(cycle_runs) + " completed (" + std::to_string(with_loop) + " through the irregular loop)";
        for (auto & b : broken)
            detail += "; broken: " + b;
        report(6, "structural invariant suites", broken.empty(), detail);
    }

    auto verifier_soundness() -> void
    {
        Rng rng(8000);
        int trials = 0, rejected = 0, witnessed = 0;
        std::vector<Instance *> pool;
        for (auto & in : increasing_instances)
            if (in.host.order() >= 5)
                pool.push_back(&in);
        while (trials < 10000 && ! pool.empty()) {
            auto & in = *pool[rng.below(pool.size())];
            auto c = in.cert;
            auto & a = c.assignments[rng.below(c.assignments.size())];
            auto & b = c.assignments[rng.below(c.assignments.size())];
            switch (rng.below(3)) {
                case 0: {
                    auto & x = a.map[rng.below(a.map.size())];
                    VertexId y = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(in.host.order())));
                    if (x == y)
                        continue;
                    x = y;
                    break;
                }
                case 1:
                    if (a.tree_id == b.tree_id)
                        continue;
                    std::swap(a.tree_id, b.tree_id);
                    break;
                default: {
                    auto ea = in.trees[a.tree_id].edges(), eb = in.trees[b.tree_id].edges();
                    if (&a == &b || ea.empty() || eb.empty())
                        continue;
                    auto x = ea[rng.below(ea.size())], y = eb[rng.below(eb.size())];
                    a.map[x.u] = b.map[y.u];
                    a.map[x.v] = b.map[y.v];
                }
            }
            // skip the rare corruption that still decomposes the host
            bool still_valid = true;
            {
                std::multiset<Edge> used;
                std::set<int> ids;
                for (auto & t : c.assignments) {
                    auto & tree = in.trees[t.tree_id];
                    still_valid = still_valid && ids.insert(t.tree_id).second && static_cast<int>(t.map.size()) == tree.order()
                        && std::set<VertexId>(t.map.begin(), t.map.end()).size() == t.map.size();
                    if (! still_valid)
                        break;
                    for (auto & e : tree.edges()) {
                        still_valid = still_valid && in.host.adjacent(t.map[e.u], t.map[e.v]);
                        used.insert(make_edge(t.map[e.u], t.map[e.v]));
                    }
                }
                still_valid = still_valid && used == std::multiset<Edge>(in.host.edges().begin(), in.host.edges().end());
            }
            if (still_valid)
                continue;
            ++trials;
            auto v = verify_certificate(in.host, in.trees, c);
            if (! v.ok) {
                ++rejected;
                witnessed += v.tree_id >= 0 || v.edge.has_value() || v.vertex >= 0;
            }
        }

        auto start = clock_type::now();
        int passed = 0;
        for (auto & in : increasing_instances)
            passed += verify_certificate(in.host, in.trees, in.cert).ok;
        double t = seconds_since(start);
        report(7, "certificate verifier soundness", trials == 10000 && rejected == trials && witnessed == trials
                && passed == 350 && t <= 1.0,
                std::to_string(rejected) + "/" + std::to_string(trials) + " corruptions rejected (" + std::to_string(witnessed)
                + " with a witness); " + std::to_string(passed) + " certificates re-verified in " + fmt(t * 1000, 2) + " ms");
    }

    auto heuristic_pipeline() -> void
    {
        std::string detail;
        bool ok = true;
        for (int n : { 20, 30, 40 }) {
            int success = 0, bad = 0;
            double slowest = 0;
            for (std::uint64_t s = 0 ; s < 20 ; ++s) {
                auto g = SimpleGraph::complete(n);
                auto trees = gen_gl_sequence(n, 3, mix_seed(9000 + static_cast<std::uint64_t>(n), s));
                HeuristicConfig config;
                config.seed = mix_seed(9100 + static_cast<std::uint64_t>(n), s);
                config.time_limit_seconds = 110;
                auto start = clock_type::now();
                auto r = pack_heuristic(g, trees, config);
                double t = seconds_since(start);
                slowest = std::max(slowest, t);
                if (! r.ok)
                    continue;
                if (verify_certificate(g, trees, r.certificate).ok && t <= 120)
                    ++success;
                else
                    ++bad;
            }
            ok = ok && success >= 14 && bad == 0;
            detail += "n=" + std::to_string(n) + ": " + std::to_string(success) + "/20 (slowest " + fmt(slowest, 1) + " s); ";
        }

        int absorbed = 0;
        for (std::uint64_t s = 0 ; s < 100 ; ++s) {
            Rng rng(mix_seed(9500, s));
            int size = 4 + static_cast<int>(rng.below(7));
            int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(3, (size - 1) / 2))));
            int n = 3 * size + 16;
            VertexSet a;
            for (int i = 0 ; i < size ; ++i)
                a.push_back(n - size + i);
            std::vector<Edge> pairs;
            for (std::size_t i = 0 ; i < a.size() ; ++i)
                for (std::size_t j = i + 1 ; j < a.size() ; ++j)
                    pairs.push_back({ a[i], a[j] });
            SimpleGraph leftover;
            for (int tries = 0 ; tries < 1000 && leftover.order() == 0 ; ++tries) {
                rng.shuffle(pairs);
                SimpleGraph cand(n, std::vector<Edge>(pairs.begin(), pairs.begin() + t * size));
                if (orient_exact_oracle(induced(cand, a), t).feasible)
                    leftover = cand;
            }
            if (leftover.order() == 0)
                continue;
            std::vector<RootedForest> trees;
            std::vector<int> ids;
            for (int i = 0 ; i < t * size ; ++i) {
                trees.push_back(gen_random_tree(3 + static_cast<int>(rng.below(10)), 3, rng.next_u64()));
                ids.push_back(i);
            }
            HostView host(SimpleGraph::complete(n));
            for (auto & e : leftover.edges())
                host.remove_edge(e.u, e.v);
            try {
                auto prep = prepare_absorber(host, trees, ids, a, t, rng.next_u64());
                if (! prep.ok || ! prep.state.audit())
                    continue;
                auto out = absorb_leftover(leftover, prep.state);
                std::multiset<Edge> covered;
                bool injective = true;
                for (std::size_t i = 0 ; i < out.assignments.size() ; ++i) {
                    auto & m = out.assignments[i].map;
                    auto & at = prep.state.trees[i];
                    injective = injective && std::set<VertexId>(m.begin(), m.end()).size() == m.size();
                    covered.insert(make_edge(m[at.leaf], at.anchor_image));
                }
                if (injective && covered == std::multiset<Edge>(leftover.edges().begin(), leftover.edges().end()))
                    ++absorbed;
            }
            catch (const std::exception &) {
            }
        }
        ok = ok && absorbed == 100;
        detail += "absorber suite " + std::to_string(absorbed) + "/100";
        report(8, "heuristic decompositions of K_n and leftover absorption", ok, detail);
    }
}

int main()
{
    increasing_sequences();
    copies_of_one_tree();
    orientations();
    walk_mixing();
    walk_loads();
    property_suites();
    verifier_soundness();
    heuristic_pipeline();
    return failures == 0 ? 0 : 1;
}
