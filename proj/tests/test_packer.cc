/* vim: set sw=4 sts=4 et : */

#include "oracles.hh"

#include <treepack/errors.hh>
#include <treepack/generate.hh>
#include <treepack/packer.hh>
#include <treepack/rng.hh>

#include <doctest.h>

#include <cmath>
#include <set>

using namespace treepack;

namespace
{
    auto k3_instance() -> std::pair<SimpleGraph, std::vector<RootedForest>>
    {
        return { SimpleGraph::complete(3), { RootedForest::from_edges(1, { }), oracle::path_tree(2), oracle::path_tree(3) } };
    }

    auto k3_certificate(const SimpleGraph & g) -> PackingCertificate
    {
        PackingCertificate c;
        c.graph_hash = canonical_hash(g);
        c.mode = PackMode::decompose;
        c.assignments = { { 0, { 1 } }, { 1, { 0, 2 } }, { 2, { 0, 1, 2 } } };
        return c;
    }

    /// Every tree assigned once, maps injective into the host, and each
    /// host edge in exactly one image. Counted by hand.
    auto covers_exactly(const SimpleGraph & g, const std::vector<RootedForest> & trees, const PackingCertificate & c) -> bool
    {
        std::multiset<Edge> used;
        std::set<int> ids;
        for (auto & a : c.assignments) {
            if (a.tree_id < 0 || a.tree_id >= static_cast<int>(trees.size()) || ! ids.insert(a.tree_id).second)
                return false;
            auto & t = trees[a.tree_id];
            if (static_cast<int>(a.map.size()) != t.order())
                return false;
            for (auto v : a.map)
                if (v < 0 || v >= g.order())
                    return false;
            if (std::set<VertexId>(a.map.begin(), a.map.end()).size() != a.map.size())
                return false;
            for (auto & e : t.edges()) {
                if (! g.adjacent(a.map[e.u], a.map[e.v]))
                    return false;
                used.insert(make_edge(a.map[e.u], a.map[e.v]));
            }
        }
        return ids.size() == trees.size() && used == std::multiset<Edge>(g.edges().begin(), g.edges().end());
    }

    auto cycle_on(const VertexSet & a) -> SimpleGraph
    {
        int n = a.back() + 1;
        std::vector<Edge> e;
        for (std::size_t i = 0 ; i < a.size() ; ++i)
            e.push_back(make_edge(a[i], a[(i + 1) % a.size()]));
        return SimpleGraph(n, e);
    }
}

TEST_CASE("verifier on the triangle")
{
    auto [g, trees] = k3_instance();
    auto c = k3_certificate(g);
    CHECK(verify_certificate(g, trees, c).ok);

    auto reuse = c;
    reuse.assignments[1].map = { 0, 1 };
    auto r = verify_certificate(g, trees, reuse);
    CHECK(! r.ok);
    REQUIRE(r.edge);
    CHECK(*r.edge == Edge{ 0, 1 });

    SimpleGraph p3(3, { { 0, 1 }, { 1, 2 } });
    PackingCertificate nonedge;
    nonedge.graph_hash = canonical_hash(p3);
    nonedge.mode = PackMode::pack;
    nonedge.assignments = { { 0, { 0, 2 } } };
    auto r2 = verify_certificate(p3, { oracle::path_tree(2) }, nonedge);
    CHECK(! r2.ok);
    CHECK(r2.tree_id == 0);
    REQUIRE(r2.edge);
    CHECK(*r2.edge == Edge{ 0, 1 });

    auto wrong = c;
    wrong.graph_hash = canonical_hash(SimpleGraph::complete(4));
    CHECK(! verify_certificate(g, trees, wrong).ok);

    auto missing = c;
    missing.assignments.pop_back();
    CHECK(! verify_certificate(g, trees, missing).ok);
    missing.mode = PackMode::pack;
    CHECK(! verify_certificate(g, trees, missing).ok);

    auto partial = c;
    partial.mode = PackMode::pack;
    partial.assignments[2].map = { 0, 1, 0 };
    CHECK(! verify_certificate(g, trees, partial).ok);
}

TEST_CASE("certificate json round trip")
{
    auto [g, trees] = k3_instance();
    auto c = k3_certificate(g);
    auto back = certificate_from_json(certificate_to_json(c));
    CHECK(back.graph_hash == c.graph_hash);
    CHECK(back.mode == c.mode);
    REQUIRE(back.assignments.size() == 3);
    CHECK(back.assignments[2].map == c.assignments[2].map);
    CHECK_THROWS_AS(certificate_from_json("{"), ParseError);
    CHECK_THROWS_AS(certificate_from_json("{\"graph_hash\":\"00\",\"mode\":\"cover\",\"assignments\":[]}"), ParseError);
    CHECK_THROWS_AS(certificate_from_json("{\"mode\":\"pack\",\"assignments\":[]}"), ParseError);
}

TEST_CASE("exact decomposition examples")
{
    auto [g, trees] = k3_instance();
    auto r = pack_exact(g, trees, PackMode::decompose);
    REQUIRE(r.status == ExactStatus::found);
    CHECK(verify_certificate(g, trees, r.certificate).ok);

    auto seq = gen_gl_sequence(6, 3, 4);
    auto k6 = SimpleGraph::complete(6);
    auto r6 = pack_exact(k6, seq, PackMode::decompose);
    REQUIRE(r6.status == ExactStatus::found);
    CHECK(verify_certificate(k6, seq, r6.certificate).ok);
    CHECK(covers_exactly(k6, seq, r6.certificate));

    std::vector<RootedForest> three(3, oracle::path_tree(2));
    auto bad = pack_exact(SimpleGraph::complete(4), three, PackMode::decompose);
    CHECK(bad.status == ExactStatus::infeasible);
    CHECK(bad.reason == "edge-count");
    auto packed = pack_exact(SimpleGraph::complete(4), three, PackMode::pack);
    REQUIRE(packed.status == ExactStatus::found);
    CHECK(verify_certificate(SimpleGraph::complete(4), three, packed.certificate).ok);
}

TEST_CASE("exact solver agrees with brute force on tiny hosts")
{
    Rng rng(101);
    int found = 0, infeasible = 0;
    for (int trial = 0 ; trial < 120 ; ++trial) {
        int n = 3 + static_cast<int>(rng.below(4));
        auto g = gen_gnp(n, 0.5 + 0.5 * rng.real(), rng.next_u64());
        if (g.size() == 0)
            continue;
        // random trees whose edge counts sum to e(G)
        std::vector<RootedForest> trees;
        int left = g.size();
        while (left > 0 && trees.size() < 4) {
            int e = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(left, n - 1))));
            if (trees.size() == 3)
                e = left;
            if (e > n - 1)
                break;
            trees.push_back(gen_random_tree(e + 1, 3, rng.next_u64()));
            left -= e;
        }
        if (left != 0)
            continue;
        bool expected = oracle::packs(g, trees, true);
        auto r = pack_exact(g, trees, PackMode::decompose);
        REQUIRE(r.status != ExactStatus::exhausted);
        CHECK((r.status == ExactStatus::found) == expected);
        if (r.status == ExactStatus::found) {
            ++found;
            CHECK(verify_certificate(g, trees, r.certificate).ok);
            CHECK(covers_exactly(g, trees, r.certificate));
        }
        else
            ++infeasible;

        auto p = pack_exact(g, std::vector<RootedForest>(trees.begin(), trees.end() - 1), PackMode::pack);
        CHECK((p.status == ExactStatus::found) == oracle::packs(g, std::vector<RootedForest>(trees.begin(), trees.end() - 1), false));
    }
    MESSAGE("brute-force comparisons: " << found << " found, " << infeasible << " infeasible");
    CHECK(found > 0);
    CHECK(infeasible > 0);
}

TEST_CASE("exact solver without symmetry breaking")
{
    ExactOptions plain;
    plain.symmetry = false;
    for (std::uint64_t seed = 0 ; seed < 20 ; ++seed) {
        auto seq = gen_gl_sequence(7, 4, seed);
        auto k7 = SimpleGraph::complete(7);
        auto a = pack_exact(k7, seq, PackMode::decompose), b = pack_exact(k7, seq, PackMode::decompose, plain);
        REQUIRE(a.status == ExactStatus::found);
        REQUIRE(b.status == ExactStatus::found);
        CHECK(verify_certificate(k7, seq, b.certificate).ok);
    }
}

TEST_CASE("exact solver budget")
{
    ExactOptions tiny;
    tiny.budget = 3;
    auto seq = gen_gl_sequence(8, 4, 1);
    auto r = pack_exact(SimpleGraph::complete(8), seq, PackMode::decompose, tiny);
    CHECK(r.status == ExactStatus::exhausted);
}

TEST_CASE("single-copy decompositions of odd complete graphs")
{
    for (int n = 2 ; n <= 4 ; ++n) {
        auto kn = SimpleGraph::complete(2 * n + 1);
        for (auto & t : enumerate_unlabelled_trees(n + 1)) {
            std::vector<RootedForest> copies(2 * n + 1, t);
            auto r = pack_exact(kn, copies, PackMode::decompose);
            REQUIRE(r.status == ExactStatus::found);
            CHECK(verify_certificate(kn, copies, r.certificate).ok);
        }
    }
}

TEST_CASE("verifier fuzzing")
{
    auto seq = gen_gl_sequence(7, 4, 3);
    auto g = SimpleGraph::complete(7);
    auto r = pack_exact(g, seq, PackMode::decompose);
    REQUIRE(r.status == ExactStatus::found);
    Rng rng(77);
    int trials = 0, rejected = 0;
    while (trials < 2000) {
        auto c = r.certificate;
        auto & a = c.assignments[rng.below(c.assignments.size())];
        auto & b = c.assignments[rng.below(c.assignments.size())];
        switch (rng.below(3)) {
            case 0:
                a.map[rng.below(a.map.size())] = static_cast<VertexId>(rng.below(7));
                break;
            case 1:
                std::swap(a.tree_id, b.tree_id);
                break;
            default: {
                auto ea = seq[a.tree_id].edges(), eb = seq[b.tree_id].edges();
                if (ea.empty() || eb.empty())
                    continue;
                auto x = ea[rng.below(ea.size())], y = eb[rng.below(eb.size())];
                a.map[x.u] = b.map[y.u];
                a.map[x.v] = b.map[y.v];
            }
        }
        // a corruption that still decomposes the host is not a corruption
        if (covers_exactly(g, seq, c))
            continue;
        ++trials;
        auto v = verify_certificate(g, seq, c);
        if (! v.ok) {
            ++rejected;
            CHECK((v.tree_id >= 0 || v.edge || v.vertex >= 0));
        }
    }
    CHECK(rejected == trials);
}

TEST_CASE("vortex levels")
{
    auto k1000 = SimpleGraph::complete(1000);
    auto v = build_vortex(k1000, 0.1, 0.1, 1.0, 1);
    CHECK(v.depth() == 2);
    CHECK(v.levels[1].size() == 100);
    CHECK(v.levels[2].size() == 10);
    CHECK(v.levels[0].size() == 1000);
    CHECK(v.reservoirs[0].size() == 100);
    CHECK(v.reservoirs[1].size() == 10);
    CHECK(v.worst_deviation == doctest::Approx(0.0));
    auto check = check_vortex(k1000, v, 1.0);
    CHECK(check.ok);

    for (std::size_t i = 1 ; i < v.levels.size() ; ++i)
        CHECK(std::includes(v.levels[i - 1].begin(), v.levels[i - 1].end(), v.levels[i].begin(), v.levels[i].end()));
    for (std::size_t i = 0 ; i < v.reservoirs.size() ; ++i)
        for (auto x : v.reservoirs[i]) {
            CHECK(std::binary_search(v.levels[i].begin(), v.levels[i].end(), x));
            CHECK(! std::binary_search(v.levels[i + 1].begin(), v.levels[i + 1].end(), x));
        }

    CHECK_THROWS_AS(build_vortex(SimpleGraph::complete(20), 0.04, 0.1, 1.0, 0), PreconditionError);
    CHECK_THROWS_AS(build_vortex(SimpleGraph::complete(20), 1.0, 0.1, 1.0, 0), PreconditionError);
    CHECK_THROWS_AS(build_vortex(SimpleGraph::complete(6), 0.5, 0.1, 1.0, 0), PreconditionError);

    for (int n : { 20, 30, 40, 64, 100 }) {
        auto k = SimpleGraph::complete(n);
        auto w = build_vortex(k, 0.25, 0.1, 1.0, static_cast<std::uint64_t>(n));
        CHECK(check_vortex(k, w, 1.0).ok);
        CHECK(std::pow(static_cast<double>(w.last().size()), 3) <= n + 1e-9);
        CHECK(std::pow(static_cast<double>(w.levels[w.depth() - 1].size()), 3) > n);
    }

    auto broken = v;
    broken.levels[2].pop_back();
    CHECK(! check_vortex(k1000, broken, 1.0).ok);
}

TEST_CASE("vortex on a random host")
{
    // the last level has two vertices, so codegree windows into it are coarse
    auto g = gen_gnp(300, 0.5, 8);
    CHECK_THROWS_AS(build_vortex(g, 0.3, 0.2, 2.0, 4, 20), InvariantViolation);
    auto v = build_vortex(g, 0.3, 0.2, 12.0, 4);
    CHECK(v.last().size() == 2);
    CHECK(check_vortex(g, v, 12.0).ok);
    CHECK(! check_vortex(g, v, 2.0).ok);
}

TEST_CASE("absorber leaves")
{
    CHECK(! select_absorber_leaf(RootedForest::from_edges(1, { })));
    auto p = select_absorber_leaf(oracle::path_tree(5));
    REQUIRE(p);
    CHECK(p->first == 4);
    CHECK(p->second == 3);
}

TEST_CASE("absorber preparation")
{
    auto g = SimpleGraph::complete(30);
    HostView host(g);
    VertexSet a{ 26, 27, 28, 29 };
    std::vector<RootedForest> trees;
    for (std::uint64_t i = 0 ; i < 10 ; ++i)
        trees.push_back(gen_random_tree(6 + static_cast<int>(i), 3, i));
    trees.push_back(RootedForest::from_edges(1, { }));
    std::vector<int> candidates{ 10, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9 };

    auto empty = prepare_absorber(host, trees, candidates, a, 0, 1);
    REQUIRE(empty.ok);
    CHECK(empty.state.trees.empty());
    CHECK(empty.residual.size() == host.size());

    auto r = prepare_absorber(host, trees, candidates, a, 2, 1);
    REQUIRE(r.ok);
    CHECK(r.state.trees.size() == 8);
    CHECK(r.state.audit());
    CHECK(r.state.multiplicities() == std::vector<int>{ 2, 2, 2, 2 });
    std::set<int> ids;
    HostView cur = host;
    for (auto & t : r.state.trees) {
        CHECK(t.tree_id != 10);
        CHECK(ids.insert(t.tree_id).second);
        CHECK(t.embedding.map[t.leaf] == -1);
        CHECK(t.embedding.map[t.anchor] == t.anchor_image);
        CHECK(std::binary_search(a.begin(), a.end(), t.anchor_image));
        CHECK(trees[t.tree_id].degree(t.leaf) == 1);
        for (VertexId x = 0 ; x < trees[t.tree_id].order() ; ++x)
            if (x != t.leaf && x != t.anchor)
                CHECK(! std::binary_search(a.begin(), a.end(), t.embedding.map[x]));
        for (auto & e : trees[t.tree_id].edges())
            if (e.u != t.leaf && e.v != t.leaf)
                cur.remove_edge(t.embedding.map[e.u], t.embedding.map[e.v]);
    }
    CHECK(cur.edges() == r.residual.edges());
}

TEST_CASE("absorbing a leftover cycle")
{
    auto g = SimpleGraph::complete(12);
    VertexSet a{ 8, 9, 10, 11 };
    std::vector<RootedForest> trees;
    for (std::uint64_t i = 0 ; i < 4 ; ++i)
        trees.push_back(oracle::path_tree(4));
    auto prep = prepare_absorber(HostView(g), trees, { 0, 1, 2, 3 }, a, 1, 3);
    REQUIRE(prep.ok);

    auto leftover = cycle_on(a);
    auto out = absorb_leftover(leftover, prep.state);
    REQUIRE(out.assignments.size() == 4);
    auto deg = out.orientation.out_degrees();
    for (auto v : a)
        CHECK(deg[v] == 1);

    std::multiset<Edge> covered;
    for (std::size_t i = 0 ; i < out.assignments.size() ; ++i) {
        auto & at = prep.state.trees[i];
        auto & m = out.assignments[i].map;
        CHECK(out.assignments[i].tree_id == at.tree_id);
        CHECK(std::set<VertexId>(m.begin(), m.end()).size() == m.size());
        covered.insert(make_edge(m[at.leaf], at.anchor_image));
        for (VertexId x = 0 ; x < trees[at.tree_id].order() ; ++x)
            if (x != at.leaf)
                CHECK(m[x] == at.embedding.map[x]);
    }
    CHECK(covered == std::multiset<Edge>(leftover.edges().begin(), leftover.edges().end()));

    AbsorberState none;
    none.a_last = a;
    CHECK(absorb_leftover(SimpleGraph(12), none).assignments.empty());

    SimpleGraph dead(12, { { 8, 9 }, { 9, 10 }, { 8, 10 } });
    CHECK_THROWS_AS(absorb_leftover(dead, prep.state), PreconditionError);
}

TEST_CASE("absorbing a leftover with an isolated vertex")
{
    auto g = SimpleGraph::complete(15);
    VertexSet a{ 10, 11, 12, 13, 14 };
    std::vector<RootedForest> trees(5, oracle::path_tree(3));
    auto prep = prepare_absorber(HostView(g), trees, { 0, 1, 2, 3, 4 }, a, 1, 5);
    REQUIRE(prep.ok);
    SimpleGraph leftover(15, { { 10, 11 }, { 10, 12 }, { 10, 13 }, { 11, 12 }, { 11, 13 } });
    CHECK_THROWS_AS(absorb_leftover(leftover, prep.state), PreconditionError);
}

TEST_CASE("absorber suite over seeded instances")
{
    int done = 0;
    for (std::uint64_t seed = 0 ; seed < 100 ; ++seed) {
        Rng rng(seed);
        int size = 4 + static_cast<int>(rng.below(5));
        int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(3, (size - 1) / 2))));
        int n = 3 * size + 14;
        auto g = SimpleGraph::complete(n);
        VertexSet a;
        for (int i = 0 ; i < size ; ++i)
            a.push_back(n - size + i);

        // leftover: a random t-out-regular orientation support on A
        std::vector<Edge> pool;
        for (std::size_t i = 0 ; i < a.size() ; ++i)
            for (std::size_t j = i + 1 ; j < a.size() ; ++j)
                pool.push_back({ a[i], a[j] });
        SimpleGraph leftover;
        for (int tries = 0 ; tries < 500 ; ++tries) {
            rng.shuffle(pool);
            std::vector<Edge> pick(pool.begin(), pool.begin() + t * size);
            SimpleGraph cand(n, pick);
            if (orient_exact_oracle(induced(cand, a), t).feasible) {
                leftover = cand;
                break;
            }
        }
        REQUIRE(leftover.size() == t * size);

        std::vector<RootedForest> trees;
        std::vector<int> candidates;
        for (int i = 0 ; i < t * size ; ++i) {
            trees.push_back(gen_random_tree(3 + static_cast<int>(rng.below(8)), 3, rng.next_u64()));
            candidates.push_back(i);
        }
        HostView host(g);
        for (auto & e : leftover.edges())
            host.remove_edge(e.u, e.v);
        auto prep = prepare_absorber(host, trees, candidates, a, t, seed);
        REQUIRE(prep.ok);
        REQUIRE(prep.state.audit());

        auto out = absorb_leftover(leftover, prep.state);
        std::multiset<Edge> covered;
        for (std::size_t i = 0 ; i < out.assignments.size() ; ++i) {
            auto & at = prep.state.trees[i];
            auto & m = out.assignments[i].map;
            CHECK(std::set<VertexId>(m.begin(), m.end()).size() == m.size());
            covered.insert(make_edge(m[at.leaf], at.anchor_image));
        }
        CHECK(covered == std::multiset<Edge>(leftover.edges().begin(), leftover.edges().end()));
        ++done;
    }
    CHECK(done == 100);
}

TEST_CASE("heuristic pipeline")
{
    HeuristicConfig config;
    auto empty = pack_heuristic(SimpleGraph(0), { }, config);
    CHECK(empty.ok);
    CHECK(empty.certificate.assignments.empty());

    auto k7 = SimpleGraph::complete(7);
    auto t = enumerate_unlabelled_trees(4)[0];
    std::vector<RootedForest> ringel(7, t);
    auto r = pack_heuristic(k7, ringel, config);
    REQUIRE(r.ok);
    CHECK(verify_certificate(k7, ringel, r.certificate).ok);
    CHECK(pack_exact(k7, ringel, PackMode::decompose).status == ExactStatus::found);

    for (std::uint64_t seed = 0 ; seed < 3 ; ++seed) {
        auto seq = gen_gl_sequence(20, 3, seed);
        auto k20 = SimpleGraph::complete(20);
        config.seed = seed;
        auto h = pack_heuristic(k20, seq, config);
        REQUIRE(h.ok);
        CHECK(verify_certificate(k20, seq, h.certificate).ok);
        CHECK(covers_exactly(k20, seq, h.certificate));
        CHECK(! h.phases.empty());
    }

    for (std::uint64_t seed = 0 ; seed < 3 ; ++seed) {
        auto seq = gen_gl_sequence(8, 3, seed);
        auto k8 = SimpleGraph::complete(8);
        config.seed = seed;
        auto h = pack_heuristic(k8, seq, config);
        CHECK(h.ok == (pack_exact(k8, seq, PackMode::decompose).status == ExactStatus::found));
    }

    std::vector<RootedForest> short_by_one(3, oracle::path_tree(2));
    CHECK_THROWS_AS(pack_heuristic(SimpleGraph::complete(4), short_by_one, config), PreconditionError);
}
