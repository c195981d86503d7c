/* vim: set sw=4 sts=4 et : */

#include "oracles.hh"

#include <treepack/embed.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>
#include <treepack/walk.hh>

#include <doctest.h>

#include <cmath>
#include <set>

using namespace treepack;

TEST_CASE("walk starts as a point mass")
{
    auto table = simulate_walk(5, { 0 }, 1000, 1);
    REQUIRE(table.size() == 1);
    CHECK(table[0][0] == 1.0);
    for (int i = 1 ; i < 5 ; ++i)
        CHECK(table[0][i] == 0.0);
    CHECK_THROWS_AS(simulate_walk(2, { 1 }, 10, 0), PreconditionError);
}

TEST_CASE("walk on an odd cycle matches the transition matrix")
{
    const std::int64_t trials = 200000;
    for (int ell : { 3, 5, 7 }) {
        std::vector<int> steps{ 1, 2, 5, 10, 50 };
        auto table = simulate_walk(ell, steps, trials, 99 + static_cast<std::uint64_t>(ell));
        for (std::size_t r = 0 ; r < steps.size() ; ++r) {
            auto exact = oracle::walk_distribution(ell, steps[r]);
            for (int i = 0 ; i < ell ; ++i) {
                double se = std::sqrt(std::max(exact[i] * (1 - exact[i]), 1e-12) / trials);
                CHECK(std::abs(table[r][i] - exact[i]) <= 4 * se + 1e-12);
            }
        }
        for (int i = 0 ; i < ell ; ++i)
            CHECK(std::abs(table.back()[i] - 1.0 / ell) <= 0.01);
    }
}

TEST_CASE("walk on an even cycle keeps its parity")
{
    auto table = simulate_walk(4, { 49, 50 }, 20000, 3);
    CHECK(table[0][0] == 0.0);
    CHECK(table[0][2] == 0.0);
    CHECK(table[1][1] == 0.0);
    CHECK(table[1][3] == 0.0);
    auto exact = oracle::walk_distribution(4, 50);
    CHECK(exact[0] == doctest::Approx(0.5));
    CHECK(exact[1] == 0.0);
}

TEST_CASE("cycle blow-ups")
{
    CycleBlowup b(5, 3);
    CHECK(b.order() == 15);
    CHECK(b.cluster(2) == VertexSet{ 6, 7, 8 });
    CHECK(b.adjacent(0, 3));
    CHECK(b.adjacent(0, 14));
    CHECK(! b.adjacent(0, 1));
    CHECK(! b.adjacent(0, 7));
    CHECK(b.is_complete());
    CHECK(b.to_graph().size() == 5 * 9);

    auto g = SimpleGraph::complete(15);
    CycleBlowup c(5, 3, g);
    CHECK(! c.is_complete());
}

TEST_CASE("walk assignment of small trees")
{
    WalkEmbedParams p;
    p.ell = 5;
    p.m = 10;
    auto one = walk_assign_tree(RootedForest::from_edges(1, { }), p);
    CHECK(one.max_load() == 1);
    CHECK(one.max_pair_load() == 0);

    for (std::uint64_t seed = 0 ; seed < 20 ; ++seed) {
        p.seed = seed;
        auto star = oracle::star_tree(3);
        auto a = walk_assign_tree(star, p);
        CHECK(assignment_is_valid(star, a));
        int c = a.cluster_of[0];
        for (int leaf = 1 ; leaf <= 3 ; ++leaf) {
            int d = (a.cluster_of[leaf] - c + 5) % 5;
            CHECK((d == 1 || d == 4));
        }
        for (int i = 0 ; i < 5 ; ++i)
            if (i != c && i != (c + 4) % 5)
                CHECK(a.pair_loads[i] == 0);
    }
}

TEST_CASE("walk assignment invariants on random trees")
{
    for (std::uint64_t seed = 0 ; seed < 100 ; ++seed) {
        int n = 50 + static_cast<int>(seed * 37 % 900);
        auto t = gen_random_tree(n, 3, seed);
        WalkEmbedParams p;
        p.ell = 3 + 2 * static_cast<int>(seed % 3);
        p.m = n;
        p.seed = seed;
        auto a = walk_assign_tree(t, p);
        CHECK(assignment_is_valid(t, a));
        std::int64_t load = 0, pair = 0;
        for (auto l : a.loads)
            load += l;
        for (auto l : a.pair_loads)
            pair += l;
        CHECK(load == n);
        CHECK(pair == n - 1);
        for (auto & e : t.edges()) {
            int d = (a.cluster_of[e.u] - a.cluster_of[e.v] + p.ell) % p.ell;
            CHECK((d == 1 || d == p.ell - 1));
        }
    }
}

TEST_CASE("walk embedding into a complete blow-up")
{
    WalkEmbedParams p;
    p.ell = 3;
    p.m = 5;
    CycleBlowup b(3, 5);
    auto host = b.to_graph();
    for (std::uint64_t seed = 0 ; seed < 20 ; ++seed) {
        p.seed = seed;
        auto t = oracle::path_tree(3);
        auto r = walk_embed_tree(t, b, p);
        REQUIRE(r.ok);
        REQUIRE(r.embedding);
        CHECK(r.max_load <= 2);
        CHECK(embedding_is_valid(t, host, *r.embedding));
        CHECK(r.embedding->is_total());
    }
    auto single = walk_embed_tree(RootedForest::from_edges(1, { }), b, p);
    CHECK(single.ok);

    // a path that exactly fills the blow-up
    p.ell = 5;
    p.m = 40;
    CycleBlowup full(5, 40);
    auto big = oracle::path_tree(200);
    int ok = 0;
    for (std::uint64_t seed = 0 ; seed < 10 ; ++seed) {
        p.seed = seed;
        p.retry_limit = 1;
        auto r = walk_embed_tree(big, full, p);
        if (r.ok) {
            ++ok;
            CHECK(embedding_is_valid(big, full.to_graph(), *r.embedding));
        }
        else
            CHECK(std::max(r.max_load, r.max_pair_load) > 40);
    }
    MESSAGE("exact-fill path successes: " << ok << "/10");

    p.m = 50;
    CHECK_THROWS_AS(walk_embed_tree(big, full, p), PreconditionError);
    auto k = SimpleGraph::complete(15);
    p.ell = 5;
    p.m = 3;
    CHECK_THROWS_AS(walk_embed_tree(oracle::path_tree(3), CycleBlowup(5, 3, k), p), PreconditionError);
}

TEST_CASE("greedy forest embedding")
{
    auto k3 = SimpleGraph::complete(3);
    auto dot = embed_forest_greedy(RootedForest::from_edges(1, { }), k3, { }, PartialEmbedding(1));
    CHECK(dot.map == std::vector<VertexId>{ 0 });

    PartialEmbedding pin(3);
    pin.map[0] = 1;
    auto p = embed_forest_greedy(oracle::path_tree(3), SimpleGraph::complete(5), { 0 }, pin);
    CHECK(p.map == std::vector<VertexId>{ 1, 0, 2 });

    CHECK_THROWS_AS(embed_forest_greedy(oracle::path_tree(4), SimpleGraph::complete(5), { }, PartialEmbedding(4)),
            PreconditionError);

    // pins at distance 2 are not 3-independent
    PartialEmbedding close(3);
    close.map[0] = 0;
    close.map[2] = 4;
    CHECK_THROWS_AS(embed_forest_greedy(oracle::path_tree(3), SimpleGraph::complete(8), { 0, 2 }, close), PreconditionError);
}

TEST_CASE("greedy embeddings are valid under random pins")
{
    Rng rng(13);
    for (int trial = 0 ; trial < 200 ; ++trial) {
        int size = 2 + static_cast<int>(rng.below(12));
        auto f = gen_random_tree(size, 3, rng.next_u64());
        auto g = SimpleGraph::complete(size + 2 + static_cast<int>(rng.below(6)));
        auto d = oracle::all_pairs_distances(f.to_graph());
        VertexSet pins;
        for (VertexId x = 0 ; x < size ; ++x)
            if (rng.below(4) == 0 && std::all_of(pins.begin(), pins.end(), [&] (VertexId y) { return d[x][y] >= 3; }))
                pins.push_back(x);
        PartialEmbedding phi(size);
        std::vector<VertexId> hosts(g.order());
        std::iota(hosts.begin(), hosts.end(), 0);
        rng.shuffle(hosts);
        for (std::size_t i = 0 ; i < pins.size() ; ++i)
            phi.map[pins[i]] = hosts[i];
        auto out = embed_forest_greedy(f, g, pins, phi);
        CHECK(out.is_total());
        CHECK(embedding_is_valid(f, g, out));
        for (auto x : pins)
            CHECK(out.map[x] == phi.map[x]);
    }
}

TEST_CASE("best-effort embedding over a residual host")
{
    auto g = SimpleGraph::complete(6);
    HostView h(g);
    h.remove_edge(0, 1);
    CHECK(h.size() == 14);
    CHECK(! h.adjacent(1, 0));
    CHECK_THROWS(h.remove_edge(0, 1));
    GreedyEmbedOptions opts;
    opts.check_codegree = false;
    opts.backtrack_budget = 1000;
    auto t = oracle::path_tree(6);
    auto r = try_embed_forest(t, h, PartialEmbedding(6), opts);
    REQUIRE(r);
    CHECK(embedding_is_valid(t, h.to_graph(), *r));

    std::vector<char> allowed(6, 0);
    allowed[2] = allowed[3] = 1;
    opts.allowed = &allowed;
    CHECK(! try_embed_forest(oracle::path_tree(3), h, PartialEmbedding(3), opts));
}

TEST_CASE("sparse edge selection")
{
    auto g = SimpleGraph::complete(16);
    VertexSet a;
    for (VertexId v = 4 ; v < 16 ; ++v)
        a.push_back(v);

    SparseEdgeRequest one;
    one.a = a;
    one.sources = { 0 };
    auto e1 = sparse_edge_embedding(g, one);
    CHECK(e1 == std::vector<Edge>{ { 0, 4 } });

    SparseEdgeRequest twice;
    twice.a = a;
    twice.sources = { 0, 0 };
    auto e2 = sparse_edge_embedding(g, twice);
    REQUIRE(e2.size() == 2);
    CHECK(e2[0].v != e2[1].v);

    SparseEdgeRequest conflict;
    conflict.a = a;
    conflict.sources = { 0, 1, 2 };
    conflict.conflicts = SimpleGraph(3, { { 1, 2 } });
    auto e3 = sparse_edge_embedding(g, conflict);
    REQUIRE(e3.size() == 3);
    CHECK(e3[2].v != e3[1].u);
    CHECK(e3[2].v != e3[1].v);
    CHECK(sparse_edges_valid(HostView(g), conflict, e3));

    SparseEdgeRequest starved;
    starved.a = { 4, 5, 6 };
    starved.sources = { 0 };
    CHECK_THROWS_AS(sparse_edge_embedding(g, starved), PreconditionError);
}

TEST_CASE("sparse edge selection respects every constraint")
{
    Rng rng(19);
    for (int trial = 0 ; trial < 200 ; ++trial) {
        int n = 40;
        auto g = SimpleGraph::complete(n);
        SparseEdgeRequest r;
        for (VertexId v = 10 ; v < n ; ++v)
            r.a.push_back(v);
        int m = 1 + static_cast<int>(rng.below(6));
        r.s = 1 + static_cast<int>(rng.below(2));
        for (int i = 0 ; i < m ; ++i) {
            r.sources.push_back(static_cast<VertexId>(rng.below(10)));
            VertexSet w;
            for (int j = 0 ; j < 3 ; ++j)
                w.push_back(10 + static_cast<VertexId>(rng.below(30)));
            r.forbidden.push_back(normalise(w));
        }
        std::vector<Edge> h;
        for (int i = 0 ; i < m ; ++i)
            for (int j = i + 1 ; j < m ; ++j)
                if (rng.below(4) == 0)
                    h.push_back({ i, j });
        r.conflicts = SimpleGraph(m, h);
        auto e = sparse_edge_embedding(g, r);
        CHECK(sparse_edges_valid(HostView(g), r, e));
        CHECK(oracle::edge_set(e).size() == e.size());
    }
}
