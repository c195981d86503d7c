/* vim: set sw=4 sts=4 et : */

#include "oracles.hh"

#include <treepack/covering.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <doctest.h>

#include <set>

using namespace treepack;

namespace
{
    auto range(int lo, int hi) -> VertexSet
    {
        VertexSet s;
        for (int v = lo ; v < hi ; ++v)
            s.push_back(v);
        return s;
    }

    /// Recomputed image edges of a total map, checked against the host.
    auto image_of(const RootedForest & t, const HostView & host, const PartialEmbedding & phi) -> std::set<Edge>
    {
        std::set<Edge> out;
        std::set<VertexId> seen;
        for (VertexId x = 0 ; x < t.order() ; ++x) {
            REQUIRE(phi.map[x] >= 0);
            CHECK(seen.insert(phi.map[x]).second);
        }
        for (auto & e : t.edges()) {
            Edge h = make_edge(phi.map[e.u], phi.map[e.v]);
            CHECK(host.adjacent(h.u, h.v));
            out.insert(h);
        }
        return out;
    }

    auto in(const VertexSet & s, VertexId v) -> bool
    {
        return std::binary_search(s.begin(), s.end(), v);
    }

    auto two_paths(int a, int b) -> RootedForest
    {
        std::vector<Edge> e;
        for (int i = 0 ; i + 1 < a ; ++i)
            e.push_back({ i, i + 1 });
        for (int i = 0 ; i + 1 < b ; ++i)
            e.push_back({ a + i, a + i + 1 });
        return RootedForest::from_edges(a + b, e, { 0, a });
    }
}

TEST_CASE("matching cover")
{
    HostView host(SimpleGraph::complete(20));
    auto safe = range(0, 14);

    ReservedTree plain{ oracle::path_tree(6), -1, { } };
    auto r0 = cover_matching_with_tree(plain, host, safe, { });
    REQUIRE(r0.ok);
    for (auto v : r0.embedding.map)
        CHECK(in(safe, v));

    ReservedTree p9{ oracle::path_tree(9), 0, { } };
    auto r1 = cover_matching_with_tree(p9, host, safe, { { 14, 15 } });
    REQUIRE(r1.ok);
    CHECK(r1.embedding.map[0] == 0);
    auto img = image_of(p9.tree, host, r1.embedding);
    CHECK(img.count({ 14, 15 }));
    for (auto & e : img)
        if (! in(safe, e.u) && ! in(safe, e.v))
            CHECK(e == Edge{ 14, 15 });

    auto r2 = cover_matching_with_tree(p9, host, safe, { { 14, 15 }, { 16, 17 }, { 18, 19 } });
    CHECK(! r2.ok);
    CHECK(! r2.failure.empty());

    CHECK_THROWS_AS(cover_matching_with_tree(p9, host, safe, { { 2, 15 } }), PreconditionError);
}

TEST_CASE("matching covers on random trees are verified")
{
    HostView host(SimpleGraph::complete(40));
    auto safe = range(0, 30);
    int ok = 0;
    for (std::uint64_t seed = 0 ; seed < 100 ; ++seed) {
        ReservedTree t{ gen_random_tree(25, 3, seed), -1, { } };
        std::vector<Edge> m{ { 30, 31 }, { 32, 33 } };
        CoverOptions opts;
        opts.seed = seed;
        auto r = cover_matching_with_tree(t, host, safe, m, opts);
        if (! r.ok)
            continue;
        ++ok;
        auto img = image_of(t.tree, host, r.embedding);
        for (auto & e : m)
            CHECK(img.count(e));
        for (VertexId x = 0 ; x < t.tree.order() ; ++x)
            CHECK((in(safe, r.embedding.map[x]) || r.embedding.map[x] >= 30));
        CHECK(image_edges(t.tree, r.embedding).size() == img.size());
    }
    MESSAGE("random matching covers: " << ok << "/100");
    CHECK(ok > 0);
}

TEST_CASE("seagull cover with one tree")
{
    HostView host(SimpleGraph::complete(20));
    auto safe = range(0, 14);
    ReservedTree none{ oracle::path_tree(5), -1, { } };
    CHECK(cover_seagulls_with_tree(none, host, safe, { }).ok);

    ReservedTree p11{ oracle::path_tree(11), -1, { } };
    Flock flock{ { 3, 15, 7 } };
    auto r = cover_seagulls_with_tree(p11, host, safe, flock);
    REQUIRE(r.ok);
    auto img = image_of(p11.tree, host, r.embedding);
    CHECK(img.count({ 3, 15 }));
    CHECK(img.count({ 7, 15 }));
    VertexId centre = -1;
    for (VertexId x = 0 ; x < 11 ; ++x)
        if (r.embedding.map[x] == 15)
            centre = x;
    REQUIRE(centre >= 0);
    CHECK(p11.tree.degree(centre) == 2);
}

TEST_CASE("seagull cover with a pair of trees")
{
    HostView host(SimpleGraph::complete(24));
    auto safe = range(0, 18);
    auto broom = [] {
        // the path 0..8 with an extra leaf on 3
        return RootedForest::from_edges(10, { { 0, 1 }, { 1, 2 }, { 2, 3 }, { 3, 4 }, { 4, 5 }, { 5, 6 }, { 6, 7 }, { 7, 8 }, { 3, 9 } }, { 0 });
    };
    ReservedTree t1{ broom(), -1, { } }, t2{ broom(), -1, { } };
    Flock flock{ { 2, 19, 9 }, { 4, 20, 11 } };
    auto r = cover_seagulls_with_pair(t1, t2, host, safe, flock);
    REQUIRE(r.ok);
    auto a = image_of(t1.tree, host, r.first), b = image_of(t2.tree, host, r.second);
    for (auto & e : a)
        CHECK(! b.count(e));
    for (auto & s : flock) {
        CHECK(a.count(make_edge(s.wing1, s.centre)));
        CHECK(b.count(make_edge(s.wing2, s.centre)));
        VertexId x = static_cast<VertexId>(std::find(r.first.map.begin(), r.first.map.end(), s.centre) - r.first.map.begin());
        CHECK(t1.tree.degree(x) == 1);
    }
}

TEST_CASE("seagull covers keep centre parity")
{
    HostView host(SimpleGraph::complete(30));
    auto safe = range(0, 24);
    for (std::uint64_t seed = 0 ; seed < 40 ; ++seed) {
        Rng rng(seed);
        Flock flock;
        VertexSet wings = safe;
        rng.shuffle(wings);
        int count = 1 + static_cast<int>(rng.below(2));
        for (int i = 0 ; i < count ; ++i)
            flock.push_back({ wings[2 * i], 24 + i, wings[2 * i + 1] });
        ReservedTree t{ oracle::path_tree(16 + static_cast<int>(rng.below(6))), -1, { } };
        CoverOptions opts;
        opts.seed = seed;
        auto r = cover_seagulls_with_tree(t, host, safe, flock, opts);
        if (! r.ok)
            continue;
        auto img = image_of(t.tree, host, r.embedding);
        for (VertexId b = 24 ; b < 30 ; ++b) {
            int d = 0;
            for (auto & e : img)
                d += (e.u == b || e.v == b);
            CHECK(d % 2 == 0);
        }
    }
}

TEST_CASE("parity fix by a far leaf")
{
    HostView host(SimpleGraph::complete(16));
    auto safe = range(0, 12);
    ReservedTree p6{ oracle::path_tree(6), -1, { } };
    auto r = fix_parity_with_tree(p6, host, safe, { 3, 13 });
    REQUIRE(r.ok);
    CHECK(r.embedding.map[5] == 13);
    CHECK(r.embedding.map[4] == 3);
    auto img = image_of(p6.tree, host, r.embedding);
    int crossing = 0;
    for (auto & e : img)
        if (in(safe, e.u) != in(safe, e.v))
            ++crossing;
    CHECK(crossing == 1);
    for (auto & e : img)
        CHECK((in(safe, e.u) || in(safe, e.v)));

    ReservedTree star{ oracle::star_tree(4), -1, { } };
    auto bad = fix_parity_with_tree(star, host, safe, { 3, 13 });
    CHECK(! bad.ok);
}

TEST_CASE("exceptional vertex cover")
{
    auto g = SimpleGraph::complete(12);
    HostView host(13);
    for (auto & e : g.edges())
        host.add_edge(e.u, e.v);
    auto safe = range(0, 12);

    std::vector<ReservedForest> forests(3, ReservedForest{ two_paths(5, 5), { }, { } });
    auto idle = cover_exceptional_vertex(forests, host, safe, 12, 0);
    REQUIRE(idle.ok);
    CHECK(idle.residual_degree == 0);
    for (auto c : idle.consumed)
        CHECK(c == 0);

    for (VertexId v = 0 ; v < 6 ; ++v)
        host.add_edge(12, v);
    auto r = cover_exceptional_vertex(forests, host, safe, 12, 0);
    REQUIRE(r.ok);
    CHECK(r.residual_degree == 0);
    HostView cur = host;
    for (std::size_t i = 0 ; i < forests.size() ; ++i) {
        CHECK(r.consumed[i] >= 2);
        auto img = image_of(forests[i].forest, cur, r.embeddings[i]);
        int at = 0;
        for (auto & e : img) {
            cur.remove_edge(e.u, e.v);
            at += (e.u == 12 || e.v == 12);
        }
        CHECK(at == r.consumed[i]);
    }
    CHECK(cur.degree(12) == 0);

    forests[1].forbidden = { 12 };
    auto s = cover_exceptional_vertex(forests, host, safe, 12, 0);
    CHECK(s.skipped[1]);
    CHECK(s.embeddings[1].map.empty());
}
