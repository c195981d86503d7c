/* vim: set sw=4 sts=4 et : */

#include <treepack/covering.hh>
#include <treepack/diagnostics.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <limits>
#include <set>

namespace treepack
{
    auto to_string(CoverKind kind) -> std::string
    {
        switch (kind) {
            case CoverKind::exceptional_vertex: return "exceptional-vertex";
            case CoverKind::matching:           return "matching";
            case CoverKind::parity_edge:        return "parity-edge";
            case CoverKind::seagull_flock:      return "seagull-flock";
        }
        return "unknown";
    }

    auto image_edges(const RootedForest & f, const PartialEmbedding & phi) -> std::vector<Edge>
    {
        std::vector<Edge> out;
        for (auto & e : f.edges()) {
            if (! phi.defined(e.u) || ! phi.defined(e.v))
                throw PreconditionError("image_edges needs a total embedding");
            out.push_back(make_edge(phi.map[e.u], phi.map[e.v]));
        }
        return out;
    }

    auto apply_embedding(HostView & host, const RootedForest & f, const PartialEmbedding & phi) -> void
    {
        for (auto & e : image_edges(f, phi)) {
            if (! host.adjacent(e.u, e.v))
                throw InvariantViolation("embedding uses a host edge that is not available");
            host.remove_edge(e.u, e.v);
        }
    }

    namespace
    {
        auto mask_of(int n, const VertexSet & s) -> std::vector<char>
        {
            std::vector<char> m(n, 0);
            for (auto v : s) {
                if (v < 0 || v >= n)
                    throw PreconditionError("vertex " + std::to_string(v) + " is out of range");
                m[v] = 1;
            }
            return m;
        }

        auto tree_neighbours(const RootedForest & t, VertexId v) -> VertexSet
        {
            VertexSet out = t.children(v);
            if (t.parent(v) >= 0)
                out.push_back(t.parent(v));
            std::sort(out.begin(), out.end());
            return out;
        }

        auto check_reserved(const ReservedTree & t, const std::vector<char> & safe, const std::vector<char> & forbidden) -> void
        {
            if (t.tree.component_count() != 1)
                throw PreconditionError("a reserved tree must be connected");
            if (t.root_image >= 0) {
                if (t.root_image >= static_cast<int>(safe.size()))
                    throw PreconditionError("root image is out of range");
                if (! safe[t.root_image] || forbidden[t.root_image])
                    throw PreconditionError("root image must lie in the safe region and outside the forbidden set");
            }
        }

        /// Shared completion backend: extend the pins inside the allowed region.
        auto complete(const RootedForest & f, const HostView & host, const PartialEmbedding & pins,
                const std::vector<char> & allowed, int attempt, std::uint64_t seed, std::int64_t budget)
            -> std::optional<PartialEmbedding>
        {
            GreedyEmbedOptions opts;
            opts.policy = attempt == 0 ? CandidatePolicy::max_residual : CandidatePolicy::random;
            opts.seed = seed;
            opts.check_codegree = false;
            opts.allowed = &allowed;
            opts.backtrack_budget = budget;
            return try_embed_forest(f, host, pins, opts);
        }

        /// Injective, inside the host, avoiding W, non-designated vertices in
        /// the safe region, payload covered, and no edge outside the safe
        /// region other than payload edges and edges into the safe region.
        auto post_check(const RootedForest & f, const HostView & host, const PartialEmbedding & phi,
                const std::vector<char> & safe, const std::vector<char> & forbidden,
                const std::vector<char> & payload_vertex, const std::vector<Edge> & payload, const char * what) -> void
        {
            const std::string name(what);
            if (! phi.is_total())
                throw InvariantViolation(name + ": embedding is not total");
            std::vector<char> hit(host.order(), 0);
            for (auto v : phi.map) {
                if (hit[v])
                    throw InvariantViolation(name + ": embedding is not injective");
                hit[v] = 1;
                if (forbidden[v])
                    throw InvariantViolation(name + ": embedding meets its forbidden set");
                if (! safe[v] && ! payload_vertex[v])
                    throw InvariantViolation(name + ": vertex " + std::to_string(v) + " placed outside the safe region");
            }
            std::set<Edge> image;
            for (auto & e : image_edges(f, phi)) {
                if (! host.adjacent(e.u, e.v))
                    throw InvariantViolation(name + ": tree edge lands on an unavailable host edge");
                image.insert(e);
            }
            std::set<Edge> wanted;
            for (auto & e : payload) {
                wanted.insert(make_edge(e.u, e.v));
                if (! image.count(make_edge(e.u, e.v)))
                    throw InvariantViolation(name + ": payload edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not covered");
            }
            for (auto & e : image)
                if (! safe[e.u] && ! safe[e.v] && ! wanted.count(e))
                    throw InvariantViolation(name + ": edge outside the safe region is not a payload edge");
        }

        /// Greedy choice of `count` distinct star leaves at `centre`.
        auto pick_leaves(const HostView & host, VertexId centre, int count, const std::vector<char> & usable,
                std::vector<char> & taken, Rng * rng) -> std::optional<VertexSet>
        {
            VertexSet pool;
            for (VertexId w = 0 ; w < host.order() ; ++w)
                if (usable[w] && ! taken[w] && host.adjacent(centre, w))
                    pool.push_back(w);
            if (static_cast<int>(pool.size()) < count)
                return std::nullopt;
            if (rng)
                rng->shuffle(pool);
            else
                std::stable_sort(pool.begin(), pool.end(), [&] (VertexId a, VertexId b) { return host.degree(a) > host.degree(b); });
            pool.resize(count);
            for (auto w : pool)
                taken[w] = 1;
            return pool;
        }

        /// 5-independent matching of t whose endpoints are at distance at
        /// least 5 from the root; canonical edge order.
        auto far_independent_matching(const RootedForest & t, const SimpleGraph & tg) -> std::vector<Edge>
        {
            constexpr int far = std::numeric_limits<int>::max();
            std::vector<int> dist(t.order(), far);
            std::vector<Edge> chosen;
            for (auto & e : tg.edges()) {
                if (t.depth(e.u) < 5 || t.depth(e.v) < 5)
                    continue;
                if (dist[e.u] < 5 || dist[e.v] < 5)
                    continue;
                chosen.push_back(e);
                for (auto s : { e.u, e.v }) {
                    auto d = bfs_distances(tg, s, 4);
                    for (VertexId v = 0 ; v < t.order() ; ++v)
                        if (d[v] >= 0)
                            dist[v] = std::min(dist[v], d[v]);
                }
            }
            if (! chosen.empty() && ! is_k_independent_matching(tg, 5, chosen))
                throw InvariantViolation("matching selection is not 5-independent");
            return chosen;
        }

        auto check_flock(const HostView & avail, const Flock & flock, const std::vector<char> & safe,
                const std::vector<char> & forbidden) -> void
        {
            std::vector<char> seen(avail.order(), 0);
            for (auto & s : flock) {
                for (auto v : { s.wing1, s.centre, s.wing2 }) {
                    if (v < 0 || v >= avail.order())
                        throw PreconditionError("seagull vertex out of range");
                    if (seen[v])
                        throw PreconditionError("seagulls of a flock must be vertex-disjoint");
                    seen[v] = 1;
                    if (forbidden[v])
                        throw PreconditionError("seagull meets the forbidden set");
                }
                if (! safe[s.wing1] || ! safe[s.wing2] || safe[s.centre])
                    throw PreconditionError("seagull wings must lie in the safe region and centres outside it");
                if (! avail.adjacent(s.wing1, s.centre) || ! avail.adjacent(s.centre, s.wing2))
                    throw PreconditionError("seagull edge is not available in the host");
            }
        }

        auto flock_edges(const Flock & flock) -> std::vector<Edge>
        {
            std::vector<Edge> out;
            for (auto & s : flock) {
                out.push_back(make_edge(s.wing1, s.centre));
                out.push_back(make_edge(s.centre, s.wing2));
            }
            return out;
        }

        auto plain_embedding(const ReservedTree & t, const HostView & avail, const std::vector<char> & safe,
                const std::vector<char> & forbidden, const CoverOptions & options) -> CoverResult
        {
            CoverResult result;
            std::vector<char> allowed(avail.order(), 0);
            for (VertexId v = 0 ; v < avail.order() ; ++v)
                allowed[v] = safe[v] && ! forbidden[v];
            PartialEmbedding pins(t.tree.order());
            if (t.root_image >= 0)
                pins.map[t.tree.roots()[0]] = t.root_image;
            for (int attempt = 0 ; attempt < std::max(1, options.attempts) ; ++attempt) {
                auto phi = complete(t.tree, avail, pins, allowed, attempt, mix_seed(options.seed, attempt), options.backtrack_budget);
                if (phi) {
                    post_check(t.tree, avail, *phi, safe, forbidden, std::vector<char>(avail.order(), 0), { }, "plain embedding");
                    result.ok = true;
                    result.embedding = std::move(*phi);
                    return result;
                }
            }
            result.failure = "greedy completion failed inside the safe region";
            return result;
        }
    }

    auto cover_matching_with_tree(const ReservedTree & t, const HostView & avail, const VertexSet & safe_set,
            const std::vector<Edge> & matching, const CoverOptions & options) -> CoverResult
    {
        const int n = avail.order();
        auto safe = mask_of(n, safe_set), forbidden = mask_of(n, t.forbidden);
        check_reserved(t, safe, forbidden);

        std::vector<char> payload(n, 0);
        for (auto & e : matching) {
            if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v)
                throw PreconditionError("matching edge out of range");
            if (payload[e.u] || payload[e.v])
                throw PreconditionError("matching edges must be vertex-disjoint");
            if (safe[e.u] || safe[e.v])
                throw PreconditionError("matching must lie outside the safe region");
            if (forbidden[e.u] || forbidden[e.v])
                throw PreconditionError("matching meets the forbidden set");
            if (! avail.adjacent(e.u, e.v))
                throw PreconditionError("matching edge is not available in the host");
            payload[e.u] = payload[e.v] = 1;
        }
        if (matching.empty())
            return plain_embedding(t, avail, safe, forbidden, options);

        CoverResult result;
        const auto & tree = t.tree;
        auto tg = tree.to_graph();
        auto n_match = far_independent_matching(tree, tg);
        if (n_match.size() < matching.size()) {
            result.failure = "tree has a far 5-independent matching of size " + std::to_string(n_match.size())
                + " but " + std::to_string(matching.size()) + " edges must be covered";
            return result;
        }
        n_match.resize(matching.size());

        std::vector<char> usable(n, 0);
        for (VertexId v = 0 ; v < n ; ++v)
            usable[v] = safe[v] && ! forbidden[v] && v != t.root_image;

        for (int attempt = 0 ; attempt < std::max(1, options.attempts) ; ++attempt) {
            Rng rng(mix_seed(options.seed, attempt));
            PartialEmbedding pins(tree.order());
            if (t.root_image >= 0)
                pins.map[tree.roots()[0]] = t.root_image;
            std::vector<char> taken(n, 0);
            bool stars = true;
            for (std::size_t j = 0 ; j < matching.size() && stars ; ++j) {
                VertexId x = n_match[j].u, z = n_match[j].v;
                VertexId u = std::min(matching[j].u, matching[j].v), v = std::max(matching[j].u, matching[j].v);
                pins.map[x] = u;
                pins.map[z] = v;
                for (auto [a, b, c] : { std::tuple{ x, z, u }, std::tuple{ z, x, v } }) {
                    VertexSet others;
                    for (auto w : tree_neighbours(tree, a))
                        if (w != b)
                            others.push_back(w);
                    auto leaves = pick_leaves(avail, c, static_cast<int>(others.size()), usable, taken, attempt ? &rng : nullptr);
                    if (! leaves) {
                        stars = false;
                        break;
                    }
                    for (std::size_t i = 0 ; i < others.size() ; ++i)
                        pins.map[others[i]] = (*leaves)[i];
                }
            }
            if (! stars) {
                result.failure = "no disjoint stars with leaves in the safe region";
                continue;
            }
            std::vector<char> allowed(n, 0);
            for (VertexId v = 0 ; v < n ; ++v)
                allowed[v] = usable[v] && ! taken[v];
            auto phi = complete(tree, avail, pins, allowed, attempt, rng.next_u64(), options.backtrack_budget);
            if (! phi) {
                result.failure = "greedy completion failed";
                continue;
            }
            post_check(tree, avail, *phi, safe, forbidden, payload, matching, "matching cover");
            result.ok = true;
            result.failure.clear();
            result.embedding = std::move(*phi);
            return result;
        }
        return result;
    }

    auto cover_seagulls_with_tree(const ReservedTree & t, const HostView & avail, const VertexSet & safe_set,
            const Flock & flock, const CoverOptions & options) -> CoverResult
    {
        const int n = avail.order();
        auto safe = mask_of(n, safe_set), forbidden = mask_of(n, t.forbidden);
        check_reserved(t, safe, forbidden);
        check_flock(avail, flock, safe, forbidden);
        for (auto & s : flock)
            if (s.wing1 == t.root_image || s.wing2 == t.root_image)
                throw PreconditionError("a wing coincides with the root image");
        if (flock.empty())
            return plain_embedding(t, avail, safe, forbidden, options);

        CoverResult result;
        const auto & tree = t.tree;
        auto tg = tree.to_graph();
        VertexId root = tree.roots()[0];
        VertexSet z{ root };
        for (VertexId v = 0 ; v < tree.order() ; ++v)
            if (v != root && tree.degree(v) == 2)
                z.push_back(v);
        auto ind = greedy_k_independent_set(tg, 5, { root }, z);
        VertexSet ys;
        for (auto v : ind)
            if (v != root)
                ys.push_back(v);
        if (ys.size() < flock.size()) {
            result.failure = "tree has " + std::to_string(ys.size()) + " suitable degree-2 vertices but the flock has "
                + std::to_string(flock.size()) + " seagulls";
            return result;
        }

        std::vector<char> payload(n, 0), allowed(n, 0);
        for (auto & s : flock)
            payload[s.centre] = payload[s.wing1] = payload[s.wing2] = 1;
        for (VertexId v = 0 ; v < n ; ++v)
            allowed[v] = safe[v] && ! forbidden[v] && ! payload[v] && v != t.root_image;

        PartialEmbedding pins(tree.order());
        if (t.root_image >= 0)
            pins.map[root] = t.root_image;
        for (std::size_t j = 0 ; j < flock.size() ; ++j) {
            auto nb = tree_neighbours(tree, ys[j]);
            pins.map[ys[j]] = flock[j].centre;
            pins.map[nb[0]] = flock[j].wing1;
            pins.map[nb[1]] = flock[j].wing2;
        }
        for (int attempt = 0 ; attempt < std::max(1, options.attempts) ; ++attempt) {
            auto phi = complete(tree, avail, pins, allowed, attempt, mix_seed(options.seed, attempt), options.backtrack_budget);
            if (! phi)
                continue;
            post_check(tree, avail, *phi, safe, forbidden, payload, flock_edges(flock), "seagull cover");
            result.ok = true;
            result.embedding = std::move(*phi);
            return result;
        }
        result.failure = "greedy completion failed";
        return result;
    }

    auto cover_seagulls_with_pair(const ReservedTree & t1, const ReservedTree & t2, const HostView & avail,
            const VertexSet & safe_set, const Flock & flock, const CoverOptions & options) -> PairCoverResult
    {
        const int n = avail.order();
        auto safe = mask_of(n, safe_set);
        auto forbidden1 = mask_of(n, t1.forbidden), forbidden2 = mask_of(n, t2.forbidden);
        check_reserved(t1, safe, forbidden1);
        check_reserved(t2, safe, forbidden2);
        check_flock(avail, flock, safe, forbidden1);
        check_flock(avail, flock, safe, forbidden2);

        PairCoverResult result;
        std::vector<char> payload(n, 0);
        for (auto & s : flock)
            payload[s.centre] = payload[s.wing1] = payload[s.wing2] = 1;

        // per tree: leaf neighbours 3-independent together with the root, and one leaf each
        struct Pick { VertexSet ys, leaves; };
        auto choose = [&] (const RootedForest & tree) -> std::optional<Pick> {
            auto tg = tree.to_graph();
            VertexId root = tree.roots()[0];
            VertexSet z{ root };
            std::vector<VertexId> leaf_of(tree.order(), -1);
            for (VertexId v = 0 ; v < tree.order() ; ++v) {
                if (v == root)
                    continue;
                for (auto w : tree_neighbours(tree, v))
                    if (w != root && tree.degree(w) == 1) {
                        leaf_of[v] = w;
                        break;
                    }
                if (leaf_of[v] >= 0)
                    z.push_back(v);
            }
            auto ind = greedy_k_independent_set(tg, 3, { root }, z);
            Pick pick;
            for (auto v : ind)
                if (v != root && pick.ys.size() < flock.size()) {
                    pick.ys.push_back(v);
                    pick.leaves.push_back(leaf_of[v]);
                }
            if (pick.ys.size() < flock.size())
                return std::nullopt;
            return pick;
        };
        auto p1 = choose(t1.tree), p2 = choose(t2.tree);
        if (! p1 || ! p2) {
            result.failure = "a tree of the pair has too few 3-independent leaf neighbours";
            return result;
        }

        auto run = [&] (const ReservedTree & t, const Pick & p, const std::vector<char> & forbidden, bool first,
                const HostView & host, int attempt) -> std::optional<PartialEmbedding> {
            PartialEmbedding pins(t.tree.order());
            if (t.root_image >= 0)
                pins.map[t.tree.roots()[0]] = t.root_image;
            for (std::size_t j = 0 ; j < flock.size() ; ++j) {
                pins.map[p.ys[j]] = first ? flock[j].wing1 : flock[j].wing2;
                pins.map[p.leaves[j]] = flock[j].centre;
            }
            std::vector<char> allowed(n, 0);
            for (VertexId v = 0 ; v < n ; ++v)
                allowed[v] = safe[v] && ! forbidden[v] && ! payload[v] && v != t.root_image;
            return complete(t.tree, host, pins, allowed, attempt, mix_seed(options.seed, 2 * attempt + (first ? 0 : 1)),
                    options.backtrack_budget);
        };

        std::vector<Edge> half1, half2;
        for (auto & s : flock) {
            half1.push_back(make_edge(s.wing1, s.centre));
            half2.push_back(make_edge(s.centre, s.wing2));
        }
        for (int attempt = 0 ; attempt < std::max(1, options.attempts) ; ++attempt) {
            auto phi1 = run(t1, *p1, forbidden1, true, avail, attempt);
            if (! phi1)
                continue;
            HostView rest = avail;
            apply_embedding(rest, t1.tree, *phi1);
            auto phi2 = run(t2, *p2, forbidden2, false, rest, attempt);
            if (! phi2)
                continue;
            post_check(t1.tree, avail, *phi1, safe, forbidden1, payload, half1, "seagull pair cover");
            post_check(t2.tree, rest, *phi2, safe, forbidden2, payload, half2, "seagull pair cover");
            result.ok = true;
            result.first = std::move(*phi1);
            result.second = std::move(*phi2);
            return result;
        }
        result.failure = "greedy completion failed for the pair";
        return result;
    }

    auto fix_parity_with_tree(const ReservedTree & t, const HostView & avail, const VertexSet & safe_set,
            Edge target, const CoverOptions & options) -> CoverResult
    {
        const int n = avail.order();
        auto safe = mask_of(n, safe_set), forbidden = mask_of(n, t.forbidden);
        check_reserved(t, safe, forbidden);
        auto [u, v] = target;
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw PreconditionError("target edge out of range");
        if (! safe[u] || safe[v])
            throw PreconditionError("target edge must join the safe region to a vertex outside it");
        if (forbidden[u] || forbidden[v] || u == t.root_image)
            throw PreconditionError("target edge meets the forbidden set or the root image");
        if (! avail.adjacent(u, v))
            throw PreconditionError("target edge is not available in the host");

        CoverResult result;
        const auto & tree = t.tree;
        VertexId leaf = -1;
        for (VertexId x = 0 ; x < tree.order() ; ++x)
            if (! tree.is_root(x) && tree.degree(x) == 1 && tree.depth(x) >= 4) {
                leaf = x;
                break;
            }
        if (leaf < 0) {
            result.failure = "tree has no leaf at distance at least 4 from its root";
            return result;
        }

        PartialEmbedding pins(tree.order());
        if (t.root_image >= 0)
            pins.map[tree.roots()[0]] = t.root_image;
        pins.map[tree.parent(leaf)] = u;
        pins.map[leaf] = v;
        std::vector<char> payload(n, 0), allowed(n, 0);
        payload[v] = 1;
        for (VertexId w = 0 ; w < n ; ++w)
            allowed[w] = safe[w] && ! forbidden[w] && w != u && w != t.root_image;
        for (int attempt = 0 ; attempt < std::max(1, options.attempts) ; ++attempt) {
            auto phi = complete(tree, avail, pins, allowed, attempt, mix_seed(options.seed, attempt), options.backtrack_budget);
            if (! phi)
                continue;
            post_check(tree, avail, *phi, safe, forbidden, payload, { target }, "parity cover");
            int crossing = 0;
            for (auto & e : image_edges(tree, *phi))
                if (safe[e.u] != safe[e.v])
                    ++crossing;
            if (crossing != 1)
                throw InvariantViolation("parity cover uses more than the target edge across the region boundary");
            result.ok = true;
            result.embedding = std::move(*phi);
            return result;
        }
        result.failure = "greedy completion failed";
        return result;
    }

    auto cover_exceptional_vertex(const std::vector<ReservedForest> & forests, const HostView & avail,
            const VertexSet & safe_set, VertexId v0, int threshold, const CoverOptions & options) -> ExceptionalResult
    {
        const int n = avail.order();
        if (v0 < 0 || v0 >= n)
            throw PreconditionError("exceptional vertex out of range");
        auto safe = mask_of(n, safe_set);
        if (safe[v0])
            throw PreconditionError("the exceptional vertex must lie outside the safe region");

        ExceptionalResult result;
        HostView cur = avail;
        for (std::size_t i = 0 ; i < forests.size() ; ++i) {
            const auto & rf = forests[i];
            const auto & f = rf.forest;
            auto forbidden = mask_of(n, rf.forbidden);
            if (! rf.root_images.empty() && rf.root_images.size() != f.roots().size())
                throw PreconditionError("one root image per component is required");

            PartialEmbedding pins(f.order());
            std::vector<char> reserved(n, 0);
            VertexSet pinned_roots;
            for (std::size_t r = 0 ; r < rf.root_images.size() ; ++r) {
                VertexId img = rf.root_images[r];
                if (img < 0)
                    continue;
                if (img >= n || ! safe[img] || forbidden[img] || reserved[img])
                    throw PreconditionError("root images must be distinct vertices of the safe region outside W_F");
                pins.map[f.roots()[r]] = img;
                reserved[img] = 1;
                pinned_roots.push_back(f.roots()[r]);
            }

            if (forbidden[v0]) {
                result.embeddings.emplace_back();
                result.skipped.push_back(true);
                result.consumed.push_back(0);
                continue;
            }

            std::vector<char> usable(n, 0);
            for (VertexId v = 0 ; v < n ; ++v)
                usable[v] = safe[v] && ! forbidden[v] && ! reserved[v];

            std::optional<PartialEmbedding> found;
            int consumed = 0;
            if (cur.degree(v0) > threshold) {
                auto fg = f.to_graph();
                VertexSet z = pinned_roots;
                for (VertexId x = 0 ; x < f.order() ; ++x)
                    if (f.degree(x) >= 2 && pins.map[x] < 0)
                        z.push_back(x);
                auto ind = greedy_k_independent_set(fg, 5, pinned_roots, z);
                VertexSet candidates;
                for (auto x : ind)
                    if (pins.map[x] < 0)
                        candidates.push_back(x);
                std::stable_sort(candidates.begin(), candidates.end(), [&] (VertexId a, VertexId b) {
                    return f.degree(a) > f.degree(b);
                });
                int room = 0;
                for (VertexId w = 0 ; w < n ; ++w)
                    if (usable[w] && cur.adjacent(v0, w))
                        ++room;
                for (auto x : candidates) {
                    if (f.degree(x) > room || found)
                        continue;
                    auto nb = tree_neighbours(f, x);
                    for (int attempt = 0 ; attempt < std::max(1, options.attempts) && ! found ; ++attempt) {
                        Rng rng(mix_seed(options.seed, i * 1000 + attempt));
                        std::vector<char> taken(n, 0);
                        auto leaves = pick_leaves(cur, v0, static_cast<int>(nb.size()), usable, taken, attempt ? &rng : nullptr);
                        if (! leaves)
                            break;
                        PartialEmbedding p = pins;
                        p.map[x] = v0;
                        for (std::size_t j = 0 ; j < nb.size() ; ++j)
                            p.map[nb[j]] = (*leaves)[j];
                        std::vector<char> allowed(n, 0);
                        for (VertexId v = 0 ; v < n ; ++v)
                            allowed[v] = usable[v] && ! taken[v];
                        found = complete(f, cur, p, allowed, attempt, rng.next_u64(), options.backtrack_budget);
                        if (found)
                            consumed = static_cast<int>(nb.size());
                    }
                }
            }
            if (! found) {
                std::vector<char> allowed = usable;
                for (int attempt = 0 ; attempt < std::max(1, options.attempts) && ! found ; ++attempt)
                    found = complete(f, cur, pins, allowed, attempt, mix_seed(options.seed, i * 1000 + 500 + attempt),
                            options.backtrack_budget);
            }
            if (! found) {
                result.failure = "forest " + std::to_string(i) + " could not be embedded";
                result.residual_degree = cur.degree(v0);
                return result;
            }

            std::vector<char> payload(n, 0);
            payload[v0] = 1;
            post_check(f, cur, *found, safe, forbidden, payload, { }, "exceptional cover");
            if (consumed > 0 && consumed < 2)
                throw InvariantViolation("routing through the exceptional vertex consumed fewer than two edges");
            int before = cur.degree(v0);
            apply_embedding(cur, f, *found);
            if (before - cur.degree(v0) != consumed)
                throw InvariantViolation("degree accounting at the exceptional vertex is off");
            result.embeddings.push_back(std::move(*found));
            result.skipped.push_back(false);
            result.consumed.push_back(consumed);
        }
        result.residual_degree = cur.degree(v0);
        result.ok = result.residual_degree <= threshold;
        if (! result.ok)
            result.failure = "capacity exhausted with residual degree " + std::to_string(result.residual_degree)
                + " above the threshold " + std::to_string(threshold);
        return result;
    }

    auto cover_step_json(const CoverTarget & target, bool ok, const std::string & failure) -> std::string
    {
        nlohmann::json j;
        j["kind"] = to_string(target.kind);
        j["ok"] = ok;
        if (! failure.empty())
            j["failure"] = failure;
        auto edges = nlohmann::json::array();
        for (auto & e : target.edges)
            edges.push_back({ e.u, e.v });
        j["edges"] = edges;
        auto flock = nlohmann::json::array();
        for (auto & s : target.flock)
            flock.push_back({ s.wing1, s.centre, s.wing2 });
        j["flock"] = flock;
        if (target.vertex >= 0)
            j["vertex"] = target.vertex;
        j["safe_region_size"] = target.safe_region.size();
        return j.dump();
    }
}
