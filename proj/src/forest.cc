/* vim: set sw=4 sts=4 et : */

#include <treepack/forest.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <string>

namespace treepack
{
    auto RootedForest::from_edges(int n, const std::vector<Edge> & edges, std::vector<VertexId> roots, int delta_bound) -> RootedForest
    {
        if (n < 0)
            throw PreconditionError("forest order must be non-negative");
        std::vector<std::vector<VertexId>> adj(n);
        for (auto & e : edges) {
            if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
                throw PreconditionError("forest edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " out of range");
            if (e.u == e.v)
                throw PreconditionError("forest has a loop at " + std::to_string(e.u));
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }

        std::vector<VertexId> parent(n, -2);
        std::vector<int> comp_of_root(n, -1);
        auto orient = [&] (VertexId r) {
            std::deque<VertexId> queue{ r };
            parent[r] = -1;
            while (! queue.empty()) {
                VertexId v = queue.front();
                queue.pop_front();
                for (auto w : adj[v]) {
                    if (w == parent[v])
                        continue;
                    if (parent[w] != -2)
                        throw PreconditionError("edges do not form a forest (cycle or repeated edge through "
                                + std::to_string(w) + ")");
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        };

        for (auto r : roots) {
            if (r < 0 || r >= n)
                throw PreconditionError("root " + std::to_string(r) + " out of range");
            if (parent[r] != -2)
                throw PreconditionError("component of root " + std::to_string(r) + " has more than one root");
            orient(r);
        }
        for (VertexId v = 0 ; v < n ; ++v)
            if (parent[v] == -2) {
                roots.push_back(v);
                orient(v);
            }

        // repeated edges between a vertex and its parent slip past the BFS
        if (static_cast<int>(edges.size()) != n - static_cast<int>(roots.size()))
            throw PreconditionError("edges do not form a forest");

        auto result = from_parents(std::move(parent), delta_bound);
        // keep the caller's root order
        std::vector<int> index(n, -1);
        for (int i = 0 ; i < static_cast<int>(roots.size()) ; ++i)
            index[roots[i]] = i;
        result._roots = roots;
        for (VertexId v : result.bfs_order())
            result._component[v] = result._parent[v] < 0 ? index[v] : result._component[result._parent[v]];
        return result;
    }

    auto RootedForest::from_parents(std::vector<VertexId> parent, int delta_bound) -> RootedForest
    {
        RootedForest f;
        f._n = static_cast<int>(parent.size());
        f._delta_bound = delta_bound;
        f._parent = std::move(parent);
        f._children.assign(f._n, { });
        f._depth.assign(f._n, -1);
        f._component.assign(f._n, -1);
        for (VertexId v = 0 ; v < f._n ; ++v) {
            VertexId p = f._parent[v];
            if (p < 0)
                f._roots.push_back(v);
            else if (p >= f._n)
                throw PreconditionError("parent of " + std::to_string(v) + " out of range");
            else
                f._children[p].push_back(v);
        }

        int seen = 0;
        for (int c = 0 ; c < static_cast<int>(f._roots.size()) ; ++c) {
            std::deque<VertexId> queue{ f._roots[c] };
            f._depth[f._roots[c]] = 0;
            while (! queue.empty()) {
                VertexId v = queue.front();
                queue.pop_front();
                f._component[v] = c;
                ++seen;
                for (auto w : f._children[v]) {
                    f._depth[w] = f._depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if (seen != f._n)
            throw PreconditionError("parent map contains a cycle");

        if (delta_bound >= 0 && f.max_degree() > delta_bound)
            throw PreconditionError("forest has maximum degree " + std::to_string(f.max_degree())
                    + " above the bound " + std::to_string(delta_bound));
        return f;
    }

    auto RootedForest::max_degree() const -> int
    {
        int best = 0;
        for (VertexId v = 0 ; v < _n ; ++v)
            best = std::max(best, degree(v));
        return best;
    }

    auto RootedForest::delta_bound() const -> int
    {
        return _delta_bound >= 0 ? std::max(_delta_bound, 1) : std::max(2, max_degree());
    }

    auto RootedForest::edges() const -> std::vector<Edge>
    {
        std::vector<Edge> result;
        result.reserve(size());
        for (VertexId v = 0 ; v < _n ; ++v)
            if (_parent[v] >= 0)
                result.push_back(make_edge(v, _parent[v]));
        std::sort(result.begin(), result.end());
        return result;
    }

    auto RootedForest::to_graph() const -> SimpleGraph
    {
        return SimpleGraph(_n, edges());
    }

    auto RootedForest::bfs_order() const -> std::vector<VertexId>
    {
        std::vector<VertexId> order;
        order.reserve(_n);
        for (auto r : _roots) {
            std::size_t start = order.size();
            order.push_back(r);
            for (std::size_t i = start ; i < order.size() ; ++i)
                for (auto w : _children[order[i]])
                    order.push_back(w);
        }
        return order;
    }

    auto RootedForest::subtree_sizes() const -> std::vector<int>
    {
        std::vector<int> size(_n, 1);
        auto order = bfs_order();
        for (auto it = order.rbegin() ; it != order.rend() ; ++it)
            if (_parent[*it] >= 0)
                size[_parent[*it]] += size[*it];
        return size;
    }

    auto RootedForest::leaf_count() const -> int
    {
        int count = 0;
        for (VertexId v = 0 ; v < _n ; ++v)
            if (degree(v) == 1)
                ++count;
        return count;
    }

    namespace
    {
        auto check_vertex(const RootedForest & t, VertexId v) -> void
        {
            if (v < 0 || v >= t.order())
                throw PreconditionError("vertex " + std::to_string(v) + " is not in the forest");
        }

        auto relabel(const RootedForest & t, VertexSet vertices, VertexId root) -> ExtractedForest
        {
            std::sort(vertices.begin(), vertices.end());
            std::vector<int> index(t.order(), -1);
            for (int i = 0 ; i < static_cast<int>(vertices.size()) ; ++i)
                index[vertices[i]] = i;
            std::vector<VertexId> parent(vertices.size(), -1);
            for (int i = 0 ; i < static_cast<int>(vertices.size()) ; ++i) {
                VertexId v = vertices[i];
                if (v != root)
                    parent[i] = index[t.parent(v)];
            }
            return { RootedForest::from_parents(std::move(parent), t.declared_delta_bound()), std::move(vertices) };
        }

        // one-component view of t re-rooted at x: parent and children arrays
        struct Rerooted
        {
            std::vector<VertexId> parent;
            std::vector<std::vector<VertexId>> children;
            std::vector<int> depth, size;
        };

        auto reroot(const RootedForest & t, VertexId x) -> Rerooted
        {
            int n = t.order();
            std::vector<std::vector<VertexId>> adj(n);
            for (auto & e : t.edges()) {
                adj[e.u].push_back(e.v);
                adj[e.v].push_back(e.u);
            }
            Rerooted r;
            r.parent.assign(n, -1);
            r.children.assign(n, { });
            r.depth.assign(n, -1);
            r.size.assign(n, 0);
            std::vector<VertexId> order{ x };
            r.depth[x] = 0;
            for (std::size_t i = 0 ; i < order.size() ; ++i) {
                VertexId v = order[i];
                std::sort(adj[v].begin(), adj[v].end());
                for (auto w : adj[v])
                    if (r.depth[w] < 0) {
                        r.depth[w] = r.depth[v] + 1;
                        r.parent[w] = v;
                        r.children[v].push_back(w);
                        order.push_back(w);
                    }
            }
            for (auto it = order.rbegin() ; it != order.rend() ; ++it) {
                r.size[*it] += 1;
                if (r.parent[*it] >= 0)
                    r.size[r.parent[*it]] += r.size[*it];
            }
            return r;
        }

        auto collect_below(const Rerooted & r, VertexId y) -> VertexSet
        {
            VertexSet out{ y };
            for (std::size_t i = 0 ; i < out.size() ; ++i)
                for (auto w : r.children[out[i]])
                    out.push_back(w);
            std::sort(out.begin(), out.end());
            return out;
        }

        // descent along largest children (lowest index on ties) until the
        // subtree has at most hi vertices
        auto descend(const Rerooted & r, VertexId x, std::int64_t hi) -> VertexId
        {
            VertexId u = x;
            while (r.size[u] > hi && ! r.children[u].empty()) {
                VertexId best = r.children[u].front();
                for (auto w : r.children[u])
                    if (r.size[w] > r.size[best] || (r.size[w] == r.size[best] && w < best))
                        best = w;
                u = best;
            }
            return u;
        }

        // a vertex y of the component of x with lo <= |T(y)| <= hi and
        // depth(y) >= min_dist: the descent vertex if it qualifies, else the
        // least qualifying vertex of greatest subtree size
        auto window_vertex(const Rerooted & r, VertexId x, std::int64_t lo, std::int64_t hi, int min_dist) -> VertexId
        {
            auto ok = [&] (VertexId v) {
                return r.depth[v] >= min_dist && r.size[v] >= lo && r.size[v] <= hi;
            };
            VertexId y = descend(r, x, hi);
            if (ok(y))
                return y;
            VertexId best = -1;
            for (VertexId v = 0 ; v < static_cast<int>(r.size.size()) ; ++v)
                if (r.depth[v] >= 0 && ok(v) && (best < 0 || r.size[v] > r.size[best]))
                    best = v;
            return best;
        }
    }

    auto subtree_vertices(const RootedForest & t, VertexId v) -> VertexSet
    {
        check_vertex(t, v);
        VertexSet out{ v };
        for (std::size_t i = 0 ; i < out.size() ; ++i)
            for (auto w : t.children(out[i]))
                out.push_back(w);
        std::sort(out.begin(), out.end());
        return out;
    }

    auto subtree_below(const RootedForest & t, VertexId v) -> ExtractedForest
    {
        return relabel(t, subtree_vertices(t, v), v);
    }

    auto subtree_below_depth(const RootedForest & t, VertexId v, int depth) -> ExtractedForest
    {
        check_vertex(t, v);
        if (depth < 0)
            throw PreconditionError("depth must be non-negative");
        VertexSet out{ v };
        for (std::size_t i = 0 ; i < out.size() ; ++i)
            if (t.depth(out[i]) - t.depth(v) < depth)
                for (auto w : t.children(out[i]))
                    out.push_back(w);
        return relabel(t, std::move(out), v);
    }

    auto decompose_rooted(const RootedForest & t, const TreeDecompParams & params) -> std::vector<SubtreeHandle>
    {
        int n = t.order();
        if (t.component_count() != 1)
            throw PreconditionError("decompose_rooted needs a single tree");
        if (params.t < 1 || params.t > n)
            throw PreconditionError("granularity t = " + std::to_string(params.t) + " must lie in [1, " + std::to_string(n) + "]");
        if (params.delta < 2 || t.max_degree() > params.delta)
            throw PreconditionError("tree must have maximum degree at most delta >= 2");

        const std::int64_t t_ = params.t, cap = 2 * std::int64_t(params.delta) * t_;

        // deepest first, lowest index among equal depth: cutting T(y) only
        // shrinks ancestors, so this sweep visits exactly the vertices the
        // recursion would pick, in the same order
        std::vector<VertexId> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&] (VertexId a, VertexId b) {
            return t.depth(a) != t.depth(b) ? t.depth(a) > t.depth(b) : a < b;
        });

        std::vector<int> remaining(n, 1);
        std::vector<char> removed(n, 0);
        std::int64_t left = n;
        std::vector<SubtreeHandle> parts;

        auto gather = [&] (VertexId y) {
            SubtreeHandle h;
            h.y = y;
            h.distance_from_root = t.depth(y);
            std::vector<VertexId> stack{ y };
            while (! stack.empty()) {
                VertexId v = stack.back();
                stack.pop_back();
                removed[v] = 1;
                h.vertices.push_back(v);
                for (auto w : t.children(v))
                    if (! removed[w])
                        stack.push_back(w);
            }
            std::sort(h.vertices.begin(), h.vertices.end());
            h.size = static_cast<int>(h.vertices.size());
            return h;
        };

        for (auto v : order) {
            if (left <= cap)
                break;
            int r = 1;
            for (auto w : t.children(v))
                if (! removed[w])
                    r += remaining[w];
            remaining[v] = r;
            if (r >= t_) {
                parts.push_back(gather(v));
                left -= r;
            }
        }

        parts.push_back(gather(t.roots().front()));

        std::vector<char> covered(n, 0);
        for (auto & p : parts) {
            if (p.size < t_ || p.size > cap)
                throw InvariantViolation("part size " + std::to_string(p.size) + " outside [t, 2 delta t]");
            for (auto v : p.vertices) {
                if (covered[v])
                    throw InvariantViolation("parts overlap");
                covered[v] = 1;
            }
        }
        if (std::count(covered.begin(), covered.end(), 1) != n)
            throw InvariantViolation("parts do not cover the tree");
        return parts;
    }

    auto extract_subtree(const RootedForest & t, VertexId x, const Rational & alpha, int k) -> SubtreeHandle
    {
        check_vertex(t, x);
        if (t.component_count() != 1)
            throw PreconditionError("extract_subtree needs a single tree");
        int n = t.order();
        int delta = t.delta_bound();
        if (k < 0)
            throw PreconditionError("k must be non-negative");
        Rational power(1);
        for (int i = 0 ; i < k ; ++i)
            power *= Rational(delta);
        if (alpha <= Rational(0) || alpha > Rational(1) / (Rational(2) * power))
            throw PreconditionError("alpha = " + to_string(alpha) + " exceeds delta^-k / 2");
        Rational lo = alpha * Rational(n), hi = alpha * Rational(delta) * Rational(n);
        if (lo < Rational(1))
            throw PreconditionError("alpha n must be at least 1");

        auto r = reroot(t, x);
        VertexId y = descend(r, x, floor_of(hi));

        SubtreeHandle h;
        h.y = y;
        h.size = r.size[y];
        h.distance_from_root = r.depth[y];
        h.vertices = collect_below(r, y);
        if (Rational(h.size) < lo || Rational(h.size) > hi)
            throw InvariantViolation("extracted subtree size outside [alpha n, alpha delta n]");
        if (h.distance_from_root < k)
            throw InvariantViolation("extracted subtree closer than k to the root");
        return h;
    }

    auto select_balanced_subforests(const std::vector<RootedForest> & family, const BalancedParams & params) -> BalancedSelection
    {
        if (params.c != 1 && params.c != 2)
            throw PreconditionError("c must be 1 or 2");
        if (params.beta <= Rational(0) || params.beta >= Rational(1))
            throw PreconditionError("beta must lie in (0, 1)");
        const int delta = params.delta, c = params.c;
        const Rational n(params.n);
        constexpr int min_dist = 5;

        const Rational small_lo = params.beta * n / Rational(c * delta), small_hi = params.beta * n / Rational(c);
        const Rational large_lo = small_hi, large_hi = params.beta * n * Rational(delta) / Rational(c);

        BalancedSelection sel;
        std::vector<BalancedChoice> small, large;

        for (std::size_t f = 0 ; f < family.size() ; ++f) {
            auto & forest = family[f];
            auto fail = [&] (const std::string & why) {
                throw PreconditionError("forest " + std::to_string(f) + ": " + why);
            };
            if (forest.component_count() != 2)
                fail("needs exactly two components");
            if (forest.order() > params.n)
                fail("has more than n vertices");
            if (forest.max_degree() > delta)
                fail("exceeds the degree bound");

            BalancedChoice s, l;
            for (int j = 0 ; j < 2 ; ++j) {
                VertexId root = forest.roots()[j];
                auto r = reroot(forest, root);
                std::int64_t comp_size = r.size[root];
                if (Rational(comp_size) < params.alpha * n)
                    fail("component " + std::to_string(j) + " is smaller than alpha n");
                if (comp_size < min_dist + 1)
                    fail("component " + std::to_string(j) + " is too small to hold a subtree at distance 5 from its root");
                if (j >= c)
                    continue;

                for (auto [choice, lo, hi] : { std::tuple{ &s, small_lo, small_hi }, std::tuple{ &l, large_lo, large_hi } }) {
                    VertexId y = window_vertex(r, root, ceil_of(lo), floor_of(hi), min_dist);
                    if (y < 0)
                        fail("component " + std::to_string(j) + " has no subtree of the required size at distance 5 from its root");
                    SubtreeHandle h;
                    h.y = y;
                    h.size = r.size[y];
                    h.distance_from_root = r.depth[y];
                    h.vertices = collect_below(r, y);
                    choice->edges += h.size - 1;
                    choice->parts.push_back(std::move(h));
                }
            }
            s.large = false;
            l.large = true;
            small.push_back(std::move(s));
            large.push_back(std::move(l));
        }

        // S_i uses the large variant for the first i forests
        int count = static_cast<int>(family.size());
        sel.target = params.beta * n * Rational(count);
        std::vector<std::int64_t> partial(count + 1, 0);
        for (int i = 0 ; i < count ; ++i)
            partial[0] += small[i].edges;
        for (int i = 0 ; i < count ; ++i)
            partial[i + 1] = partial[i] + large[i].edges - small[i].edges;

        int best = 0;
        for (int i = 1 ; i <= count ; ++i)
            if (abs_of(Rational(partial[i]) - sel.target) < abs_of(Rational(partial[best]) - sel.target))
                best = i;
        sel.crossing = best;
        sel.total_edges = partial[best];
        for (int i = 0 ; i < count ; ++i)
            sel.choices.push_back(i < best ? std::move(large[i]) : std::move(small[i]));

        if (abs_of(Rational(sel.total_edges) - sel.target) > n)
            throw InvariantViolation("balanced selection misses the target by more than n");
        return sel;
    }

    auto gen_random_tree(int n, int delta, std::uint64_t seed) -> RootedForest
    {
        if (n < 1)
            throw PreconditionError("tree order must be at least 1");
        if (n >= 2 && delta < 1)
            throw PreconditionError("delta must be at least 1");
        if (n >= 3 && delta < 2)
            throw PreconditionError("delta = 1 only allows trees on at most 2 vertices");

        Rng rng(seed);
        std::vector<VertexId> parent(n, -1);
        std::vector<int> degree(n, 0);
        std::vector<VertexId> open{ 0 };
        std::vector<int> slot(n, -1);
        slot[0] = 0;

        auto close = [&] (VertexId v) {
            int i = slot[v];
            VertexId last = open.back();
            open[i] = last;
            slot[last] = i;
            open.pop_back();
            slot[v] = -1;
        };

        for (VertexId v = 1 ; v < n ; ++v) {
            VertexId p = open[rng.below(open.size())];
            parent[v] = p;
            if (++degree[p] >= delta)
                close(p);
            ++degree[v];
            if (degree[v] < delta) {
                slot[v] = static_cast<int>(open.size());
                open.push_back(v);
            }
        }
        return RootedForest::from_parents(std::move(parent), delta);
    }

    auto gen_gl_sequence(int n, int delta, std::uint64_t seed) -> std::vector<RootedForest>
    {
        std::vector<RootedForest> trees;
        trees.reserve(n);
        for (int i = 1 ; i <= n ; ++i)
            trees.push_back(gen_random_tree(i, i <= delta + 1 ? std::max(delta, 1) : delta, mix_seed(seed, i)));
        return trees;
    }

    auto count_degree2_floor(const RootedForest & t, int) -> int
    {
        int count = 0;
        for (VertexId v = 0 ; v < t.order() ; ++v)
            if (t.degree(v) == 2)
                ++count;
        return count;
    }

    namespace
    {
        // AHU encoding of the tree rooted at v
        auto encode(const std::vector<std::vector<VertexId>> & adj, VertexId v, VertexId from) -> std::string
        {
            std::vector<std::string> parts;
            for (auto w : adj[v])
                if (w != from)
                    parts.push_back(encode(adj, w, v));
            std::sort(parts.begin(), parts.end());
            std::string s = "(";
            for (auto & p : parts)
                s += p;
            return s + ")";
        }

        auto canonical_form(int n, const std::vector<Edge> & edges) -> std::string
        {
            std::vector<std::vector<VertexId>> adj(n);
            for (auto & e : edges) {
                adj[e.u].push_back(e.v);
                adj[e.v].push_back(e.u);
            }
            std::string best;
            for (VertexId r = 0 ; r < n ; ++r) {
                auto s = encode(adj, r, -1);
                if (best.empty() || s < best)
                    best = s;
            }
            return best;
        }
    }

    auto enumerate_unlabelled_trees(int order) -> std::vector<RootedForest>
    {
        if (order < 1)
            throw PreconditionError("tree order must be at least 1");
        if (order <= 2) {
            std::vector<Edge> edges;
            if (order == 2)
                edges.push_back({ 0, 1 });
            return { RootedForest::from_edges(order, edges, { 0 }) };
        }

        // every Prüfer sequence, deduplicated by the minimum rooted encoding
        std::set<std::string> seen;
        std::vector<RootedForest> result;
        std::vector<int> code(order - 2, 0);
        for (;;) {
            std::vector<int> degree(order, 1);
            for (auto x : code)
                ++degree[x];
            std::vector<Edge> edges;
            std::set<int> leaves;
            for (int v = 0 ; v < order ; ++v)
                if (degree[v] == 1)
                    leaves.insert(v);
            for (auto x : code) {
                int leaf = *leaves.begin();
                leaves.erase(leaves.begin());
                edges.push_back(make_edge(leaf, x));
                if (--degree[x] == 1)
                    leaves.insert(x);
            }
            int a = *leaves.begin(), b = *std::next(leaves.begin());
            edges.push_back(make_edge(a, b));

            if (seen.insert(canonical_form(order, edges)).second)
                result.push_back(RootedForest::from_edges(order, edges, { 0 }));

            int i = 0;
            while (i < order - 2 && ++code[i] == order)
                code[i++] = 0;
            if (i == order - 2)
                break;
        }
        return result;
    }
}
