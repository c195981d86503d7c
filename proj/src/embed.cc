/* vim: set sw=4 sts=4 et : */

#include <treepack/embed.hh>
#include <treepack/diagnostics.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <algorithm>
#include <bit>
#include <set>

namespace treepack
{
    auto PartialEmbedding::domain() const -> VertexSet
    {
        VertexSet d;
        for (VertexId x = 0 ; x < static_cast<int>(map.size()) ; ++x)
            if (map[x] >= 0)
                d.push_back(x);
        return d;
    }

    auto PartialEmbedding::is_total() const -> bool
    {
        return std::all_of(map.begin(), map.end(), [] (VertexId v) { return v >= 0; });
    }

    auto embedding_is_valid(const RootedForest & f, const SimpleGraph & g, const PartialEmbedding & phi) -> bool
    {
        if (static_cast<int>(phi.map.size()) != f.order())
            return false;
        std::vector<char> hit(g.order(), 0);
        for (auto v : phi.map) {
            if (v < 0)
                continue;
            if (v >= g.order() || hit[v])
                return false;
            hit[v] = 1;
        }
        for (auto & e : f.edges())
            if (phi.defined(e.u) && phi.defined(e.v) && ! g.adjacent(phi.map[e.u], phi.map[e.v]))
                return false;
        return true;
    }

    HostView::HostView(int n) :
        _n(n),
        _words((n + 63) / 64),
        _bits(static_cast<std::size_t>(n) * ((n + 63) / 64), 0),
        _degree(n, 0)
    {
    }

    HostView::HostView(const SimpleGraph & g) :
        HostView(g.order())
    {
        for (auto & e : g.edges())
            add_edge(e.u, e.v);
    }

    auto HostView::add_edge(VertexId u, VertexId v) -> void
    {
        if (u == v || adjacent(u, v))
            throw PreconditionError("add_edge: " + std::to_string(u) + " " + std::to_string(v) + " is a loop or already present");
        _bits[static_cast<std::size_t>(u) * _words + (v >> 6)] |= std::uint64_t(1) << (v & 63);
        _bits[static_cast<std::size_t>(v) * _words + (u >> 6)] |= std::uint64_t(1) << (u & 63);
        ++_degree[u];
        ++_degree[v];
        ++_size;
    }

    auto HostView::remove_edge(VertexId u, VertexId v) -> void
    {
        if (u == v || ! adjacent(u, v))
            throw PreconditionError("remove_edge: " + std::to_string(u) + " " + std::to_string(v) + " is not present");
        _bits[static_cast<std::size_t>(u) * _words + (v >> 6)] &= ~(std::uint64_t(1) << (v & 63));
        _bits[static_cast<std::size_t>(v) * _words + (u >> 6)] &= ~(std::uint64_t(1) << (u & 63));
        --_degree[u];
        --_degree[v];
        --_size;
    }

    auto HostView::neighbours(VertexId v) const -> VertexSet
    {
        VertexSet out;
        const std::uint64_t * r = row(v);
        for (int w = 0 ; w < _words ; ++w)
            for (std::uint64_t bits = r[w] ; bits ; bits &= bits - 1)
                out.push_back(w * 64 + std::countr_zero(bits));
        return out;
    }

    auto HostView::codegree(VertexId u, VertexId v) const -> int
    {
        const std::uint64_t * a = row(u), * b = row(v);
        int c = 0;
        for (int w = 0 ; w < _words ; ++w)
            c += std::popcount(a[w] & b[w]);
        return c;
    }

    auto HostView::edges() const -> std::vector<Edge>
    {
        std::vector<Edge> out;
        for (VertexId u = 0 ; u < _n ; ++u)
            for (auto v : neighbours(u))
                if (u < v)
                    out.push_back({ u, v });
        return out;
    }

    auto HostView::to_graph() const -> SimpleGraph
    {
        return SimpleGraph(_n, edges());
    }

    auto try_embed_forest(const RootedForest & f, const HostView & host, const PartialEmbedding & phi_prime,
            const GreedyEmbedOptions & options) -> std::optional<PartialEmbedding>
    {
        const int nf = f.order(), n = host.order(), words = host.words();
        if (static_cast<int>(phi_prime.map.size()) != nf)
            throw PreconditionError("pre-embedding has the wrong length");

        PartialEmbedding phi = phi_prime;
        std::vector<std::uint64_t> used(words, 0);
        for (auto v : phi.map) {
            if (v < 0)
                continue;
            if (v >= n)
                throw PreconditionError("pre-embedding maps outside the host");
            if ((used[v >> 6] >> (v & 63)) & 1)
                throw PreconditionError("pre-embedding is not injective");
            used[v >> 6] |= std::uint64_t(1) << (v & 63);
        }
        for (auto & e : f.edges())
            if (phi.defined(e.u) && phi.defined(e.v) && ! host.adjacent(phi.map[e.u], phi.map[e.v]))
                return std::nullopt;

        std::vector<std::uint64_t> allowed(words, 0);
        for (VertexId v = 0 ; v < n ; ++v)
            if (! options.allowed || (*options.allowed)[v])
                allowed[v >> 6] |= std::uint64_t(1) << (v & 63);

        // unpinned vertices in BFS order; each is constrained by its parent
        // and by any pinned children
        std::vector<VertexId> levels;
        std::vector<std::vector<VertexId>> constraints;
        for (auto x : f.bfs_order()) {
            if (phi.defined(x))
                continue;
            levels.push_back(x);
            std::vector<VertexId> c;
            if (f.parent(x) >= 0)
                c.push_back(f.parent(x));
            for (auto y : f.children(x))
                if (phi.defined(y))
                    c.push_back(y);
            constraints.push_back(std::move(c));
        }

        Rng rng(options.seed);
        std::vector<std::vector<VertexId>> candidates(levels.size());
        std::vector<std::size_t> next(levels.size(), 0);
        std::vector<std::uint64_t> mask(words);
        std::int64_t nodes = 0;

        auto fill = [&] (std::size_t i) {
            std::fill(mask.begin(), mask.end(), 0);
            for (int w = 0 ; w < words ; ++w)
                mask[w] = allowed[w] & ~used[w];
            for (auto c : constraints[i]) {
                const std::uint64_t * r = host.row(phi.map[c]);
                for (int w = 0 ; w < words ; ++w)
                    mask[w] &= r[w];
            }
            auto & list = candidates[i];
            list.clear();
            for (int w = 0 ; w < words ; ++w)
                for (std::uint64_t bits = mask[w] ; bits ; bits &= bits - 1)
                    list.push_back(w * 64 + std::countr_zero(bits));
            if (options.policy == CandidatePolicy::random)
                rng.shuffle(list);
            else if (options.policy == CandidatePolicy::max_residual)
                std::stable_sort(list.begin(), list.end(), [&] (VertexId a, VertexId b) {
                    return host.degree(a) > host.degree(b);
                });
            next[i] = 0;
        };

        auto place = [&] (std::size_t i, VertexId v) {
            phi.map[levels[i]] = v;
            used[v >> 6] |= std::uint64_t(1) << (v & 63);
        };

        auto unplace = [&] (std::size_t i) {
            VertexId v = phi.map[levels[i]];
            used[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
            phi.map[levels[i]] = -1;
        };

        std::size_t depth = 0;
        if (! levels.empty())
            fill(0);
        while (depth < levels.size()) {
            if (next[depth] < candidates[depth].size()) {
                place(depth, candidates[depth][next[depth]++]);
                ++depth;
                if (depth < levels.size())
                    fill(depth);
                continue;
            }
            if (depth == 0 || ++nodes > options.backtrack_budget)
                return std::nullopt;
            --depth;
            unplace(depth);
        }
        return phi;
    }

    auto embed_forest_greedy(const RootedForest & f, const SimpleGraph & g, const VertexSet & pinned,
            const PartialEmbedding & phi_prime) -> PartialEmbedding
    {
        if (static_cast<int>(phi_prime.map.size()) != f.order())
            throw PreconditionError("pre-embedding has the wrong length");
        if (normalise(pinned) != phi_prime.domain())
            throw PreconditionError("domain of the pre-embedding must equal the pinned set");

        std::pair<VertexId, VertexId> bad;
        if (! is_k_independent(f.to_graph(), 3, normalise(pinned), &bad))
            throw PreconditionError("pinned set is not 3-independent: " + std::to_string(bad.first) + " and "
                    + std::to_string(bad.second) + " are too close");

        HostView host(g);
        for (VertexId u = 0 ; u < g.order() ; ++u)
            for (VertexId v = u + 1 ; v < g.order() ; ++v)
                if (host.codegree(u, v) < f.order())
                    throw PreconditionError("codegree of " + std::to_string(u) + " and " + std::to_string(v) + " is "
                            + std::to_string(host.codegree(u, v)) + " < |F| = " + std::to_string(f.order()));
        if (f.order() > g.order())
            throw PreconditionError("forest has more vertices than the host");

        GreedyEmbedOptions options;
        auto phi = try_embed_forest(f, host, phi_prime, options);
        if (! phi)
            throw InvariantViolation("greedy forest embedding got stuck although the codegree hypothesis holds");
        if (! embedding_is_valid(f, g, *phi) || ! phi->is_total())
            throw InvariantViolation("greedy forest embedding produced an invalid map");
        for (auto x : pinned)
            if (phi->map[x] != phi_prime.map[x])
                throw InvariantViolation("greedy forest embedding moved a pinned vertex");
        return *phi;
    }

    namespace
    {
        auto sparse_core(const HostView & host, const SparseEdgeRequest & request) -> std::optional<std::vector<Edge>>
        {
            const int m = static_cast<int>(request.sources.size());
            std::vector<int> uses(host.order(), 0);
            std::set<Edge> taken;
            std::vector<Edge> chosen;
            VertexSet a = normalise(request.a);

            for (int i = 0 ; i < m ; ++i) {
                VertexId u = request.sources[i];
                VertexSet w = normalise(i < static_cast<int>(request.forbidden.size()) ? request.forbidden[i] : VertexSet{ });
                std::vector<char> blocked(host.order(), 0);
                if (i < request.conflicts.order())
                    for (auto j : request.conflicts.neighbours(i)) {
                        blocked[request.sources[j]] = 1;
                        if (j < i)
                            blocked[chosen[j].v] = 1;
                    }

                VertexId pick = -1;
                for (auto v : a) {
                    if (v == u || ! host.adjacent(u, v) || std::binary_search(w.begin(), w.end(), v))
                        continue;
                    if (uses[v] >= request.s || blocked[v] || taken.count(make_edge(u, v)))
                        continue;
                    pick = v;
                    break;
                }
                if (pick < 0)
                    return std::nullopt;
                ++uses[pick];
                taken.insert(make_edge(u, pick));
                chosen.push_back({ u, pick });
            }
            return chosen;
        }
    }

    auto sparse_edges_valid(const HostView & host, const SparseEdgeRequest & request, const std::vector<Edge> & chosen) -> bool
    {
        const int m = static_cast<int>(request.sources.size());
        if (static_cast<int>(chosen.size()) != m)
            return false;
        VertexSet a = normalise(request.a);
        std::set<Edge> seen;
        std::vector<int> uses(host.order(), 0);
        for (int i = 0 ; i < m ; ++i) {
            auto [u, v] = chosen[i];
            if (u != request.sources[i] || u == v || ! host.adjacent(u, v))
                return false;
            if (! std::binary_search(a.begin(), a.end(), v))
                return false;
            if (i < static_cast<int>(request.forbidden.size()) && std::count(request.forbidden[i].begin(), request.forbidden[i].end(), v))
                return false;
            if (! seen.insert(make_edge(u, v)).second)
                return false;
            if (++uses[v] > request.s)
                return false;
        }
        for (auto & e : request.conflicts.edges())
            for (auto [i, j] : { std::pair{ e.u, e.v }, std::pair{ e.v, e.u } })
                if (chosen[i].v == chosen[j].u || chosen[i].v == chosen[j].v)
                    return false;
        return true;
    }

    auto try_sparse_edge_embedding(const HostView & host, const SparseEdgeRequest & request) -> std::optional<std::vector<Edge>>
    {
        if (request.s < 1)
            throw PreconditionError("multiplicity cap s must be positive");
        if (request.conflicts.order() != 0 && request.conflicts.order() != static_cast<int>(request.sources.size()))
            throw PreconditionError("conflict graph must have one vertex per request");
        auto chosen = sparse_core(host, request);
        if (chosen && ! sparse_edges_valid(host, request, *chosen))
            throw InvariantViolation("sparse edge selection violates its constraints");
        return chosen;
    }

    auto sparse_edge_embedding(const SimpleGraph & g, const SparseEdgeRequest & request) -> std::vector<Edge>
    {
        const int m = static_cast<int>(request.sources.size());
        if (request.s < 1)
            throw PreconditionError("multiplicity cap s must be positive");
        for (auto u : request.sources)
            if (u < 0 || u >= g.order())
                throw PreconditionError("source vertex out of range");

        std::vector<int> mult(g.order(), 0);
        int delta = request.conflicts.order() > 0 ? request.conflicts.max_degree() : 0;
        for (auto u : request.sources)
            delta = std::max(delta, ++mult[u]);

        VertexSet a = normalise(request.a);
        Rational bound = Rational(3 * delta) + Rational(m, request.s) + Rational(request.s);
        for (int i = 0 ; i < m ; ++i) {
            std::int64_t wi = i < static_cast<int>(request.forbidden.size()) ? static_cast<std::int64_t>(normalise(request.forbidden[i]).size()) : 0;
            Rational slack(degree_into(g, request.sources[i], a) - wi);
            if (slack < bound)
                throw PreconditionError("request " + std::to_string(i) + ": d_A(u) - |W| = " + to_string(slack)
                        + " < 3 delta + m/s + s = " + to_string(bound));
        }

        auto chosen = try_sparse_edge_embedding(HostView(g), request);
        if (! chosen)
            throw InvariantViolation("sparse edge selection ran out of targets although the hypothesis holds");
        return *chosen;
    }
}
