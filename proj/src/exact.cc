/* vim: set sw=4 sts=4 et : */

#include <treepack/packer.hh>
#include <treepack/errors.hh>

#include <algorithm>
#include <bit>
#include <numeric>

namespace treepack
{
    auto to_string(ExactStatus status) -> std::string
    {
        switch (status) {
            case ExactStatus::found: return "found";
            case ExactStatus::infeasible: return "infeasible";
            case ExactStatus::exhausted: return "exhausted";
        }
        return "?";
    }

    namespace
    {
        using Words = std::vector<std::uint64_t>;

        auto set_bit(Words & w, int i) -> void { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
        auto clear_bit(Words & w, int i) -> void { w[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
        auto test_bit(const Words & w, int i) -> bool { return (w[i >> 6] >> (i & 63)) & 1; }

        struct TreePlan
        {
            int id = 0;
            int edges = 0;
            int delta = 0;
            std::vector<VertexId> order;
            std::vector<VertexId> parent;
            std::vector<int> need;
            std::vector<VertexId> pin;
            Words allowed;
            bool same_as_previous = false;
        };

        /// BFS from a vertex of maximum degree, over the tree's edges.
        auto plan_tree(const RootedForest & t) -> TreePlan
        {
            TreePlan p;
            int k = t.order();
            p.edges = t.size();
            p.delta = t.max_degree();
            p.parent.assign(k, -1);
            p.need.assign(k, 0);
            if (k == 0)
                return p;

            VertexId root = 0;
            for (VertexId x = 1 ; x < k ; ++x)
                if (t.degree(x) > t.degree(root))
                    root = x;

            std::vector<std::vector<VertexId>> adj(k);
            for (auto & e : t.edges()) {
                adj[e.u].push_back(e.v);
                adj[e.v].push_back(e.u);
            }

            std::vector<char> seen(k, 0);
            std::vector<VertexId> roots{ root };
            for (VertexId x = 0 ; x < k ; ++x)
                if (t.is_root(x) && t.component_of(x) != t.component_of(root))
                    roots.push_back(x);

            for (auto r : roots) {
                std::size_t head = p.order.size();
                p.order.push_back(r);
                seen[r] = 1;
                while (head < p.order.size()) {
                    VertexId x = p.order[head++];
                    for (auto y : adj[x])
                        if (! seen[y]) {
                            seen[y] = 1;
                            p.parent[y] = x;
                            ++p.need[x];
                            p.order.push_back(y);
                        }
                }
            }
            return p;
        }

        class Searcher
        {
            private:
                HostView _host;
                std::vector<TreePlan> _plans;
                const SearchRequest & _request;
                int _n, _words;
                Words _exempt;
                Words _used;
                std::vector<int> _suffix_delta;
                std::vector<std::int64_t> _suffix_edges;
                std::vector<std::vector<VertexId>> _maps;
                std::int64_t _nodes = 0;
                bool _aborted = false;

                auto must_cover_degree(VertexId v) const -> int
                {
                    if (! test_bit(_exempt, v))
                        return _host.degree(v);
                    int inside = 0;
                    auto row = _host.row(v);
                    for (int w = 0 ; w < _words ; ++w)
                        inside += std::popcount(row[w] & _exempt[w]);
                    return _host.degree(v) - inside;
                }

                auto feasible_from(std::size_t ti) const -> bool
                {
                    if (! _request.cover_all)
                        return true;
                    std::int64_t total = 0;
                    for (VertexId v = 0 ; v < _n ; ++v) {
                        int d = must_cover_degree(v);
                        if (d > _suffix_delta[ti])
                            return false;
                        total += d;
                    }
                    return total / 2 <= _suffix_edges[ti];
                }

                auto finished() const -> bool
                {
                    if (_request.cover_all)
                        for (VertexId v = 0 ; v < _n ; ++v)
                            if (must_cover_degree(v) != 0)
                                return false;
                    return ! _request.accept || _request.accept(_host);
                }

                auto try_candidate(std::size_t ti, std::size_t i, VertexId x, VertexId w) -> bool
                {
                    if (++_nodes > _request.budget) {
                        _aborted = true;
                        return false;
                    }
                    auto & plan = _plans[ti];
                    auto & map = _maps[plan.id];
                    VertexId p = plan.parent[x] >= 0 ? map[plan.parent[x]] : -1;
                    map[x] = w;
                    set_bit(_used, w);
                    if (p >= 0)
                        _host.remove_edge(p, w);
                    bool ok = place(ti, i + 1);
                    if (p >= 0)
                        _host.add_edge(p, w);
                    clear_bit(_used, w);
                    if (! ok)
                        map[x] = -1;
                    return ok;
                }

                auto place(std::size_t ti, std::size_t i) -> bool
                {
                    if (ti == _plans.size())
                        return finished();

                    auto & plan = _plans[ti];
                    if (i == plan.order.size()) {
                        std::fill(_used.begin(), _used.end(), 0);
                        bool ok = feasible_from(ti + 1) && place(ti + 1, 0);
                        if (! ok)
                            for (auto v : _maps[plan.id])
                                set_bit(_used, v);
                        return ok;
                    }

                    VertexId x = plan.order[i];
                    int need = plan.need[x];
                    bool pinned = ! plan.pin.empty() && plan.pin[x] >= 0;
                    auto fits = [&] (VertexId w) {
                        return ! test_bit(_used, w) && (pinned || plan.allowed.empty() || test_bit(plan.allowed, w));
                    };

                    if (plan.parent[x] < 0) {
                        if (pinned) {
                            VertexId w = plan.pin[x];
                            if (! fits(w) || _host.degree(w) < need)
                                return false;
                            return try_candidate(ti, i, x, w);
                        }
                        VertexId lo = 0;
                        if (plan.same_as_previous && i == 0)
                            lo = _maps[_plans[ti - 1].id][_plans[ti - 1].order[0]];
                        for (VertexId w = lo ; w < _n ; ++w) {
                            if (! fits(w) || _host.degree(w) < need)
                                continue;
                            if (try_candidate(ti, i, x, w))
                                return true;
                            if (_aborted || plan.edges == 0)
                                return false;
                        }
                        return false;
                    }

                    VertexId p = _maps[plan.id][plan.parent[x]];
                    if (pinned) {
                        VertexId w = plan.pin[x];
                        if (! fits(w) || ! _host.adjacent(p, w) || _host.degree(w) < need + 1)
                            return false;
                        return try_candidate(ti, i, x, w);
                    }

                    Words cand(_host.row(p), _host.row(p) + _words);
                    for (int k = 0 ; k < _words ; ++k) {
                        cand[k] &= ~_used[k];
                        if (! plan.allowed.empty())
                            cand[k] &= plan.allowed[k];
                    }
                    for (int k = 0 ; k < _words ; ++k)
                        while (cand[k]) {
                            int b = std::countr_zero(cand[k]);
                            cand[k] &= cand[k] - 1;
                            VertexId w = k * 64 + b;
                            if (_host.degree(w) < need + 1)
                                continue;
                            if (try_candidate(ti, i, x, w))
                                return true;
                            if (_aborted)
                                return false;
                        }
                    return false;
                }

            public:
                explicit Searcher(const SearchRequest & request) :
                    _host(request.host),
                    _request(request),
                    _n(request.host.order()),
                    _words(request.host.words())
                {
                    int count = static_cast<int>(request.trees.size());
                    if (! request.pins.empty() && static_cast<int>(request.pins.size()) != count)
                        throw PreconditionError("search_packing: pins must be empty or one per tree");
                    if (! request.allowed.empty() && static_cast<int>(request.allowed.size()) != count)
                        throw PreconditionError("search_packing: allowed must be empty or one per tree");

                    _exempt.assign(_words, 0);
                    for (auto v : request.exempt)
                        set_bit(_exempt, v);
                    _used.assign(_words, 0);

                    std::vector<int> ids(count);
                    std::iota(ids.begin(), ids.end(), 0);
                    std::stable_sort(ids.begin(), ids.end(), [&] (int a, int b) {
                        return request.trees[a].size() > request.trees[b].size();
                    });

                    for (int id : ids) {
                        auto & t = request.trees[id];
                        auto plan = plan_tree(t);
                        plan.id = id;
                        if (! request.pins.empty() && ! request.pins[id].map.empty()) {
                            if (static_cast<int>(request.pins[id].map.size()) != t.order())
                                throw PreconditionError("search_packing: pin map length differs from tree order");
                            plan.pin = request.pins[id].map;
                        }
                        if (! request.allowed.empty() && ! request.allowed[id].empty()) {
                            plan.allowed.assign(_words, 0);
                            for (VertexId v = 0 ; v < _n ; ++v)
                                if (request.allowed[id][v])
                                    set_bit(plan.allowed, v);
                        }
                        _plans.push_back(std::move(plan));
                    }

                    if (request.symmetry && ! _plans.empty() && request.pins.empty() && request.allowed.empty()) {
                        auto & first = _plans[0];
                        int k = static_cast<int>(first.order.size());
                        if (k <= _n) {
                            first.pin.resize(k);
                            std::iota(first.pin.begin(), first.pin.end(), 0);
                        }
                        for (std::size_t i = 2 ; i < _plans.size() ; ++i)
                            _plans[i].same_as_previous =
                                request.trees[_plans[i].id].edges() == request.trees[_plans[i - 1].id].edges();
                    }

                    _suffix_delta.assign(_plans.size() + 1, 0);
                    _suffix_edges.assign(_plans.size() + 1, 0);
                    for (std::size_t i = _plans.size() ; i-- > 0 ; ) {
                        _suffix_delta[i] = _suffix_delta[i + 1] + _plans[i].delta;
                        _suffix_edges[i] = _suffix_edges[i + 1] + _plans[i].edges;
                    }

                    _maps.resize(count);
                    for (int i = 0 ; i < count ; ++i)
                        _maps[i].assign(request.trees[i].order(), -1);
                }

                auto run() -> SearchOutcome
                {
                    SearchOutcome out;
                    bool ok = feasible_from(0) && place(0, 0);
                    out.nodes = _nodes;
                    if (ok) {
                        out.status = ExactStatus::found;
                        for (auto & m : _maps) {
                            PartialEmbedding phi;
                            phi.map = m;
                            out.maps.push_back(std::move(phi));
                        }
                        out.residual = _host;
                        for (std::size_t ti = 0 ; ti < _plans.size() ; ++ti)
                            for (auto x : _plans[ti].order)
                                if (_plans[ti].parent[x] >= 0)
                                    out.residual.remove_edge(_maps[_plans[ti].id][x], _maps[_plans[ti].id][_plans[ti].parent[x]]);
                    }
                    else
                        out.status = _aborted ? ExactStatus::exhausted : ExactStatus::infeasible;
                    return out;
                }
        };
    }

    auto search_packing(const SearchRequest & request) -> SearchOutcome
    {
        Searcher s(request);
        return s.run();
    }

    auto pack_exact(const SimpleGraph & g, const std::vector<RootedForest> & trees, PackMode mode,
            const ExactOptions & options) -> ExactResult
    {
        ExactResult result;
        result.certificate.graph_hash = canonical_hash(g);
        result.certificate.mode = mode;

        std::int64_t total = 0;
        for (auto & t : trees) {
            total += t.size();
            if (t.order() > g.order()) {
                result.status = ExactStatus::infeasible;
                result.reason = "a tree has more vertices than the host";
                return result;
            }
        }
        if ((mode == PackMode::decompose && total != g.size()) || total > g.size()) {
            result.status = ExactStatus::infeasible;
            result.reason = "edge-count";
            return result;
        }

        SearchRequest request;
        request.host = HostView(g);
        request.trees = trees;
        request.cover_all = mode == PackMode::decompose;
        request.budget = options.budget;
        request.symmetry = options.symmetry && g.is_complete();

        auto out = search_packing(request);
        result.status = out.status;
        result.nodes = out.nodes;
        if (out.status != ExactStatus::found) {
            result.reason = out.status == ExactStatus::infeasible ? "search space exhausted without a solution" : "node budget exceeded";
            return result;
        }

        for (int i = 0 ; i < static_cast<int>(trees.size()) ; ++i)
            result.certificate.assignments.push_back({ i, out.maps[i].map });
        auto check = verify_certificate(g, trees, result.certificate);
        if (! check.ok)
            throw InvariantViolation("pack_exact produced an invalid certificate: " + check.violation);
        return result;
    }
}
