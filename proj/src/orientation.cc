/* vim: set sw=4 sts=4 et : */

#include <treepack/orientation.hh>
#include <treepack/cycles.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <limits>
#include <set>

namespace treepack
{
    auto Orientation::out_degrees() const -> std::vector<int>
    {
        std::vector<int> out(n, 0);
        for (auto & a : arcs)
            ++out[a.u];
        return out;
    }

    auto orientation_covers(const SimpleGraph & g, const Orientation & o) -> bool
    {
        if (o.n != g.order() || static_cast<int>(o.arcs.size()) != g.size())
            return false;
        std::vector<char> seen(g.size(), 0);
        for (auto & a : o.arcs) {
            int idx = g.edge_index(a.u, a.v);
            if (idx < 0 || seen[idx])
                return false;
            seen[idx] = 1;
        }
        return true;
    }

    auto orientation_is_out_regular(const SimpleGraph & g, const Orientation & o, int dbar) -> bool
    {
        if (! orientation_covers(g, o))
            return false;
        auto out = o.out_degrees();
        return std::all_of(out.begin(), out.end(), [&] (int d) { return d == dbar; });
    }

    namespace
    {
        template <typename G_>
        auto imbalance_of(const G_ & g, std::int64_t m) -> Rational
        {
            const int n = g.order();
            if (n < 1)
                throw PreconditionError("imbalance needs at least one vertex");
            Rational avg(2 * m, n), z(0);
            for (VertexId v = 0 ; v < n ; ++v)
                z += abs_of(Rational(g.degree(v)) - avg);
            return z;
        }

        auto gap_of(const HostView & h) -> int
        {
            int hi = 0, lo = std::numeric_limits<int>::max();
            for (VertexId v = 0 ; v < h.order() ; ++v) {
                hi = std::max(hi, h.degree(v));
                lo = std::min(lo, h.degree(v));
            }
            return h.order() == 0 ? 0 : hi - lo;
        }

        // Kuhn's augmenting paths: pair j may use any w in options[j]
        auto match_pairs(const std::vector<VertexSet> & options, int n) -> std::vector<VertexId>
        {
            const int t = static_cast<int>(options.size());
            std::vector<VertexId> of_pair(t, -1);
            std::vector<int> of_vertex(n, -1);
            std::vector<char> visited(n);
            std::function<bool (int)> augment = [&] (int j) -> bool {
                for (auto w : options[j]) {
                    if (visited[w])
                        continue;
                    visited[w] = 1;
                    if (of_vertex[w] < 0 || augment(of_vertex[w])) {
                        of_vertex[w] = j;
                        of_pair[j] = w;
                        return true;
                    }
                }
                return false;
            };
            for (int j = 0 ; j < t ; ++j) {
                std::fill(visited.begin(), visited.end(), 0);
                augment(j);
            }
            return of_pair;
        }
    }

    auto imbalance(const SimpleGraph & g) -> Rational
    {
        return imbalance_of(g, g.size());
    }

    auto imbalance(const HostView & g) -> Rational
    {
        return imbalance_of(g, g.size());
    }

    auto euler_orientation(const SimpleGraph & g) -> Orientation
    {
        const int n = g.order();
        for (VertexId v = 0 ; v < n ; ++v)
            if (g.degree(v) % 2)
                throw PreconditionError("Euler orientation needs even degrees; vertex " + std::to_string(v) + " is odd");

        Orientation o;
        o.n = n;
        std::vector<char> used(g.size(), 0);
        std::vector<std::size_t> next(n, 0);
        for (VertexId s = 0 ; s < n ; ++s) {
            // Hierholzer; each edge is oriented in the direction it is first traversed
            std::vector<VertexId> stack{ s };
            while (! stack.empty()) {
                VertexId v = stack.back();
                auto & nbrs = g.neighbours(v);
                auto & ids = g.incident_edges(v);
                while (next[v] < nbrs.size() && used[ids[next[v]]])
                    ++next[v];
                if (next[v] == nbrs.size()) {
                    stack.pop_back();
                    continue;
                }
                used[ids[next[v]]] = 1;
                VertexId w = nbrs[next[v]];
                o.arcs.push_back({ v, w });
                stack.push_back(w);
            }
        }

        // a walk that always leaves along an unused edge until stuck returns to
        // its start, so in-degree equals out-degree around every closed trail
        auto out = o.out_degrees();
        for (VertexId v = 0 ; v < n ; ++v)
            if (2 * out[v] != g.degree(v))
                throw InvariantViolation("Euler orientation is unbalanced at " + std::to_string(v));
        return o;
    }

    auto orient_out_regular(const SimpleGraph & g, const OrientParams & params) -> OrientResult
    {
        const int n = g.order();
        const std::int64_t m = g.size();
        if (n < 1)
            throw PreconditionError("orientation needs at least one vertex");
        if (m % n != 0)
            throw PreconditionError("average degree 2m/n = " + to_string(Rational(2 * m, n)) + " is not an even integer");
        const int dbar = static_cast<int>(m / n);
        if (g.min_degree() < dbar)
            throw PreconditionError("minimum degree " + std::to_string(g.min_degree()) + " is below dbar = " + std::to_string(dbar));

        Rational p = params.p_hint ? *params.p_hint
            : (n >= 2 ? Rational(2 * m, std::int64_t(n) * (n - 1)) : Rational(0));
        const std::int64_t step_cap = floor_of(p * p * Rational(n) / Rational(4));

        OrientResult result;
        result.dbar = dbar;

        for (int attempt = 0 ; attempt < std::max(1, params.restarts) ; ++attempt) {
            result.attempts = attempt + 1;
            result.iterations = 0;
            result.z_history.clear();
            result.gap_history.clear();
            result.t_history.clear();
            result.failure.clear();

            Rng rng(mix_seed(params.seed, attempt));
            HostView cur(g);
            Orientation o;
            o.n = n;
            bool failed = false;

            result.z_history.push_back(imbalance(cur));
            result.gap_history.push_back(gap_of(cur));

            while (gap_of(cur) > 0) {
                if (result.iterations >= 3 * n) {
                    result.failure = "iteration cap 3n reached";
                    failed = true;
                    break;
                }
                int hi = 0, lo = std::numeric_limits<int>::max();
                for (VertexId v = 0 ; v < n ; ++v) {
                    hi = std::max(hi, cur.degree(v));
                    lo = std::min(lo, cur.degree(v));
                }
                VertexSet u_set, v_set;
                for (VertexId v = 0 ; v < n ; ++v) {
                    if (cur.degree(v) == hi)
                        u_set.push_back(v);
                    if (cur.degree(v) == lo)
                        v_set.push_back(v);
                }
                const std::int64_t size_min = std::min(u_set.size(), v_set.size());
                std::int64_t t = std::max<std::int64_t>(1, std::min(size_min, step_cap));
                rng.shuffle(u_set);
                rng.shuffle(v_set);
                u_set.resize(t);
                v_set.resize(t);

                std::vector<char> blocked(n, 0);
                for (auto u : u_set)
                    blocked[u] = 1;
                for (auto v : v_set)
                    blocked[v] = 1;
                std::vector<VertexSet> options(t);
                for (int j = 0 ; j < t ; ++j) {
                    for (VertexId w = 0 ; w < n ; ++w)
                        if (! blocked[w] && cur.adjacent(u_set[j], w) && cur.adjacent(v_set[j], w))
                            options[j].push_back(w);
                    rng.shuffle(options[j]);
                }
                auto w_of = match_pairs(options, n);

                // keep only the pairs that found a middle vertex
                VertexSet us, vs, ws;
                for (int j = 0 ; j < t ; ++j)
                    if (w_of[j] >= 0) {
                        us.push_back(u_set[j]);
                        vs.push_back(v_set[j]);
                        ws.push_back(w_of[j]);
                    }
                t = static_cast<std::int64_t>(us.size());
                if (t == 0) {
                    result.failure = "no path u w v between a maximum- and a minimum-degree vertex";
                    failed = true;
                    break;
                }

                std::vector<char> off(n, 0);
                for (auto v : vs)
                    off[v] = 1;
                for (auto w : ws)
                    off[w] = 1;
                VertexSet keep;
                for (VertexId v = 0 ; v < n ; ++v)
                    if (! off[v])
                        keep.push_back(v);
                if (keep.size() < 3) {
                    result.failure = "fewer than three vertices left for the cycle";
                    failed = true;
                    break;
                }
                auto sub = induced(cur.to_graph(), keep);
                auto cycle = find_hamilton_cycle(sub, params.hamilton_restarts, rng.next_u64());
                if (! cycle) {
                    result.failure = "Hamilton heuristic failed in iteration " + std::to_string(result.iterations)
                        + " (gap " + std::to_string(gap_of(cur)) + ", t = " + std::to_string(t) + ")";
                    failed = true;
                    break;
                }

                Rational z_before = imbalance(cur);
                int gap_before = gap_of(cur);
                std::vector<int> layer_out(n, 0);
                std::vector<Edge> layer;
                for (std::size_t i = 0 ; i < cycle->size() ; ++i)
                    layer.push_back({ keep[(*cycle)[i]], keep[(*cycle)[(i + 1) % cycle->size()]] });
                for (int j = 0 ; j < t ; ++j) {
                    layer.push_back({ vs[j], ws[j] });
                    layer.push_back({ ws[j], us[j] });
                }
                for (auto & a : layer) {
                    cur.remove_edge(a.u, a.v);
                    ++layer_out[a.u];
                    o.arcs.push_back(a);
                }

                for (VertexId v = 0 ; v < n ; ++v)
                    if (layer_out[v] != 1)
                        throw InvariantViolation("layer does not give out-degree 1 at vertex " + std::to_string(v));
                if (max_degree(layer) > 3)
                    throw InvariantViolation("layer has a vertex of degree above 3");
                Rational z_after = imbalance(cur);
                if (z_after != z_before - Rational(2 * t))
                    throw InvariantViolation("imbalance did not drop by exactly 2t");
                if (t == size_min && gap_of(cur) > gap_before - 1)
                    throw InvariantViolation("degree gap did not drop although t = min(|U|, |V|)");

                ++result.iterations;
                result.t_history.push_back(static_cast<int>(t));
                result.z_history.push_back(z_after);
                result.gap_history.push_back(gap_of(cur));
            }
            if (failed)
                continue;

            auto rest = euler_orientation(cur.to_graph());
            o.arcs.insert(o.arcs.end(), rest.arcs.begin(), rest.arcs.end());
            if (! orientation_is_out_regular(g, o, dbar))
                throw InvariantViolation("orientation is not out-regular");
            result.orientation = std::move(o);
            result.ok = true;
            return result;
        }
        return result;
    }

    namespace
    {
        class Dinic
        {
            private:
                struct Arc
                {
                    int to;
                    int cap;
                };

                std::vector<Arc> _arcs;
                std::vector<std::vector<int>> _out;
                std::vector<int> _level;
                std::vector<std::size_t> _iter;

                auto bfs(int s, int t) -> bool
                {
                    std::fill(_level.begin(), _level.end(), -1);
                    std::deque<int> queue{ s };
                    _level[s] = 0;
                    while (! queue.empty()) {
                        int v = queue.front();
                        queue.pop_front();
                        for (auto id : _out[v])
                            if (_arcs[id].cap > 0 && _level[_arcs[id].to] < 0) {
                                _level[_arcs[id].to] = _level[v] + 1;
                                queue.push_back(_arcs[id].to);
                            }
                    }
                    return _level[t] >= 0;
                }

                auto dfs(int v, int t, int pushed) -> int
                {
                    if (v == t)
                        return pushed;
                    for ( ; _iter[v] < _out[v].size() ; ++_iter[v]) {
                        int id = _out[v][_iter[v]];
                        auto & a = _arcs[id];
                        if (a.cap > 0 && _level[a.to] == _level[v] + 1) {
                            int got = dfs(a.to, t, std::min(pushed, a.cap));
                            if (got > 0) {
                                a.cap -= got;
                                _arcs[id ^ 1].cap += got;
                                return got;
                            }
                        }
                    }
                    return 0;
                }

            public:
                explicit Dinic(int nodes) : _out(nodes), _level(nodes), _iter(nodes) { }

                auto add(int from, int to, int cap) -> int
                {
                    _out[from].push_back(static_cast<int>(_arcs.size()));
                    _arcs.push_back({ to, cap });
                    _out[to].push_back(static_cast<int>(_arcs.size()));
                    _arcs.push_back({ from, 0 });
                    return static_cast<int>(_arcs.size()) - 2;
                }

                auto run(int s, int t) -> std::int64_t
                {
                    std::int64_t flow = 0;
                    while (bfs(s, t)) {
                        std::fill(_iter.begin(), _iter.end(), 0);
                        while (int f = dfs(s, t, std::numeric_limits<int>::max()))
                            flow += f;
                    }
                    return flow;
                }

                auto residual(int id) const -> int { return _arcs[id].cap; }

                auto reachable(int s) const -> std::vector<char>
                {
                    std::vector<char> seen(_out.size(), 0);
                    std::deque<int> queue{ s };
                    seen[s] = 1;
                    while (! queue.empty()) {
                        int v = queue.front();
                        queue.pop_front();
                        for (auto id : _out[v])
                            if (_arcs[id].cap > 0 && ! seen[_arcs[id].to]) {
                                seen[_arcs[id].to] = 1;
                                queue.push_back(_arcs[id].to);
                            }
                    }
                    return seen;
                }
        };
    }

    auto orient_exact_oracle(const SimpleGraph & g, int dbar) -> OracleResult
    {
        const int n = g.order(), m = g.size();
        OracleResult result;
        result.orientation.n = n;
        if (dbar < 0)
            throw PreconditionError("dbar must be non-negative");
        if (std::int64_t(dbar) * n != m) {
            result.reason = "edge count " + std::to_string(m) + " differs from dbar n = " + std::to_string(std::int64_t(dbar) * n);
            if (std::int64_t(dbar) * n < m) {
                result.witness.resize(n);
                for (VertexId v = 0 ; v < n ; ++v)
                    result.witness[v] = v;
            }
            return result;
        }

        const int source = 0, sink = 1, edge0 = 2, vertex0 = 2 + m;
        Dinic flow(2 + m + n);
        std::vector<std::pair<int, int>> ends(m);
        for (int i = 0 ; i < m ; ++i) {
            auto [u, v] = g.edges()[i];
            flow.add(source, edge0 + i, 1);
            ends[i] = { flow.add(edge0 + i, vertex0 + u, 1), flow.add(edge0 + i, vertex0 + v, 1) };
        }
        for (VertexId v = 0 ; v < n ; ++v)
            flow.add(vertex0 + v, sink, dbar);

        if (flow.run(source, sink) == m) {
            result.feasible = true;
            for (int i = 0 ; i < m ; ++i) {
                auto [u, v] = g.edges()[i];
                // the edge's unit went to its tail
                if (flow.residual(ends[i].first) == 0)
                    result.orientation.arcs.push_back({ u, v });
                else
                    result.orientation.arcs.push_back({ v, u });
            }
            if (! orientation_is_out_regular(g, result.orientation, dbar))
                throw InvariantViolation("oracle orientation is not out-regular");
            return result;
        }

        // source side of a minimum cut: its vertex nodes span more than dbar |S| edges
        auto seen = flow.reachable(source);
        for (VertexId v = 0 ; v < n ; ++v)
            if (seen[vertex0 + v])
                result.witness.push_back(v);
        std::int64_t inside = 0;
        std::vector<char> in(n, 0);
        for (auto v : result.witness)
            in[v] = 1;
        for (auto & e : g.edges())
            if (in[e.u] && in[e.v])
                ++inside;
        if (inside <= std::int64_t(dbar) * static_cast<std::int64_t>(result.witness.size()))
            throw InvariantViolation("oracle cut does not certify infeasibility");
        result.reason = "the " + std::to_string(result.witness.size()) + " witness vertices span " + std::to_string(inside)
            + " edges, more than dbar |S|";
        return result;
    }

    auto orient_with_fallback(const SimpleGraph & g, const OrientParams & params) -> CombinedOrientResult
    {
        using clock = std::chrono::steady_clock;
        CombinedOrientResult out;
        const int n = g.order();
        int dbar = n > 0 ? g.size() / n : 0;

        auto t0 = clock::now();
        out.oracle = orient_exact_oracle(g, dbar);
        out.oracle_seconds = std::chrono::duration<double>(clock::now() - t0).count();
        if (! out.oracle.feasible) {
            out.method = "infeasible";
            return out;
        }
        out.feasible = true;

        auto t1 = clock::now();
        out.layered = orient_out_regular(g, params);
        out.layered_seconds = std::chrono::duration<double>(clock::now() - t1).count();
        if (out.layered.ok) {
            out.method = "layers";
            out.orientation = out.layered.orientation;
        }
        else {
            out.method = "oracle";
            out.orientation = out.oracle.orientation;
        }
        return out;
    }
}
