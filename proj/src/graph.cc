/* vim: set sw=4 sts=4 et : */

#include <treepack/graph.hh>
#include <treepack/errors.hh>

#include <algorithm>
#include <cstdio>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

namespace treepack
{
    namespace
    {
        auto check_vertex(int n, VertexId v, const char * what) -> void
        {
            if (v < 0 || v >= n)
                throw PreconditionError(std::string(what) + ": vertex " + std::to_string(v) + " out of range for order " + std::to_string(n));
        }

        auto membership(int n, const VertexSet & s) -> std::vector<char>
        {
            std::vector<char> in(n, 0);
            for (auto v : s) {
                check_vertex(n, v, "vertex set");
                in[v] = 1;
            }
            return in;
        }

        // edges of g with one end in `from` and the other in `to`; the two
        // sets are assumed disjoint
        auto cross_count(const SimpleGraph & g, const std::vector<char> & from, const std::vector<char> & to) -> std::int64_t
        {
            std::int64_t count = 0;
            for (auto & e : g.edges())
                if ((from[e.u] && to[e.v]) || (from[e.v] && to[e.u]))
                    ++count;
            return count;
        }
    }

    auto normalise(VertexSet s) -> VertexSet
    {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    SimpleGraph::SimpleGraph(int n) :
        _n(n),
        _words((n + 63) / 64),
        _adj(n),
        _adj_edge(n),
        _matrix(static_cast<std::size_t>(n) * ((n + 63) / 64), 0)
    {
        if (n < 0)
            throw PreconditionError("graph order must be non-negative");
    }

    SimpleGraph::SimpleGraph(int n, std::vector<Edge> edges) :
        SimpleGraph(n)
    {
        for (auto & e : edges) {
            check_vertex(n, e.u, "edge");
            check_vertex(n, e.v, "edge");
            if (e.u == e.v)
                throw PreconditionError("loop at vertex " + std::to_string(e.u));
            e = make_edge(e.u, e.v);
        }
        std::sort(edges.begin(), edges.end());
        if (auto dup = std::adjacent_find(edges.begin(), edges.end()) ; dup != edges.end())
            throw PreconditionError("parallel edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));

        _edges = std::move(edges);
        for (int i = 0 ; i < static_cast<int>(_edges.size()) ; ++i) {
            auto [u, v] = _edges[i];
            _matrix[static_cast<std::size_t>(u) * _words + (v >> 6)] |= std::uint64_t(1) << (v & 63);
            _matrix[static_cast<std::size_t>(v) * _words + (u >> 6)] |= std::uint64_t(1) << (u & 63);
            _adj[u].push_back(v);
            _adj[v].push_back(u);
            _adj_edge[u].push_back(i);
            _adj_edge[v].push_back(i);
        }

        // edges are sorted by (u, v), so each _adj[u] is sorted among its
        // larger neighbours but not overall; sort the parallel arrays together
        for (int v = 0 ; v < n ; ++v) {
            std::vector<std::pair<VertexId, int>> pairs;
            pairs.reserve(_adj[v].size());
            for (std::size_t i = 0 ; i < _adj[v].size() ; ++i)
                pairs.emplace_back(_adj[v][i], _adj_edge[v][i]);
            std::sort(pairs.begin(), pairs.end());
            for (std::size_t i = 0 ; i < pairs.size() ; ++i) {
                _adj[v][i] = pairs[i].first;
                _adj_edge[v][i] = pairs[i].second;
            }
        }
    }

    auto SimpleGraph::complete(int n) -> SimpleGraph
    {
        std::vector<Edge> edges;
        edges.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                edges.push_back({ u, v });
        return SimpleGraph(n, std::move(edges));
    }

    auto SimpleGraph::edge_index(VertexId u, VertexId v) const -> int
    {
        if (u < 0 || v < 0 || u >= _n || v >= _n || u == v || ! adjacent(u, v))
            return -1;
        auto & nbrs = _adj[u];
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
        return _adj_edge[u][it - nbrs.begin()];
    }

    auto SimpleGraph::max_degree() const -> int
    {
        int best = 0;
        for (auto & a : _adj)
            best = std::max(best, static_cast<int>(a.size()));
        return best;
    }

    auto SimpleGraph::min_degree() const -> int
    {
        if (_n == 0)
            return 0;
        int best = _n;
        for (auto & a : _adj)
            best = std::min(best, static_cast<int>(a.size()));
        return best;
    }

    auto SimpleGraph::is_regular() const -> bool
    {
        return max_degree() == min_degree();
    }

    MultiGraph::MultiGraph(int n) :
        _n(n),
        _degree(n, 0)
    {
    }

    auto MultiGraph::add_edge(VertexId u, VertexId v, int count) -> void
    {
        check_vertex(_n, u, "edge");
        check_vertex(_n, v, "edge");
        if (u == v)
            throw PreconditionError("loop at vertex " + std::to_string(u));
        if (count < 1)
            throw PreconditionError("multiplicity must be positive");
        _multiplicity[make_edge(u, v)] += count;
        _degree[u] += count;
        _degree[v] += count;
    }

    auto MultiGraph::size() const -> std::int64_t
    {
        std::int64_t total = 0;
        for (auto & [e, m] : _multiplicity)
            total += m;
        return total;
    }

    auto MultiGraph::multiplicity(VertexId u, VertexId v) const -> int
    {
        auto it = _multiplicity.find(make_edge(u, v));
        return it == _multiplicity.end() ? 0 : it->second;
    }

    BipartitionView::BipartitionView(const SimpleGraph & h, VertexSet sa, VertexSet sb) :
        host(&h),
        a(normalise(std::move(sa))),
        b(normalise(std::move(sb)))
    {
        auto in_a = membership(h.order(), a);
        for (auto v : b) {
            check_vertex(h.order(), v, "bipartition");
            if (in_a[v])
                throw PreconditionError("bipartition sides overlap at vertex " + std::to_string(v));
        }
    }

    auto BipartitionView::edge_count() const -> std::int64_t
    {
        return cross_count(*host, membership(host->order(), a), membership(host->order(), b));
    }

    auto BipartitionView::edges() const -> std::vector<Edge>
    {
        auto in_a = membership(host->order(), a), in_b = membership(host->order(), b);
        std::vector<Edge> result;
        for (auto & e : host->edges())
            if ((in_a[e.u] && in_b[e.v]) || (in_a[e.v] && in_b[e.u]))
                result.push_back(e);
        return result;
    }

    auto BipartitionView::max_degree() const -> int
    {
        auto es = edges();
        return treepack::max_degree(es);
    }

    auto pair_edge_count(const SimpleGraph & g, const VertexSet & u, const VertexSet & v) -> std::int64_t
    {
        int n = g.order();
        auto in_u = membership(n, u), in_v = membership(n, v);
        std::vector<char> u_minus_v(n), v_minus_u(n), both(n);
        for (int x = 0 ; x < n ; ++x) {
            u_minus_v[x] = in_u[x] && ! in_v[x];
            v_minus_u[x] = in_v[x] && ! in_u[x];
            both[x] = in_u[x] && in_v[x];
        }

        std::int64_t inside_both = 0;
        for (auto & e : g.edges())
            if (both[e.u] && both[e.v])
                ++inside_both;

        // e(U\V, V) + e(V\U, U∩V) + 2 e(G[U∩V]); U\V is disjoint from V, and
        // e(U\V, V) splits into the parts landing in V\U and in U∩V
        return cross_count(g, u_minus_v, v_minus_u) + cross_count(g, u_minus_v, both)
            + cross_count(g, v_minus_u, both) + 2 * inside_both;
    }

    auto pair_edge_count(const MultiGraph & g, const VertexSet & u, const VertexSet & v) -> std::int64_t
    {
        int n = g.order();
        auto in_u = membership(n, u), in_v = membership(n, v);
        std::int64_t total = 0;
        for (auto & [e, m] : g.edges()) {
            bool uu = in_u[e.u], uv = in_v[e.u], vu = in_u[e.v], vv = in_v[e.v];
            bool a_both = uu && uv, b_both = vu && vv;
            bool a_um = uu && ! uv, b_um = vu && ! vv;
            bool a_vm = uv && ! uu, b_vm = vv && ! vu;
            if (a_both && b_both)
                total += 2 * m;
            else if ((a_um && (b_vm || b_both)) || (b_um && (a_vm || a_both)))
                total += m;
            else if ((a_vm && b_both) || (b_vm && a_both))
                total += m;
        }
        return total;
    }

    auto pair_density(const SimpleGraph & g, const VertexSet & u, const VertexSet & v) -> Rational
    {
        if (u.empty() || v.empty())
            throw PreconditionError("pair_density needs nonempty vertex sets");
        return Rational(pair_edge_count(g, u, v), static_cast<std::int64_t>(u.size()) * static_cast<std::int64_t>(v.size()));
    }

    auto pair_density(const MultiGraph & g, const VertexSet & u, const VertexSet & v) -> Rational
    {
        if (u.empty() || v.empty())
            throw PreconditionError("pair_density needs nonempty vertex sets");
        return Rational(pair_edge_count(g, u, v), static_cast<std::int64_t>(u.size()) * static_cast<std::int64_t>(v.size()));
    }

    auto degree_into(const SimpleGraph & g, VertexId v, const VertexSet & u) -> int
    {
        check_vertex(g.order(), v, "degree_into");
        int count = 0;
        for (auto w : u)
            if (w != v && g.adjacent(v, w))
                ++count;
        return count;
    }

    auto codegree_into(const SimpleGraph & g, VertexId a, VertexId b, const VertexSet & u) -> int
    {
        check_vertex(g.order(), a, "codegree_into");
        check_vertex(g.order(), b, "codegree_into");
        if (a == b)
            throw PreconditionError("codegree_into needs two distinct vertices");
        int count = 0;
        for (auto w : u)
            if (w != a && w != b && g.adjacent(a, w) && g.adjacent(b, w))
                ++count;
        return count;
    }

    auto remove_edges(const SimpleGraph & g, const std::vector<Edge> & removed) -> SimpleGraph
    {
        std::vector<char> drop(g.size(), 0);
        for (auto & e : removed) {
            int idx = g.edge_index(e.u, e.v);
            if (idx < 0)
                throw PreconditionError("remove_edges: " + std::to_string(e.u) + " " + std::to_string(e.v) + " is not an edge");
            drop[idx] = 1;
        }
        std::vector<Edge> kept;
        kept.reserve(g.size());
        for (int i = 0 ; i < g.size() ; ++i)
            if (! drop[i])
                kept.push_back(g.edges()[i]);
        return SimpleGraph(g.order(), std::move(kept));
    }

    auto induced(const SimpleGraph & g, const VertexSet & u) -> SimpleGraph
    {
        VertexSet s = normalise(u);
        std::vector<int> index(g.order(), -1);
        for (int i = 0 ; i < static_cast<int>(s.size()) ; ++i) {
            check_vertex(g.order(), s[i], "induced");
            index[s[i]] = i;
        }
        std::vector<Edge> edges;
        for (auto & e : g.edges())
            if (index[e.u] >= 0 && index[e.v] >= 0)
                edges.push_back(make_edge(index[e.u], index[e.v]));
        return SimpleGraph(static_cast<int>(s.size()), std::move(edges));
    }

    auto restrict_to(const SimpleGraph & g, const VertexSet & u) -> SimpleGraph
    {
        auto in = membership(g.order(), u);
        std::vector<Edge> edges;
        for (auto & e : g.edges())
            if (in[e.u] && in[e.v])
                edges.push_back(e);
        return SimpleGraph(g.order(), std::move(edges));
    }

    auto max_degree(std::span<const Edge> edges) -> int
    {
        std::map<VertexId, int> deg;
        int best = 0;
        for (auto & e : edges) {
            best = std::max(best, ++deg[e.u]);
            best = std::max(best, ++deg[e.v]);
        }
        return best;
    }

    auto bfs_distances(const SimpleGraph & g, VertexId source, int max_depth) -> std::vector<int>
    {
        std::vector<int> dist(g.order(), -1);
        std::deque<VertexId> queue{ source };
        dist[source] = 0;
        while (! queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            if (max_depth >= 0 && dist[v] >= max_depth)
                continue;
            for (auto w : g.neighbours(v))
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        return dist;
    }

    auto connected_components(const SimpleGraph & g) -> std::vector<VertexSet>
    {
        std::vector<VertexSet> result;
        std::vector<char> seen(g.order(), 0);
        for (int s = 0 ; s < g.order() ; ++s) {
            if (seen[s])
                continue;
            VertexSet comp;
            std::vector<VertexId> stack{ s };
            seen[s] = 1;
            while (! stack.empty()) {
                VertexId v = stack.back();
                stack.pop_back();
                comp.push_back(v);
                for (auto w : g.neighbours(v))
                    if (! seen[w]) {
                        seen[w] = 1;
                        stack.push_back(w);
                    }
            }
            std::sort(comp.begin(), comp.end());
            result.push_back(std::move(comp));
        }
        return result;
    }

    auto is_connected(const SimpleGraph & g) -> bool
    {
        return g.order() <= 1 || connected_components(g).size() == 1;
    }

    auto canonical_hash(const SimpleGraph & g) -> std::string
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto feed = [&] (std::uint32_t x) {
            for (int i = 0 ; i < 4 ; ++i) {
                h ^= (x >> (8 * i)) & 0xff;
                h *= 0x100000001b3ULL;
            }
        };
        feed(static_cast<std::uint32_t>(g.order()));
        for (auto & e : g.edges()) {
            feed(static_cast<std::uint32_t>(e.u));
            feed(static_cast<std::uint32_t>(e.v));
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    namespace
    {
        struct RawGraph
        {
            int n = 0;
            std::vector<std::pair<Edge, int>> edges;    // edge, line number
        };

        auto next_content_line(std::istream & in, std::string & line, int & line_no) -> bool
        {
            while (std::getline(in, line)) {
                ++line_no;
                auto first = line.find_first_not_of(" \t\r");
                if (first == std::string::npos || line[first] == '#')
                    continue;
                return true;
            }
            return false;
        }

        auto read_raw(std::istream & in) -> RawGraph
        {
            RawGraph raw;
            std::string line;
            int line_no = 0;
            if (! next_content_line(in, line, line_no))
                throw ParseError("empty graph file: expected header \"n m\"", line_no + 1);

            long long n = -1, m = -1;
            {
                std::istringstream ss(line);
                std::string extra;
                if (! (ss >> n >> m) || (ss >> extra))
                    throw ParseError("expected header \"n m\"", line_no);
                if (n < 0 || m < 0 || n > (1 << 24))
                    throw ParseError("header values out of range", line_no);
            }
            raw.n = static_cast<int>(n);

            for (long long i = 0 ; i < m ; ++i) {
                if (! next_content_line(in, line, line_no))
                    throw ParseError("expected " + std::to_string(m) + " edge lines, found " + std::to_string(i), line_no + 1);
                std::istringstream ss(line);
                long long u, v;
                std::string extra;
                if (! (ss >> u >> v) || (ss >> extra))
                    throw ParseError("expected edge line \"u v\"", line_no);
                if (u < 0 || v < 0 || u >= n || v >= n)
                    throw ParseError("vertex index out of range [0, " + std::to_string(n) + ")", line_no);
                if (u == v)
                    throw ParseError("loop at vertex " + std::to_string(u), line_no);
                raw.edges.push_back({ make_edge(static_cast<int>(u), static_cast<int>(v)), line_no });
            }

            if (next_content_line(in, line, line_no))
                throw ParseError("trailing content after " + std::to_string(m) + " edges", line_no);

            return raw;
        }
    }

    auto read_graph(std::istream & in) -> SimpleGraph
    {
        auto raw = read_raw(in);
        std::map<Edge, int> first_seen;
        std::vector<Edge> edges;
        for (auto & [e, line_no] : raw.edges) {
            auto [it, fresh] = first_seen.emplace(e, line_no);
            if (! fresh)
                throw ParseError("repeated edge " + std::to_string(e.u) + " " + std::to_string(e.v)
                        + " (first on line " + std::to_string(it->second) + ")", line_no);
            edges.push_back(e);
        }
        return SimpleGraph(raw.n, std::move(edges));
    }

    auto read_multigraph(std::istream & in) -> MultiGraph
    {
        auto raw = read_raw(in);
        MultiGraph g(raw.n);
        for (auto & [e, line_no] : raw.edges)
            g.add_edge(e.u, e.v);
        return g;
    }

    auto write_graph(std::ostream & out, const SimpleGraph & g) -> void
    {
        out << g.order() << ' ' << g.size() << '\n';
        for (auto & e : g.edges())
            out << e.u << ' ' << e.v << '\n';
    }
}
