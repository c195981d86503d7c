/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_GRAPH_HH
#define TREEPACK_GRAPH_HH 1

#include <treepack/rational.hh>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace treepack
{
    using VertexId = int;

    /// Sorted, duplicate-free list of vertices.
    using VertexSet = std::vector<VertexId>;

    /// Unordered pair, stored canonically with u < v.
    struct Edge
    {
        VertexId u = 0, v = 0;

        auto operator<=> (const Edge &) const = default;
    };

    inline auto make_edge(VertexId a, VertexId b) -> Edge
    {
        return a < b ? Edge{ a, b } : Edge{ b, a };
    }

    auto normalise(VertexSet s) -> VertexSet;

    /// Undirected simple graph on vertices 0..n-1. Immutable once built: adjacency
    /// is held both as a bit matrix (O(1) queries) and as sorted lists, and every
    /// edge has a canonical index (position in the sorted edge list).
    class SimpleGraph
    {
        private:
            int _n = 0;
            int _words = 0;
            std::vector<Edge> _edges;
            std::vector<std::vector<VertexId>> _adj;
            std::vector<std::vector<int>> _adj_edge;
            std::vector<std::uint64_t> _matrix;

        public:
            SimpleGraph() = default;
            explicit SimpleGraph(int n);

            /// Throws PreconditionError on loops, duplicates or out-of-range ends.
            SimpleGraph(int n, std::vector<Edge> edges);

            static auto complete(int n) -> SimpleGraph;

            auto order() const -> int { return _n; }
            auto size() const -> int { return static_cast<int>(_edges.size()); }
            auto words() const -> int { return _words; }

            auto adjacent(VertexId u, VertexId v) const -> bool
            {
                return (_matrix[static_cast<std::size_t>(u) * _words + (v >> 6)] >> (v & 63)) & 1;
            }

            auto row(VertexId v) const -> std::span<const std::uint64_t>
            {
                return { _matrix.data() + static_cast<std::size_t>(v) * _words, static_cast<std::size_t>(_words) };
            }

            auto degree(VertexId v) const -> int { return static_cast<int>(_adj[v].size()); }
            auto neighbours(VertexId v) const -> const std::vector<VertexId> & { return _adj[v]; }

            /// Canonical indices of the edges at v, parallel to neighbours(v).
            auto incident_edges(VertexId v) const -> const std::vector<int> & { return _adj_edge[v]; }

            auto edges() const -> const std::vector<Edge> & { return _edges; }

            /// Canonical index of uv, or -1 when uv is not an edge.
            auto edge_index(VertexId u, VertexId v) const -> int;

            auto max_degree() const -> int;
            auto min_degree() const -> int;
            auto is_regular() const -> bool;
            auto is_complete() const -> bool { return 2 * static_cast<std::int64_t>(size()) == static_cast<std::int64_t>(_n) * (_n - 1); }
    };

    /// Loopless multigraph; multiplicities are positive.
    class MultiGraph
    {
        private:
            int _n = 0;
            std::map<Edge, int> _multiplicity;
            std::vector<int> _degree;

        public:
            MultiGraph() = default;
            explicit MultiGraph(int n);

            auto add_edge(VertexId u, VertexId v, int count = 1) -> void;

            auto order() const -> int { return _n; }
            auto size() const -> std::int64_t;
            auto multiplicity(VertexId u, VertexId v) const -> int;
            auto degree(VertexId v) const -> int { return _degree[v]; }
            auto edges() const -> const std::map<Edge, int> & { return _multiplicity; }
    };

    /// G[A, B] for disjoint A, B of the host.
    struct BipartitionView
    {
        const SimpleGraph * host = nullptr;
        VertexSet a, b;

        BipartitionView(const SimpleGraph & host, VertexSet a, VertexSet b);

        auto edge_count() const -> std::int64_t;
        auto edges() const -> std::vector<Edge>;
        auto max_degree() const -> int;
    };

    /// e_G(U, V) with the overlap convention (edges inside U ∩ V count twice).
    auto pair_edge_count(const SimpleGraph & g, const VertexSet & u, const VertexSet & v) -> std::int64_t;
    auto pair_edge_count(const MultiGraph & g, const VertexSet & u, const VertexSet & v) -> std::int64_t;

    /// e_G(U, V) / (|U||V|). Throws PreconditionError if U or V is empty.
    auto pair_density(const SimpleGraph & g, const VertexSet & u, const VertexSet & v) -> Rational;
    auto pair_density(const MultiGraph & g, const VertexSet & u, const VertexSet & v) -> Rational;

    auto degree_into(const SimpleGraph & g, VertexId v, const VertexSet & u) -> int;

    /// Common neighbours of a and b inside U. Throws PreconditionError if a == b.
    auto codegree_into(const SimpleGraph & g, VertexId a, VertexId b, const VertexSet & u) -> int;

    /// G - E'. Throws PreconditionError if E' contains a non-edge.
    auto remove_edges(const SimpleGraph & g, const std::vector<Edge> & removed) -> SimpleGraph;

    /// G[U], relabelled so that U[i] becomes vertex i.
    auto induced(const SimpleGraph & g, const VertexSet & u) -> SimpleGraph;

    /// G[U] keeping the original vertex numbering (vertices outside U become isolated).
    auto restrict_to(const SimpleGraph & g, const VertexSet & u) -> SimpleGraph;

    /// Δ of the subgraph spanned by the given edges.
    auto max_degree(std::span<const Edge> edges) -> int;

    auto bfs_distances(const SimpleGraph & g, VertexId source, int max_depth = -1) -> std::vector<int>;
    auto connected_components(const SimpleGraph & g) -> std::vector<VertexSet>;
    auto is_connected(const SimpleGraph & g) -> bool;

    /// FNV-1a over n and the canonical edge list, as 16 hex digits.
    auto canonical_hash(const SimpleGraph & g) -> std::string;

    /// "n m" then m lines "u v"; blank lines and lines starting with '#' are skipped.
    /// Loops, out-of-range indices and (for SimpleGraph) repeated edges are
    /// rejected with the offending line number.
    auto read_graph(std::istream & in) -> SimpleGraph;
    auto read_multigraph(std::istream & in) -> MultiGraph;
    auto write_graph(std::ostream & out, const SimpleGraph & g) -> void;
}

#endif
