/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_EMBED_HH
#define TREEPACK_EMBED_HH 1

#include <treepack/forest.hh>
#include <treepack/graph.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treepack
{
    /// Partial map forest vertex -> host vertex; -1 marks "unmapped".
    struct PartialEmbedding
    {
        std::vector<VertexId> map;

        PartialEmbedding() = default;
        explicit PartialEmbedding(int n) : map(n, -1) { }

        auto defined(VertexId x) const -> bool { return map[x] >= 0; }
        auto domain() const -> VertexSet;
        auto is_total() const -> bool;
    };

    /// Injective on its domain, and every forest edge with both ends mapped
    /// lands on a host edge.
    auto embedding_is_valid(const RootedForest & f, const SimpleGraph & g, const PartialEmbedding & phi) -> bool;

    /// Mutable adjacency over a fixed vertex set; used as the residual host
    /// while trees are packed one after another.
    class HostView
    {
        private:
            int _n = 0, _words = 0;
            std::vector<std::uint64_t> _bits;
            std::vector<int> _degree;
            std::int64_t _size = 0;

        public:
            HostView() = default;
            explicit HostView(int n);
            explicit HostView(const SimpleGraph & g);

            auto order() const -> int { return _n; }
            auto words() const -> int { return _words; }
            auto size() const -> std::int64_t { return _size; }
            auto degree(VertexId v) const -> int { return _degree[v]; }

            auto adjacent(VertexId u, VertexId v) const -> bool
            {
                return (_bits[static_cast<std::size_t>(u) * _words + (v >> 6)] >> (v & 63)) & 1;
            }

            auto row(VertexId v) const -> const std::uint64_t *
            {
                return _bits.data() + static_cast<std::size_t>(v) * _words;
            }

            auto add_edge(VertexId u, VertexId v) -> void;
            auto remove_edge(VertexId u, VertexId v) -> void;
            auto neighbours(VertexId v) const -> VertexSet;
            auto codegree(VertexId u, VertexId v) const -> int;
            auto edges() const -> std::vector<Edge>;
            auto to_graph() const -> SimpleGraph;
    };

    enum class CandidatePolicy { lowest_index, max_residual, random };

    struct GreedyEmbedOptions
    {
        CandidatePolicy policy = CandidatePolicy::lowest_index;
        std::uint64_t seed = 0;

        /// Exact up-front test of d_G(u, v) >= |F| for all pairs.
        bool check_codegree = true;

        /// Host vertices available to unpinned forest vertices (null: all).
        const std::vector<char> * allowed = nullptr;

        /// Search nodes allowed beyond the first greedy descent (0: pure greedy).
        std::int64_t backtrack_budget = 0;
    };

    /// Extends phi_prime to all of F following an ordering in which every
    /// vertex has at most one earlier neighbour. Throws PreconditionError if
    /// dom(phi_prime) is not 3-independent or the codegree test fails; throws
    /// InvariantViolation if the greedy gets stuck although the test passed.
    auto embed_forest_greedy(const RootedForest & f, const SimpleGraph & g, const VertexSet & pinned,
            const PartialEmbedding & phi_prime) -> PartialEmbedding;

    /// Best-effort variant over a residual host: nullopt when no extension is
    /// found within the budget. Pinned vertices need not be 3-independent, but
    /// edges between pinned vertices must already be present.
    auto try_embed_forest(const RootedForest & f, const HostView & host, const PartialEmbedding & phi_prime,
            const GreedyEmbedOptions & options) -> std::optional<PartialEmbedding>;

    struct SparseEdgeRequest
    {
        VertexSet a;
        std::vector<VertexId> sources;
        std::vector<VertexSet> forbidden;

        /// Conflict graph on request indices 0..m-1.
        SimpleGraph conflicts;
        int s = 1;
    };

    /// Sequential greedy choice of distinct edges u_i v_i with v_i in A \ W_i,
    /// at most s uses of every target and v_i avoiding {u_j, v_j} for conflicting j.
    /// Throws PreconditionError if the degree hypothesis fails for some i.
    auto sparse_edge_embedding(const SimpleGraph & g, const SparseEdgeRequest & request) -> std::vector<Edge>;

    /// Same selection over a residual host without the hypothesis test;
    /// nullopt if some request has no admissible target.
    auto try_sparse_edge_embedding(const HostView & host, const SparseEdgeRequest & request) -> std::optional<std::vector<Edge>>;

    /// Full re-check of the constraints above; edges are (u_i, v_i) in request order.
    auto sparse_edges_valid(const HostView & host, const SparseEdgeRequest & request, const std::vector<Edge> & chosen) -> bool;
}

#endif
