/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_WALK_HH
#define TREEPACK_WALK_HH 1

#include <treepack/embed.hh>
#include <treepack/forest.hh>
#include <treepack/graph.hh>

#include <cstdint>
#include <optional>
#include <vector>

namespace treepack
{
    /// Empirical Pr[X_t = i] for a symmetric ±1 walk on Z_ell started at 0.
    /// Row r of the result belongs to steps[r].
    auto simulate_walk(int ell, const std::vector<int> & steps, std::int64_t trials, std::uint64_t seed)
        -> std::vector<std::vector<double>>;

    /// C(ell, k): clusters V_i = { i k, ..., i k + k - 1 }, with V_i joined to
    /// V_{i +- 1}. Either implicit (complete) or backed by an explicit graph.
    class CycleBlowup
    {
        private:
            int _ell = 3, _k = 0;
            const SimpleGraph * _graph = nullptr;

        public:
            CycleBlowup(int ell, int k);

            /// Uses g as the host; g must have order ell * k.
            CycleBlowup(int ell, int k, const SimpleGraph & g);

            auto ell() const -> int { return _ell; }
            auto k() const -> int { return _k; }
            auto order() const -> int { return _ell * _k; }
            auto cluster_of(VertexId v) const -> int { return v / _k; }
            auto cluster(int i) const -> VertexSet;
            auto adjacent(VertexId u, VertexId v) const -> bool;

            /// True iff every edge joins consecutive clusters and every such pair is present.
            auto is_complete() const -> bool;

            /// The explicit graph (materialises the complete blow-up when implicit).
            auto to_graph() const -> SimpleGraph;
    };

    struct WalkEmbedParams
    {
        int ell = 5;
        std::int64_t m = 0;
        std::uint64_t seed = 0;

        /// Chunk granularity is ceil(n^(1 - delta)).
        double delta = 0.4;
        int retry_limit = 20;
    };

    struct ClusterAssignment
    {
        int ell = 0;
        std::vector<int> cluster_of;
        std::vector<std::int64_t> loads;

        /// pair_loads[i] counts tree edges between clusters i and i + 1 (mod ell).
        std::vector<std::int64_t> pair_loads;

        auto max_load() const -> std::int64_t;
        auto max_pair_load() const -> std::int64_t;
    };

    auto walk_assign_tree(const RootedForest & t, const WalkEmbedParams & params) -> ClusterAssignment;

    /// Recomputes loads from cluster_of and checks every tree edge joins
    /// consecutive clusters.
    auto assignment_is_valid(const RootedForest & t, const ClusterAssignment & a) -> bool;

    struct WalkEmbedResult
    {
        bool ok = false;
        int attempts = 0;
        std::uint64_t seed_used = 0;
        ClusterAssignment assignment;
        std::optional<PartialEmbedding> embedding;
        std::int64_t max_load = 0, max_pair_load = 0;
    };

    /// Assigns with up to retry_limit seeds (mix_seed(seed, attempt) after the
    /// first), then injects cluster by cluster into the blow-up.
    auto walk_embed_tree(const RootedForest & t, const CycleBlowup & blowup, const WalkEmbedParams & params) -> WalkEmbedResult;
}

#endif
