/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_FOREST_HH
#define TREEPACK_FOREST_HH 1

#include <treepack/graph.hh>
#include <treepack/rational.hh>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace treepack
{
    /// A forest in which every component has a designated root. Vertices are
    /// 0..n-1; children are kept in ascending index order.
    class RootedForest
    {
        private:
            int _n = 0;
            int _delta_bound = -1;
            std::vector<VertexId> _parent;
            std::vector<VertexId> _roots;
            std::vector<std::vector<VertexId>> _children;
            std::vector<int> _depth;
            std::vector<int> _component;

        public:
            RootedForest() = default;

            /// Orients the forest away from the given roots, one root per
            /// component. Missing roots default to the least vertex of the
            /// component. A negative delta_bound means "no bound".
            static auto from_edges(int n, const std::vector<Edge> & edges, std::vector<VertexId> roots = { },
                    int delta_bound = -1) -> RootedForest;

            static auto from_parents(std::vector<VertexId> parent, int delta_bound = -1) -> RootedForest;

            auto order() const -> int { return _n; }
            auto size() const -> int { return _n - static_cast<int>(_roots.size()); }
            auto component_count() const -> int { return static_cast<int>(_roots.size()); }

            auto parent(VertexId v) const -> VertexId { return _parent[v]; }
            auto parents() const -> const std::vector<VertexId> & { return _parent; }
            auto children(VertexId v) const -> const std::vector<VertexId> & { return _children[v]; }
            auto roots() const -> const std::vector<VertexId> & { return _roots; }
            auto is_root(VertexId v) const -> bool { return _parent[v] < 0; }
            auto depth(VertexId v) const -> int { return _depth[v]; }

            /// Index into roots() of the component containing v.
            auto component_of(VertexId v) const -> int { return _component[v]; }

            auto degree(VertexId v) const -> int
            {
                return static_cast<int>(_children[v].size()) + (_parent[v] >= 0 ? 1 : 0);
            }

            auto max_degree() const -> int;

            /// Δ for the bounded-degree algorithms: the declared bound if any,
            /// otherwise max(2, Δ(F)).
            auto delta_bound() const -> int;
            auto declared_delta_bound() const -> int { return _delta_bound; }

            /// Canonical (sorted) edge list.
            auto edges() const -> std::vector<Edge>;
            auto to_graph() const -> SimpleGraph;

            /// |T(v)| for every v.
            auto subtree_sizes() const -> std::vector<int>;

            /// Roots in order, each followed by its component in BFS order.
            auto bfs_order() const -> std::vector<VertexId>;

            auto leaf_count() const -> int;
    };

    /// A sub-forest relabelled to 0..k-1, with the original ids of its vertices.
    struct ExtractedForest
    {
        RootedForest forest;
        std::vector<VertexId> original;
    };

    /// T(v): v and everything below it, rooted at v.
    auto subtree_below(const RootedForest & t, VertexId v) -> ExtractedForest;

    /// T(v, depth): vertices below v at distance at most `depth` from v.
    auto subtree_below_depth(const RootedForest & t, VertexId v, int depth) -> ExtractedForest;

    /// Vertices of T(v), ascending.
    auto subtree_vertices(const RootedForest & t, VertexId v) -> VertexSet;

    struct TreeDecompParams
    {
        int t = 1;
        int delta = 2;
    };

    struct SubtreeHandle
    {
        VertexId y = -1;
        int size = 0;
        int distance_from_root = 0;

        /// Vertices of the part (for extract_subtree, all of T(y)).
        VertexSet vertices;
    };

    /// Parts in extraction order; the last part contains the root.
    auto decompose_rooted(const RootedForest & t, const TreeDecompParams & params) -> std::vector<SubtreeHandle>;

    /// Descends from x along largest child subtrees until |T(y)| <= alpha Δ n.
    auto extract_subtree(const RootedForest & t, VertexId x, const Rational & alpha, int k) -> SubtreeHandle;

    struct BalancedParams
    {
        Rational beta{ 1, 10 };
        Rational alpha{ 1, 10 };
        int n = 0;
        int c = 1;
        int delta = 2;
    };

    struct BalancedChoice
    {
        bool large = false;
        std::vector<SubtreeHandle> parts;
        int edges = 0;
    };

    struct BalancedSelection
    {
        std::vector<BalancedChoice> choices;

        /// Forests with index < crossing use the large variant.
        int crossing = 0;
        std::int64_t total_edges = 0;
        Rational target;
    };

    auto select_balanced_subforests(const std::vector<RootedForest> & family, const BalancedParams & params) -> BalancedSelection;

    auto gen_random_tree(int n, int delta, std::uint64_t seed) -> RootedForest;

    /// Trees T_1..T_n with |T_i| = i; tree i uses the seed mix_seed(seed, i).
    auto gen_gl_sequence(int n, int delta, std::uint64_t seed) -> std::vector<RootedForest>;

    auto count_degree2_floor(const RootedForest & t, int leaf_bound) -> int;

    /// {"trees":[{"id":int,"n":int,"edges":[[u,v],...],"roots":[int,...]}]}
    /// with an optional "delta" field per tree. Ids must be 0..k-1 in any
    /// order; the result is indexed by id. Throws ParseError.
    auto read_forests(std::istream & in) -> std::vector<RootedForest>;
    auto write_forests(std::ostream & out, const std::vector<RootedForest> & forests) -> void;

    /// Trees on `order` vertices up to isomorphism, one labelled representative each.
    auto enumerate_unlabelled_trees(int order) -> std::vector<RootedForest>;
}

#endif
