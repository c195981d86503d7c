/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_COVERING_HH
#define TREEPACK_COVERING_HH 1

#include <treepack/cycles.hh>
#include <treepack/embed.hh>
#include <treepack/forest.hh>
#include <treepack/graph.hh>

#include <cstdint>
#include <string>
#include <vector>

namespace treepack
{
    enum class CoverKind { exceptional_vertex, matching, parity_edge, seagull_flock };

    auto to_string(CoverKind kind) -> std::string;

    /// What one covering step is asked to cover. Only the fields relevant to
    /// the kind are used.
    struct CoverTarget
    {
        CoverKind kind = CoverKind::matching;
        std::vector<Edge> edges;
        Flock flock;
        VertexId vertex = -1;
        VertexSet safe_region;
    };

    /// A tree set aside for covering, rooted at tree.roots()[0]. A root image
    /// of -1 leaves the root free.
    struct ReservedTree
    {
        RootedForest tree;
        VertexId root_image = -1;
        VertexSet forbidden;
    };

    /// A forest with one optional prescribed image per root.
    struct ReservedForest
    {
        RootedForest forest;
        std::vector<VertexId> root_images;
        VertexSet forbidden;
    };

    struct CoverOptions
    {
        std::uint64_t seed = 0;

        /// Resamplings of the star leaves and of the completion order.
        int attempts = 12;

        /// Search nodes for each completion beyond the greedy descent.
        std::int64_t backtrack_budget = 20000;
    };

    struct CoverResult
    {
        bool ok = false;
        std::string failure;
        PartialEmbedding embedding;
    };

    struct PairCoverResult
    {
        bool ok = false;
        std::string failure;
        PartialEmbedding first, second;
    };

    /// Host edges used by a total embedding of f.
    auto image_edges(const RootedForest & f, const PartialEmbedding & phi) -> std::vector<Edge>;

    /// Removes the image of phi from the residual host.
    auto apply_embedding(HostView & host, const RootedForest & f, const PartialEmbedding & phi) -> void;

    /// Edges x_j z_j of a 5-independent matching far from the root go onto
    /// the matching edges u_j v_j; the other neighbours of x_j and z_j go onto
    /// stars at u_j and v_j with leaves in the safe region, and the rest of
    /// the tree is embedded inside the safe region.
    auto cover_matching_with_tree(const ReservedTree & t, const HostView & avail, const VertexSet & safe,
            const std::vector<Edge> & matching, const CoverOptions & options = { }) -> CoverResult;

    /// One tree: 5-independent degree-2 vertices go onto the centres and
    /// their neighbours onto the wings.
    auto cover_seagulls_with_tree(const ReservedTree & t, const HostView & avail, const VertexSet & safe,
            const Flock & flock, const CoverOptions & options = { }) -> CoverResult;

    /// Two trees: leaf neighbours of the first go onto the first wings, leaf
    /// neighbours of the second onto the second wings, and one leaf of each
    /// onto the centre. The two images are edge-disjoint.
    auto cover_seagulls_with_pair(const ReservedTree & t1, const ReservedTree & t2, const HostView & avail,
            const VertexSet & safe, const Flock & flock, const CoverOptions & options = { }) -> PairCoverResult;

    /// A leaf at distance at least 4 from the root goes onto v and its
    /// neighbour onto u; the rest of the tree stays in the safe region.
    /// The target edge is (u, v) with u in the safe region.
    auto fix_parity_with_tree(const ReservedTree & t, const HostView & avail, const VertexSet & safe,
            Edge target, const CoverOptions & options = { }) -> CoverResult;

    struct ExceptionalResult
    {
        bool ok = false;
        std::string failure;

        /// One entry per forest; empty maps for skipped forests.
        std::vector<PartialEmbedding> embeddings;
        std::vector<bool> skipped;

        /// Edges at v0 consumed by each embedding.
        std::vector<int> consumed;
        int residual_degree = 0;
    };

    /// Embeds the forests one after another into a copy of avail. While v0
    /// has more than `threshold` residual edges into the safe region, a
    /// non-leaf forest vertex is sent to v0 and its neighbours to a star at
    /// v0; every other vertex stays in the safe region. Forests whose
    /// forbidden set contains v0 are skipped.
    auto cover_exceptional_vertex(const std::vector<ReservedForest> & forests, const HostView & avail,
            const VertexSet & safe, VertexId v0, int threshold, const CoverOptions & options = { }) -> ExceptionalResult;

    /// One JSON object describing a covering step, for debug dumps.
    auto cover_step_json(const CoverTarget & target, bool ok, const std::string & failure) -> std::string;
}

#endif
