/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_PACKER_HH
#define TREEPACK_PACKER_HH 1

#include <treepack/embed.hh>
#include <treepack/forest.hh>
#include <treepack/graph.hh>
#include <treepack/orientation.hh>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace treepack
{
    enum class PackMode { pack, decompose };

    auto to_string(PackMode mode) -> std::string;
    auto parse_pack_mode(const std::string & s) -> PackMode;

    struct TreeAssignment
    {
        int tree_id = 0;
        std::vector<VertexId> map;
    };

    struct PackingCertificate
    {
        std::string graph_hash;
        PackMode mode = PackMode::decompose;
        std::vector<TreeAssignment> assignments;
    };

    struct VerifyResult
    {
        bool ok = false;
        std::string violation;
        int tree_id = -1;
        std::optional<Edge> edge;
        VertexId vertex = -1;
    };

    /// Checks the graph hash, that every tree is assigned exactly once, that
    /// each map is an injective homomorphism into the host, that the images
    /// are edge-disjoint and, in decompose mode, that they cover every edge.
    /// Reports the first violation found.
    auto verify_certificate(const SimpleGraph & g, const std::vector<RootedForest> & trees,
            const PackingCertificate & cert) -> VerifyResult;

    auto certificate_to_json(const PackingCertificate & cert) -> std::string;

    /// Throws ParseError on malformed input.
    auto certificate_from_json(const std::string & text) -> PackingCertificate;

    enum class ExactStatus { found, infeasible, exhausted };

    auto to_string(ExactStatus status) -> std::string;

    struct ExactOptions
    {
        /// Node expansions (one per attempted vertex placement).
        std::int64_t budget = 50'000'000;
        bool symmetry = true;
    };

    struct ExactResult
    {
        ExactStatus status = ExactStatus::exhausted;
        PackingCertificate certificate;
        std::int64_t nodes = 0;
        std::string reason;
    };

    auto pack_exact(const SimpleGraph & g, const std::vector<RootedForest> & trees, PackMode mode,
            const ExactOptions & options = { }) -> ExactResult;

    /// The backtracking engine behind pack_exact, over a residual host.
    struct SearchRequest
    {
        HostView host;
        std::vector<RootedForest> trees;

        /// Per tree: prescribed images (empty vector for none).
        std::vector<PartialEmbedding> pins;

        /// Per tree: host vertices usable by unpinned vertices (empty for all).
        std::vector<std::vector<char>> allowed;

        /// Every free edge must be used, except edges inside `exempt`.
        bool cover_all = true;
        VertexSet exempt;

        /// Final test on the residual host once every tree is placed.
        std::function<bool(const HostView &)> accept;

        std::int64_t budget = 1'000'000;

        /// Fix the first tree to the identity and order identical trees by
        /// root image. Only sound on a complete host without pins.
        bool symmetry = false;
    };

    struct SearchOutcome
    {
        ExactStatus status = ExactStatus::exhausted;

        /// One map per tree, in request order.
        std::vector<PartialEmbedding> maps;
        std::int64_t nodes = 0;
        HostView residual;
    };

    auto search_packing(const SearchRequest & request) -> SearchOutcome;

    struct Vortex
    {
        int n = 0;
        double gamma = 0, epsilon = 0;

        /// levels[0] = all vertices, |levels[i]| = floor(gamma^i n).
        std::vector<VertexSet> levels;

        /// reservoirs[i] inside levels[i] \ levels[i + 1].
        std::vector<VertexSet> reservoirs;
        int attempts = 0;
        double worst_deviation = 0;

        auto depth() const -> int { return static_cast<int>(levels.size()) - 1; }
        auto last() const -> const VertexSet & { return levels.back(); }
    };

    struct VortexCheck
    {
        bool ok = false;
        std::string failure;

        /// Largest relative deviation from the expected degree over all windows.
        double worst_deviation = 0;
    };

    /// Level sizes and nesting, reservoir sizes, and the degree windows
    /// into each level and reservoir, widened by `slack`.
    auto check_vortex(const SimpleGraph & g, const Vortex & v, double slack) -> VortexCheck;

    /// Λ is the least i with floor(gamma^i n) <= n^(1/3). Throws
    /// PreconditionError for gamma outside (0, 1), n < 8 or an empty A_1,
    /// and InvariantViolation with the worst deviation if no sample passes.
    auto build_vortex(const SimpleGraph & g, double gamma, double epsilon, double slack, std::uint64_t seed,
            int max_attempts = 200) -> Vortex;

    struct AbsorberTree
    {
        int tree_id = 0;
        VertexId leaf = -1;
        VertexId anchor = -1;
        VertexId anchor_image = -1;
        PartialEmbedding embedding;
    };

    struct AbsorberState
    {
        VertexSet a_last;
        int t_last = 0;
        std::vector<AbsorberTree> trees;

        /// Anchors per vertex of A_last.
        auto multiplicities() const -> std::vector<int>;
        auto audit() const -> bool;
    };

    struct AbsorberResult
    {
        bool ok = false;
        std::string failure;
        AbsorberState state;
        HostView residual;
    };

    /// A deepest leaf and its neighbour, or nullopt for a single vertex.
    auto select_absorber_leaf(const RootedForest & t) -> std::optional<std::pair<VertexId, VertexId>>;

    /// Picks t_last |A_last| trees from `candidates`, removes a leaf from each
    /// and embeds the rest into `host` with the leaf's neighbour on its
    /// anchor (round robin over A_last) and every other vertex outside A_last.
    auto prepare_absorber(const HostView & host, const std::vector<RootedForest> & trees, const std::vector<int> & candidates,
            const VertexSet & a_last, int t_last, std::uint64_t seed, std::int64_t backtrack_budget = 20000) -> AbsorberResult;

    struct AbsorbResult
    {
        Orientation orientation;
        std::string method;

        /// Full maps for the absorber trees, in state order.
        std::vector<TreeAssignment> assignments;
    };

    /// Orients the leftover so every vertex of A_last has t_last out-edges and
    /// sends the withheld leaves at v onto its out-neighbours. Throws
    /// PreconditionError on a count mismatch or an infeasible orientation.
    auto absorb_leftover(const SimpleGraph & leftover, const AbsorberState & state) -> AbsorbResult;

    struct HeuristicConfig
    {
        std::uint64_t seed = 0;
        int restarts = 1000;
        double time_limit_seconds = 110;

        /// Vortex used to bias the bulk: levels[1] is the reserved region A.
        double gamma = 0.25;
        double epsilon = 0.1;
        double vortex_slack = 1.0;
        int vortex_levels = 1;

        /// Fraction of trees offered to the covering phase.
        double reservoir = 0.15;

        /// Fraction of trees (the smallest) left to the exact finish.
        double finish_fraction = 0.3;

        /// Trees with at most this fraction of n vertices prefer edges off the region.
        double prefer_fraction = 0.67;

        /// Vortex level holding the absorber anchors (clamped to the depth).
        int absorber_level = 1;

        /// Absorber multiplicity on that level; negative picks 1 when
        /// the last level has at least 3 vertices and 0 otherwise.
        int t_last = -1;

        std::int64_t bulk_budget = 4000;
        std::int64_t finish_budget = 200000;
    };

    struct PhaseStats
    {
        std::string phase;
        int trees = 0;
        std::int64_t residual_edges = 0;
        bool ok = false;
    };

    struct HeuristicResult
    {
        bool ok = false;
        PackingCertificate certificate;
        int attempts = 0;
        std::string failure;
        std::string failed_phase;
        std::int64_t residual_edges = 0;
        std::vector<PhaseStats> phases;
        double seconds = 0;
    };

    auto pack_heuristic(const SimpleGraph & g, const std::vector<RootedForest> & trees,
            const HeuristicConfig & config) -> HeuristicResult;
}

#endif
