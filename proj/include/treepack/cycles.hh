/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_CYCLES_HH
#define TREEPACK_CYCLES_HH 1

#include <treepack/graph.hh>
#include <treepack/rational.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treepack
{
    struct MakeEulerianResult
    {
        bool ok = false;
        SimpleGraph eulerian;
        std::vector<Edge> removed;
        std::vector<Edge> matching;
        std::vector<std::vector<VertexId>> paths;

        /// On failure, the odd pair for which no path of length 3 could be routed.
        std::optional<std::pair<VertexId, VertexId>> stuck;
    };

    /// Removes a maximal matching on the odd vertices, then joins the
    /// remaining odd vertices in pairs by vertex-disjoint paths of length 3.
    auto make_eulerian(const SimpleGraph & g, std::int64_t search_budget = 1000000) -> MakeEulerianResult;

    struct FairPartitionResult
    {
        bool ok = false;
        int attempts = 0;
        std::vector<VertexSet> parts;
    };

    /// Default slack ceil(n^(2/3)).
    auto default_fair_slack(int n) -> std::int64_t;

    auto fair_partition(const SimpleGraph & g, const VertexSet & v_prime, int k, std::int64_t slack, std::uint64_t seed,
            int retry_cap = 200) -> FairPartitionResult;

    /// Checks (a)-(c) of a fair partition for the given slack.
    auto is_fair_partition(const SimpleGraph & g, const VertexSet & v_prime, const std::vector<VertexSet> & parts,
            std::int64_t slack) -> bool;

    /// Rotation-extension search; any cycle returned has been verified.
    auto find_hamilton_cycle(const SimpleGraph & g, int restarts, std::uint64_t seed) -> std::optional<std::vector<VertexId>>;

    auto is_hamilton_cycle(const SimpleGraph & g, const std::vector<VertexId> & cycle) -> bool;

    struct CycleDecompParams
    {
        int r = 3;
        int hamilton_restarts = 30;
        std::uint64_t seed = 0;

        /// Negative: ceil(n^(2/3)).
        std::int64_t fair_slack = -1;

        /// Whole-phase restarts for the regular phase.
        int regular_restarts = 40;

        /// The regular phase stops once the remainder has max degree at most this.
        int leftover_threshold = 0;
    };

    struct CycleList
    {
        std::vector<std::vector<VertexId>> cycles;
        std::vector<bool> hamilton;
    };

    struct CycleDecompResult
    {
        bool ok = false;
        CycleList cycles;
        SimpleGraph leftover;
        std::string failure;

        int iterations = 0;

        /// Δ - δ before the loop and after each iteration of the irregular phase.
        std::vector<int> gap_history;
        int initial_gap = 0;
    };

    auto decompose_long_cycles(const SimpleGraph & g, const CycleDecompParams & params) -> CycleDecompResult;

    /// Every cycle simple, inside g, pairwise edge-disjoint; and the cycles
    /// plus the leftover exactly cover g.
    auto cycle_list_is_valid(const SimpleGraph & g, const CycleList & list, const SimpleGraph & leftover) -> bool;

    struct Seagull
    {
        VertexId wing1 = -1, centre = -1, wing2 = -1;
    };

    using Flock = std::vector<Seagull>;

    /// Flocks with wings in view.a and centres in view.b.
    auto seagull_decompose(const BipartitionView & view) -> std::vector<Flock>;

    struct WeightedSet
    {
        std::vector<Rational> w;
        Rational cap{ 1 };
        int m = 1;
    };

    /// Parts as lists of item indices.
    auto weight_partition(const WeightedSet & ws) -> std::vector<std::vector<int>>;
}

#endif
