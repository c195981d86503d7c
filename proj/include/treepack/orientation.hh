/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_ORIENTATION_HH
#define TREEPACK_ORIENTATION_HH 1

#include <treepack/embed.hh>
#include <treepack/graph.hh>
#include <treepack/rational.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treepack
{
    /// Each arc (u, v) orients the undirected edge uv as u -> v.
    struct Orientation
    {
        int n = 0;
        std::vector<Edge> arcs;

        auto out_degrees() const -> std::vector<int>;
    };

    /// Every edge of g oriented exactly once, and every vertex with out-degree dbar.
    auto orientation_is_out_regular(const SimpleGraph & g, const Orientation & o, int dbar) -> bool;
    auto orientation_covers(const SimpleGraph & g, const Orientation & o) -> bool;

    /// Z(G) = sum over v of |d(v) - average degree|.
    auto imbalance(const SimpleGraph & g) -> Rational;
    auto imbalance(const HostView & g) -> Rational;

    struct OrientParams
    {
        /// Density for the step size p^2 n / 4; absent means m / (n choose 2).
        std::optional<Rational> p_hint;
        std::uint64_t seed = 0;
        int restarts = 5;
        int hamilton_restarts = 20;
    };

    struct OrientResult
    {
        bool ok = false;
        Orientation orientation;
        int dbar = 0;
        int iterations = 0;
        int attempts = 0;
        std::string failure;

        std::vector<Rational> z_history;
        std::vector<int> gap_history;
        std::vector<int> t_history;
    };

    /// The layer-peeling algorithm: each layer is a Hamilton cycle on
    /// G_i - (V' ∪ W') plus paths u_j w_j v_j, oriented to out-degree 1; the
    /// regular remainder is oriented along Euler circuits. Throws
    /// PreconditionError unless m = dbar n and δ(G) >= dbar.
    auto orient_out_regular(const SimpleGraph & g, const OrientParams & params) -> OrientResult;

    struct OracleResult
    {
        bool feasible = false;
        Orientation orientation;

        /// When infeasible: a set S with e(G[S]) > dbar |S|, empty if the
        /// obstruction is the edge count m != dbar n.
        VertexSet witness;
        std::string reason;
    };

    /// Max-flow: source -> edge (cap 1) -> its two ends (cap 1) -> vertex -> sink (cap dbar).
    auto orient_exact_oracle(const SimpleGraph & g, int dbar) -> OracleResult;

    struct CombinedOrientResult
    {
        bool feasible = false;
        std::string method;
        Orientation orientation;
        OrientResult layered;
        OracleResult oracle;
        double oracle_seconds = 0, layered_seconds = 0;
    };

    /// Oracle first; the layer algorithm when feasible; the oracle's
    /// orientation if the layer algorithm fails. dbar = m / n.
    auto orient_with_fallback(const SimpleGraph & g, const OrientParams & params) -> CombinedOrientResult;

    /// Orients an even-degree graph along an Euler circuit of each component.
    auto euler_orientation(const SimpleGraph & g) -> Orientation;
}

#endif
