/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_DIAGNOSTICS_HH
#define TREEPACK_DIAGNOSTICS_HH 1

#include <treepack/graph.hh>
#include <treepack/rational.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treepack
{
    enum class Verdict { pass, fail };
    enum class CheckMode { exhaustive, sampled };

    struct QuasiRandomParams
    {
        Rational epsilon{ 1, 10 };
        Rational p{ 1 };
    };

    struct DenseParams
    {
        Rational beta{ 1, 2 };
        Rational alpha{ 1, 2 };
        int exhaustive_cap = 12;
        std::int64_t trials = 20000;
        std::uint64_t seed = 0;
    };

    struct RegularityParams
    {
        Rational epsilon{ 1, 10 };

        /// Target density; when absent the pair's own density is used.
        std::optional<Rational> d;
        bool super = false;
        int exhaustive_cap = 24;
        std::int64_t trials = 20000;
        std::uint64_t seed = 0;
    };

    struct ExpanderParams
    {
        Rational nu{ 1, 10 };
        Rational tau{ 1, 5 };
        int exhaustive_cap = 20;
        std::int64_t trials = 20000;
        std::uint64_t seed = 0;
    };

    /// Outcome of a structural check. A failing exhaustive check always carries
    /// a witness; a passing sampled check only means no counterexample was found.
    struct DiagnosticsReport
    {
        std::string check;
        Verdict verdict = Verdict::pass;
        CheckMode mode = CheckMode::exhaustive;
        std::vector<VertexSet> witness;
        std::string detail;
        std::int64_t samples = 0;

        auto passed() const -> bool { return verdict == Verdict::pass; }
        auto summary() const -> std::string;
    };

    auto to_string(Verdict v) -> std::string;
    auto to_string(CheckMode m) -> std::string;

    auto check_quasi_random(const SimpleGraph & g, const QuasiRandomParams & params) -> DiagnosticsReport;

    auto check_dense(const SimpleGraph & g, const DenseParams & params) -> DiagnosticsReport;
    auto check_dense(const MultiGraph & g, const DenseParams & params) -> DiagnosticsReport;

    auto check_regular_pair(const BipartitionView & view, const RegularityParams & params) -> DiagnosticsReport;

    /// { v : d_{G,S}(v) >= nu n }.
    auto robust_neighbourhood(const SimpleGraph & g, const VertexSet & s, const Rational & nu) -> VertexSet;

    auto check_robust_expander(const SimpleGraph & g, const ExpanderParams & params) -> DiagnosticsReport;

    /// True iff every two distinct members of `set` are at distance at least k.
    /// On failure, `violation` (if given) receives an offending pair.
    auto is_k_independent(const SimpleGraph & g, int k, const VertexSet & set, std::pair<VertexId, VertexId> * violation = nullptr) -> bool;

    auto is_k_independent_matching(const SimpleGraph & g, int k, const std::vector<Edge> & matching) -> bool;

    /// Greedy extension of X inside Z, scanning Z in ascending order.
    auto greedy_k_independent_set(const SimpleGraph & g, int k, const VertexSet & x, const VertexSet & z) -> VertexSet;

    /// Greedy over the canonical edge order.
    auto greedy_k_independent_matching(const SimpleGraph & g, int k) -> std::vector<Edge>;
}

#endif
