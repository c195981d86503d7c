/* vim: set sw=4 sts=4 et : */

#include <treepack/walk.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <algorithm>
#include <cmath>

namespace treepack
{
    auto simulate_walk(int ell, const std::vector<int> & steps, std::int64_t trials, std::uint64_t seed)
        -> std::vector<std::vector<double>>
    {
        if (ell < 3)
            throw PreconditionError("walk needs a cycle of length at least 3");
        if (trials < 1)
            throw PreconditionError("trials must be positive");
        int horizon = 0;
        for (auto t : steps) {
            if (t < 0)
                throw PreconditionError("step counts must be non-negative");
            horizon = std::max(horizon, t);
        }

        // want[t] lists the rows recorded after t steps
        std::vector<std::vector<int>> want(horizon + 1);
        for (int r = 0 ; r < static_cast<int>(steps.size()) ; ++r)
            want[steps[r]].push_back(r);

        std::vector<std::vector<std::int64_t>> counts(steps.size(), std::vector<std::int64_t>(ell, 0));
        Rng rng(seed);
        for (std::int64_t trial = 0 ; trial < trials ; ++trial) {
            int x = 0;
            for (int t = 0 ; ; ++t) {
                for (auto r : want[t])
                    ++counts[r][x];
                if (t == horizon)
                    break;
                x = rng.coin() ? (x + 1 == ell ? 0 : x + 1) : (x == 0 ? ell - 1 : x - 1);
            }
        }

        std::vector<std::vector<double>> table(steps.size(), std::vector<double>(ell, 0.0));
        for (std::size_t r = 0 ; r < steps.size() ; ++r)
            for (int i = 0 ; i < ell ; ++i)
                table[r][i] = static_cast<double>(counts[r][i]) / static_cast<double>(trials);
        return table;
    }

    CycleBlowup::CycleBlowup(int ell, int k) :
        _ell(ell),
        _k(k)
    {
        if (ell < 3 || k < 1)
            throw PreconditionError("cycle blow-up needs ell >= 3 and k >= 1");
    }

    CycleBlowup::CycleBlowup(int ell, int k, const SimpleGraph & g) :
        CycleBlowup(ell, k)
    {
        if (g.order() != ell * k)
            throw PreconditionError("host order does not match ell * k");
        _graph = &g;
    }

    auto CycleBlowup::cluster(int i) const -> VertexSet
    {
        VertexSet s(_k);
        for (int j = 0 ; j < _k ; ++j)
            s[j] = i * _k + j;
        return s;
    }

    auto CycleBlowup::adjacent(VertexId u, VertexId v) const -> bool
    {
        if (_graph)
            return _graph->adjacent(u, v);
        int d = (cluster_of(u) - cluster_of(v) + _ell) % _ell;
        return d == 1 || d == _ell - 1;
    }

    auto CycleBlowup::is_complete() const -> bool
    {
        if (! _graph)
            return true;
        if (static_cast<std::int64_t>(_graph->size()) != std::int64_t(_ell) * _k * _k)
            return false;
        for (auto & e : _graph->edges()) {
            int d = (cluster_of(e.u) - cluster_of(e.v) + _ell) % _ell;
            if (d != 1 && d != _ell - 1)
                return false;
        }
        return true;
    }

    auto CycleBlowup::to_graph() const -> SimpleGraph
    {
        if (_graph)
            return *_graph;
        std::vector<Edge> edges;
        for (int i = 0 ; i < _ell ; ++i) {
            int j = (i + 1) % _ell;
            for (int a = 0 ; a < _k ; ++a)
                for (int b = 0 ; b < _k ; ++b)
                    edges.push_back(make_edge(i * _k + a, j * _k + b));
        }
        return SimpleGraph(order(), std::move(edges));
    }

    auto ClusterAssignment::max_load() const -> std::int64_t
    {
        return loads.empty() ? 0 : *std::max_element(loads.begin(), loads.end());
    }

    auto ClusterAssignment::max_pair_load() const -> std::int64_t
    {
        return pair_loads.empty() ? 0 : *std::max_element(pair_loads.begin(), pair_loads.end());
    }

    namespace
    {
        auto check_params(const RootedForest & t, const WalkEmbedParams & params) -> void
        {
            if (params.ell < 3 || params.ell % 2 == 0)
                throw PreconditionError("ell must be odd and at least 3");
            if (t.component_count() != 1)
                throw PreconditionError("walk assignment needs a single tree");
            std::int64_t need = (t.order() + params.ell - 1) / params.ell;
            if (params.m < need)
                throw PreconditionError("capacity m = " + std::to_string(params.m) + " is below ceil(n / ell) = " + std::to_string(need));
            if (! (params.delta >= 0.0 && params.delta < 1.0))
                throw PreconditionError("chunking exponent delta must lie in [0, 1)");
        }

        auto pair_index(int ell, int a, int b) -> int
        {
            return (a + 1) % ell == b ? a : b;
        }
    }

    auto walk_assign_tree(const RootedForest & t, const WalkEmbedParams & params) -> ClusterAssignment
    {
        check_params(t, params);
        const int n = t.order(), ell = params.ell;

        int chunk = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 1.0 - params.delta)));
        chunk = std::clamp(chunk, 1, n);
        auto parts = decompose_rooted(t, { chunk, std::max(2, t.max_degree()) });
        std::stable_sort(parts.begin(), parts.end(), [] (const SubtreeHandle & a, const SubtreeHandle & b) {
            return a.distance_from_root < b.distance_from_root;
        });

        ClusterAssignment result;
        result.ell = ell;
        result.cluster_of.assign(n, -1);
        result.loads.assign(ell, 0);
        result.pair_loads.assign(ell, 0);

        Rng rng(params.seed);
        std::vector<char> in_part(n, 0);
        bool first = true;
        for (auto & part : parts) {
            for (auto v : part.vertices)
                in_part[v] = 1;
            std::vector<VertexId> queue{ part.y };
            for (std::size_t i = 0 ; i < queue.size() ; ++i) {
                VertexId x = queue[i];
                int c;
                if (first) {
                    c = static_cast<int>(rng.below(ell));
                    first = false;
                }
                else {
                    int above = result.cluster_of[t.parent(x)];
                    if (above < 0)
                        throw InvariantViolation("walk reached a vertex before its parent");
                    c = rng.coin() ? (above + 1) % ell : (above + ell - 1) % ell;
                    ++result.pair_loads[pair_index(ell, above, c)];
                }
                result.cluster_of[x] = c;
                ++result.loads[c];
                for (auto w : t.children(x))
                    if (in_part[w])
                        queue.push_back(w);
            }
            for (auto v : part.vertices)
                in_part[v] = 0;
        }

        if (! assignment_is_valid(t, result))
            throw InvariantViolation("walk assignment is inconsistent");
        return result;
    }

    auto assignment_is_valid(const RootedForest & t, const ClusterAssignment & a) -> bool
    {
        const int ell = a.ell;
        if (ell < 3 || static_cast<int>(a.cluster_of.size()) != t.order())
            return false;
        std::vector<std::int64_t> loads(ell, 0), pairs(ell, 0);
        for (auto c : a.cluster_of) {
            if (c < 0 || c >= ell)
                return false;
            ++loads[c];
        }
        for (auto & e : t.edges()) {
            int cu = a.cluster_of[e.u], cv = a.cluster_of[e.v];
            int d = (cu - cv + ell) % ell;
            if (d != 1 && d != ell - 1)
                return false;
            ++pairs[pair_index(ell, cu, cv)];
        }
        return loads == a.loads && pairs == a.pair_loads;
    }

    auto walk_embed_tree(const RootedForest & t, const CycleBlowup & blowup, const WalkEmbedParams & params) -> WalkEmbedResult
    {
        check_params(t, params);
        if (blowup.ell() != params.ell)
            throw PreconditionError("blow-up length does not match ell");
        if (blowup.k() < params.m)
            throw PreconditionError("blow-up clusters are smaller than the capacity m");
        if (! blowup.is_complete())
            throw PreconditionError("host is not a complete cycle blow-up");

        WalkEmbedResult result;
        int limit = std::max(1, params.retry_limit);
        for (int attempt = 0 ; attempt < limit ; ++attempt) {
            WalkEmbedParams p = params;
            p.seed = attempt == 0 ? params.seed : mix_seed(params.seed, attempt);
            result.assignment = walk_assign_tree(t, p);
            result.attempts = attempt + 1;
            result.seed_used = p.seed;
            result.max_load = result.assignment.max_load();
            result.max_pair_load = result.assignment.max_pair_load();
            if (result.max_load <= params.m && result.max_pair_load <= params.m) {
                result.ok = true;
                break;
            }
        }
        if (! result.ok)
            return result;

        PartialEmbedding phi(t.order());
        std::vector<int> fill(params.ell, 0);
        for (VertexId x = 0 ; x < t.order() ; ++x) {
            int c = result.assignment.cluster_of[x];
            phi.map[x] = c * blowup.k() + fill[c]++;
        }

        std::vector<char> hit(blowup.order(), 0);
        for (auto v : phi.map) {
            if (hit[v])
                throw InvariantViolation("walk embedding is not injective");
            hit[v] = 1;
        }
        for (auto & e : t.edges())
            if (! blowup.adjacent(phi.map[e.u], phi.map[e.v]))
                throw InvariantViolation("walk embedding maps a tree edge onto a non-edge");
        result.embedding = std::move(phi);
        return result;
    }
}
