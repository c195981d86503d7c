/* vim: set sw=4 sts=4 et : */

#include <treepack/generate.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <set>

namespace treepack
{
    auto gen_gnp(int n, double p, std::uint64_t seed) -> SimpleGraph
    {
        if (n < 0 || ! (p >= 0 && p <= 1))
            throw PreconditionError("gen_gnp: need n >= 0 and p in [0, 1]");
        Rng rng(seed);
        std::vector<Edge> edges;
        for (VertexId u = 0 ; u < n ; ++u)
            for (VertexId v = u + 1 ; v < n ; ++v)
                if (rng.real() < p)
                    edges.push_back({ u, v });
        return SimpleGraph(n, std::move(edges));
    }

    auto gen_regular(int n, int d, std::uint64_t seed, int max_samples) -> SimpleGraph
    {
        if (n <= 0 || d < 0 || (d > 0 && d >= n) || (static_cast<std::int64_t>(n) * d) % 2 != 0)
            throw PreconditionError("gen_regular: no simple " + std::to_string(d) + "-regular graph on "
                    + std::to_string(n) + " vertices");

        // dense targets: sample the sparse complement instead
        if (2 * d > n - 1) {
            auto sparse = gen_regular(n, n - 1 - d, seed, max_samples);
            std::vector<Edge> edges;
            for (VertexId u = 0 ; u < n ; ++u)
                for (VertexId v = u + 1 ; v < n ; ++v)
                    if (! sparse.adjacent(u, v))
                        edges.push_back({ u, v });
            return SimpleGraph(n, edges);
        }

        for (int sample = 0 ; sample < max_samples ; ++sample) {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(sample)));
            std::vector<VertexId> stubs;
            for (VertexId v = 0 ; v < n ; ++v)
                for (int i = 0 ; i < d ; ++i)
                    stubs.push_back(v);

            std::set<Edge> edges;
            bool stuck = false;
            while (! stubs.empty() && ! stuck) {
                stuck = true;
                for (int tries = 0 ; tries < 100 ; ++tries) {
                    auto i = rng.below(stubs.size()), j = rng.below(stubs.size());
                    if (i == j || stubs[i] == stubs[j] || edges.count(make_edge(stubs[i], stubs[j])))
                        continue;
                    edges.insert(make_edge(stubs[i], stubs[j]));
                    if (i < j)
                        std::swap(i, j);
                    stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(i));
                    stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(j));
                    stuck = false;
                    break;
                }
            }
            if (! stuck)
                return SimpleGraph(n, std::vector<Edge>(edges.begin(), edges.end()));
        }
        throw InvariantViolation("gen_regular: every sample got stuck");
    }
}
