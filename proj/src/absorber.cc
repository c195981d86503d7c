/* vim: set sw=4 sts=4 et : */

#include <treepack/packer.hh>
#include <treepack/covering.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace treepack
{
    namespace
    {
        auto level_size(int n, double gamma, int i) -> int
        {
            long double x = std::pow(static_cast<long double>(gamma), i) * n;
            return static_cast<int>(std::floor(x + 1e-9L));
        }

        auto mask_of(const VertexSet & s, int words) -> std::vector<std::uint64_t>
        {
            std::vector<std::uint64_t> m(words, 0);
            for (auto v : s)
                m[v >> 6] |= std::uint64_t(1) << (v & 63);
            return m;
        }

        auto count_in(std::span<const std::uint64_t> row, const std::vector<std::uint64_t> & mask) -> int
        {
            int c = 0;
            for (std::size_t w = 0 ; w < mask.size() ; ++w)
                c += std::popcount(row[w] & mask[w]);
            return c;
        }

        auto count_in(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                const std::vector<std::uint64_t> & mask) -> int
        {
            int c = 0;
            for (std::size_t w = 0 ; w < mask.size() ; ++w)
                c += std::popcount(a[w] & b[w] & mask[w]);
            return c;
        }

        /// Degrees and codegrees into s against p |s - {u}| and p^2 |s - {u, v}|.
        auto check_window(const SimpleGraph & g, const VertexSet & s, double p, double tolerance,
                const std::string & name, VortexCheck & out) -> void
        {
            int n = g.order();
            auto mask = mask_of(s, g.words());
            auto in_s = [&] (VertexId v) { return (mask[v >> 6] >> (v & 63)) & 1; };
            auto consider = [&] (double actual, double expected, auto what) {
                if (expected <= 0) {
                    if (actual > 0 && out.ok) {
                        out.ok = false;
                        out.failure = what() + " into " + name + " is positive where none is expected";
                    }
                    return;
                }
                double dev = std::abs(actual - expected) / expected;
                out.worst_deviation = std::max(out.worst_deviation, dev);
                if (dev > tolerance + 1e-12 && out.ok) {
                    out.ok = false;
                    out.failure = what() + " into " + name + " outside its window";
                }
            };
            int size = static_cast<int>(s.size());
            for (VertexId u = 0 ; u < n ; ++u) {
                int own = in_s(u) ? 1 : 0;
                consider(count_in(g.row(u), mask), p * (size - own), [&] { return "degree of " + std::to_string(u); });
                for (VertexId v = u + 1 ; v < n ; ++v) {
                    int both = own + (in_s(v) ? 1 : 0);
                    consider(count_in(g.row(u), g.row(v), mask), p * p * (size - both),
                            [&] { return "codegree of " + std::to_string(u) + "," + std::to_string(v); });
                }
            }
        }
    }

    auto check_vortex(const SimpleGraph & g, const Vortex & v, double slack) -> VortexCheck
    {
        VortexCheck out;
        out.ok = true;
        int n = g.order();
        auto fail = [&] (std::string why) {
            if (out.ok) {
                out.ok = false;
                out.failure = std::move(why);
            }
        };

        if (v.levels.empty() || static_cast<int>(v.levels[0].size()) != n)
            fail("A_0 is not the whole vertex set");
        for (std::size_t i = 0 ; i < v.levels.size() ; ++i) {
            if (static_cast<int>(v.levels[i].size()) != level_size(n, v.gamma, static_cast<int>(i)))
                fail("|A_" + std::to_string(i) + "| differs from floor(gamma^i n)");
            if (i > 0 && ! std::includes(v.levels[i - 1].begin(), v.levels[i - 1].end(), v.levels[i].begin(), v.levels[i].end()))
                fail("A_" + std::to_string(i) + " not inside A_" + std::to_string(i - 1));
        }
        int lambda = v.depth();
        if (lambda >= 0 && v.levels[lambda].size() > std::cbrt(static_cast<double>(n)) + 1e-9)
            fail("last level larger than n^(1/3)");
        if (lambda >= 1 && v.levels[lambda - 1].size() <= std::cbrt(static_cast<double>(n)) + 1e-9)
            fail("depth is not minimal");

        if (static_cast<int>(v.reservoirs.size()) != lambda)
            fail("one reservoir per level below the last is required");
        for (std::size_t i = 0 ; i < v.reservoirs.size() && i + 1 < v.levels.size() ; ++i) {
            auto & r = v.reservoirs[i];
            if (static_cast<int>(r.size()) != static_cast<int>(std::floor(v.epsilon * v.levels[i].size() + 1e-9)))
                fail("|R_" + std::to_string(i) + "| differs from floor(epsilon n_i)");
            for (auto x : r)
                if (! std::binary_search(v.levels[i].begin(), v.levels[i].end(), x)
                        || std::binary_search(v.levels[i + 1].begin(), v.levels[i + 1].end(), x))
                    fail("R_" + std::to_string(i) + " not inside A_i minus A_(i+1)");
        }
        if (! out.ok)
            return out;

        double p = n > 1 ? 2.0 * g.size() / (static_cast<double>(n) * (n - 1)) : 0;
        for (std::size_t i = 0 ; i < v.levels.size() ; ++i)
            check_window(g, v.levels[i], p, slack * 1.5 * v.epsilon, "A_" + std::to_string(i), out);
        for (std::size_t i = 0 ; i < v.reservoirs.size() ; ++i)
            check_window(g, v.reservoirs[i], p, slack * 2 * v.epsilon, "R_" + std::to_string(i), out);
        return out;
    }

    auto build_vortex(const SimpleGraph & g, double gamma, double epsilon, double slack, std::uint64_t seed,
            int max_attempts) -> Vortex
    {
        int n = g.order();
        if (! (gamma > 0 && gamma < 1))
            throw PreconditionError("build_vortex: gamma must lie in (0, 1)");
        if (n < 8)
            throw PreconditionError("build_vortex: n must be at least 8");

        double cube = std::cbrt(static_cast<double>(n));
        std::vector<int> sizes{ n };
        while (sizes.back() > cube + 1e-9)
            sizes.push_back(level_size(n, gamma, static_cast<int>(sizes.size())));
        if (sizes.size() < 2 || sizes[1] == 0)
            throw PreconditionError("build_vortex: A_1 is empty (gamma n < 1)");
        int lambda = static_cast<int>(sizes.size()) - 1;

        Vortex best;
        double best_dev = -1;
        for (int attempt = 0 ; attempt < max_attempts ; ++attempt) {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
            std::vector<VertexId> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);

            Vortex v;
            v.n = n;
            v.gamma = gamma;
            v.epsilon = epsilon;
            v.attempts = attempt + 1;
            for (int i = 0 ; i <= lambda ; ++i)
                v.levels.push_back(normalise(VertexSet(perm.end() - sizes[i], perm.end())));
            for (int i = 0 ; i < lambda ; ++i) {
                std::vector<VertexId> ring(perm.end() - sizes[i], perm.end() - sizes[i + 1]);
                rng.shuffle(ring);
                int r = static_cast<int>(std::floor(epsilon * sizes[i] + 1e-9));
                ring.resize(std::min<std::size_t>(ring.size(), static_cast<std::size_t>(r)));
                v.reservoirs.push_back(normalise(ring));
            }

            auto check = check_vortex(g, v, slack);
            v.worst_deviation = check.worst_deviation;
            if (check.ok)
                return v;
            if (best_dev < 0 || check.worst_deviation < best_dev) {
                best_dev = check.worst_deviation;
                best = v;
            }
        }
        throw InvariantViolation("build_vortex: no sample met the degree windows in " + std::to_string(max_attempts)
                + " attempts; worst deviation of the best sample " + std::to_string(best_dev));
    }

    auto AbsorberState::multiplicities() const -> std::vector<int>
    {
        std::vector<int> m(a_last.size(), 0);
        for (auto & t : trees) {
            auto it = std::lower_bound(a_last.begin(), a_last.end(), t.anchor_image);
            if (it != a_last.end() && *it == t.anchor_image)
                ++m[it - a_last.begin()];
        }
        return m;
    }

    auto AbsorberState::audit() const -> bool
    {
        auto m = multiplicities();
        return static_cast<std::int64_t>(trees.size()) == static_cast<std::int64_t>(t_last) * static_cast<std::int64_t>(a_last.size())
            && std::all_of(m.begin(), m.end(), [&] (int c) { return c == t_last; });
    }

    auto select_absorber_leaf(const RootedForest & t) -> std::optional<std::pair<VertexId, VertexId>>
    {
        if (t.order() < 2 || t.component_count() != 1)
            return std::nullopt;
        auto order = t.bfs_order();
        for (auto it = order.rbegin() ; it != order.rend() ; ++it)
            if (t.degree(*it) == 1) {
                VertexId leaf = *it;
                VertexId z = t.is_root(leaf) ? t.children(leaf)[0] : t.parent(leaf);
                return std::make_pair(leaf, z);
            }
        return std::nullopt;
    }

    auto prepare_absorber(const HostView & host, const std::vector<RootedForest> & trees, const std::vector<int> & candidates,
            const VertexSet & a_last, int t_last, std::uint64_t seed, std::int64_t backtrack_budget) -> AbsorberResult
    {
        AbsorberResult out;
        out.state.a_last = normalise(a_last);
        out.state.t_last = t_last;
        out.residual = host;
        if (t_last < 0)
            throw PreconditionError("prepare_absorber: t_last must be non-negative");
        if (t_last == 0) {
            out.ok = true;
            return out;
        }

        auto & a = out.state.a_last;
        std::size_t need = static_cast<std::size_t>(t_last) * a.size();
        std::vector<int> chosen;
        for (int id : candidates) {
            if (chosen.size() == need)
                break;
            if (select_absorber_leaf(trees[id]))
                chosen.push_back(id);
        }
        if (chosen.size() < need) {
            out.failure = "only " + std::to_string(chosen.size()) + " of " + std::to_string(need) + " absorber trees have a leaf";
            return out;
        }

        int n = host.order();
        std::vector<char> outside(n, 1);
        for (auto v : a)
            outside[v] = 0;

        for (std::size_t j = 0 ; j < need ; ++j) {
            auto & t = trees[chosen[j]];
            auto [leaf, anchor] = *select_absorber_leaf(t);
            VertexId image = a[j % a.size()];

            std::vector<VertexId> relabel(t.order(), -1), back;
            for (VertexId x = 0 ; x < t.order() ; ++x)
                if (x != leaf) {
                    relabel[x] = static_cast<VertexId>(back.size());
                    back.push_back(x);
                }
            std::vector<Edge> edges;
            for (auto & e : t.edges())
                if (e.u != leaf && e.v != leaf)
                    edges.push_back(make_edge(relabel[e.u], relabel[e.v]));
            auto body = RootedForest::from_edges(t.order() - 1, edges, { relabel[anchor] });

            PartialEmbedding pins(body.order());
            pins.map[relabel[anchor]] = image;

            std::optional<PartialEmbedding> phi;
            for (int attempt = 0 ; attempt < 6 && ! phi ; ++attempt) {
                GreedyEmbedOptions opts;
                opts.policy = attempt == 0 ? CandidatePolicy::max_residual : CandidatePolicy::random;
                opts.seed = mix_seed(seed, j * 16 + static_cast<std::uint64_t>(attempt));
                opts.check_codegree = false;
                opts.allowed = &outside;
                opts.backtrack_budget = backtrack_budget;
                phi = try_embed_forest(body, out.residual, pins, opts);
            }
            if (! phi) {
                out.failure = "absorber tree " + std::to_string(chosen[j]) + " could not be embedded at anchor " + std::to_string(image);
                return out;
            }

            AbsorberTree at;
            at.tree_id = chosen[j];
            at.leaf = leaf;
            at.anchor = anchor;
            at.anchor_image = image;
            at.embedding = PartialEmbedding(t.order());
            for (VertexId y = 0 ; y < body.order() ; ++y) {
                VertexId v = phi->map[y];
                if (v < 0 || (v != image && ! outside[v]))
                    throw InvariantViolation("prepare_absorber: body left the region outside A_last");
                at.embedding.map[back[y]] = v;
            }
            apply_embedding(out.residual, body, *phi);
            out.state.trees.push_back(std::move(at));
        }

        if (! out.state.audit())
            throw InvariantViolation("prepare_absorber: anchor multiplicities are not uniform");
        out.ok = true;
        return out;
    }

    auto absorb_leftover(const SimpleGraph & leftover, const AbsorberState & state) -> AbsorbResult
    {
        AbsorbResult out;
        auto & a = state.a_last;
        std::int64_t expected = static_cast<std::int64_t>(state.t_last) * static_cast<std::int64_t>(a.size());
        if (leftover.size() != expected)
            throw PreconditionError("absorb_leftover: leftover has " + std::to_string(leftover.size())
                    + " edges, the absorber expects " + std::to_string(expected));
        if (leftover.size() == 0 && state.trees.empty())
            return out;

        for (auto & e : leftover.edges())
            if (! std::binary_search(a.begin(), a.end(), e.u) || ! std::binary_search(a.begin(), a.end(), e.v))
                throw PreconditionError("absorb_leftover: leftover edge outside A_last");
        if (! state.audit())
            throw PreconditionError("absorb_leftover: absorber multiplicities are not uniform");

        auto local = induced(leftover, a);
        OrientParams params;
        auto oriented = orient_with_fallback(local, params);
        if (! oriented.feasible)
            throw PreconditionError("absorb_leftover: no orientation with out-degree " + std::to_string(state.t_last)
                    + " exists (" + oriented.oracle.reason + ")");
        if (! orientation_is_out_regular(local, oriented.orientation, state.t_last))
            throw InvariantViolation("absorb_leftover: orientation is not out-regular");
        out.method = oriented.method;

        int k = static_cast<int>(a.size());
        std::vector<std::vector<VertexId>> heads(k);
        out.orientation.n = leftover.order();
        for (auto & arc : oriented.orientation.arcs) {
            heads[arc.u].push_back(a[arc.v]);
            out.orientation.arcs.push_back({ a[arc.u], a[arc.v] });
        }
        for (auto & h : heads)
            std::sort(h.begin(), h.end());

        std::vector<std::size_t> next(k, 0);
        for (auto & t : state.trees) {
            int i = static_cast<int>(std::lower_bound(a.begin(), a.end(), t.anchor_image) - a.begin());
            VertexId target = heads[i][next[i]++];
            TreeAssignment ta{ t.tree_id, t.embedding.map };
            if (std::find(ta.map.begin(), ta.map.end(), target) != ta.map.end())
                throw InvariantViolation("absorb_leftover: leaf image already used by its tree");
            ta.map[t.leaf] = target;
            out.assignments.push_back(std::move(ta));
        }
        return out;
    }
}
