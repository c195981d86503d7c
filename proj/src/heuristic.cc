/* vim: set sw=4 sts=4 et : */

#include <treepack/packer.hh>
#include <treepack/covering.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace treepack
{
    namespace
    {
        /// Budgeted depth-first embedding with random candidate order. Edges
        /// inside the reserved region are never used; with `prefer`, edges
        /// avoiding the region entirely are tried first.
        class BiasedEmbedder
        {
            private:
                const RootedForest & _t;
                HostView & _host;
                Rng & _rng;
                const std::vector<char> & _reserved;
                bool _prefer;
                std::int64_t _budget, _nodes = 0;
                std::vector<VertexId> _order, _map;
                std::vector<char> _used;

                auto candidates(VertexId x) -> std::vector<VertexId>
                {
                    std::vector<VertexId> c;
                    int need = static_cast<int>(_t.children(x).size());
                    if (_t.is_root(x)) {
                        for (VertexId w = 0 ; w < _host.order() ; ++w)
                            if (! _used[w] && _host.degree(w) >= need)
                                c.push_back(w);
                        _rng.shuffle(c);
                        return c;
                    }
                    VertexId p = _map[_t.parent(x)];
                    for (auto w : _host.neighbours(p))
                        if (! _used[w] && _host.degree(w) >= need + 1 && ! (_reserved[p] && _reserved[w]))
                            c.push_back(w);
                    _rng.shuffle(c);
                    if (_prefer && ! _reserved[p])
                        std::stable_partition(c.begin(), c.end(), [&] (VertexId w) { return ! _reserved[w]; });
                    return c;
                }

                auto extend(std::size_t i) -> bool
                {
                    if (i == _order.size())
                        return true;
                    if (++_nodes > _budget)
                        return false;
                    VertexId x = _order[i];
                    for (auto w : candidates(x)) {
                        _map[x] = w;
                        _used[w] = 1;
                        if (! _t.is_root(x))
                            _host.remove_edge(_map[_t.parent(x)], w);
                        if (extend(i + 1))
                            return true;
                        if (! _t.is_root(x))
                            _host.add_edge(_map[_t.parent(x)], w);
                        _used[w] = 0;
                        _map[x] = -1;
                        if (_nodes > _budget)
                            return false;
                    }
                    return false;
                }

            public:
                BiasedEmbedder(const RootedForest & t, HostView & host, Rng & rng, const std::vector<char> & reserved,
                        bool prefer, std::int64_t budget) :
                    _t(t), _host(host), _rng(rng), _reserved(reserved), _prefer(prefer), _budget(budget),
                    _order(t.bfs_order()), _map(t.order(), -1), _used(host.order(), 0)
                {
                }

                /// On success the image is removed from the host.
                auto run() -> std::optional<std::vector<VertexId>>
                {
                    if (extend(0))
                        return _map;
                    return std::nullopt;
                }
        };

        struct Attempt
        {
            bool ok = false;
            std::string phase, failure;
            std::int64_t residual = 0;
            std::vector<PhaseStats> phases;
            std::vector<TreeAssignment> assignments;
        };

        auto host_graph(const HostView & h) -> SimpleGraph
        {
            return SimpleGraph(h.order(), h.edges());
        }

        /// The same tree rooted at an end of a longest path, so that far
        /// edges exist whenever the diameter allows.
        auto reroot_far(const RootedForest & t) -> RootedForest
        {
            auto g = t.to_graph();
            auto d0 = bfs_distances(g, 0);
            VertexId far = static_cast<VertexId>(std::max_element(d0.begin(), d0.end()) - d0.begin());
            return RootedForest::from_edges(t.order(), t.edges(), { far });
        }

        auto run_attempt(const SimpleGraph & g, const std::vector<RootedForest> & trees, const HeuristicConfig & config,
                std::uint64_t seed) -> Attempt
        {
            Attempt at;
            const int n = g.order();
            const int count = static_cast<int>(trees.size());
            Rng rng(seed);
            HostView cur(g);

            auto stat = [&] (std::string phase, int placed, bool ok) {
                at.phases.push_back({ std::move(phase), placed, cur.size(), ok });
            };
            auto fail = [&] (std::string phase, std::string why) {
                at.phase = std::move(phase);
                at.failure = std::move(why);
                at.residual = cur.size();
                return at;
            };

            // (1) vortex: the bias region and the absorber level
            VertexSet region, a_last;
            if (config.vortex_levels > 0 && n >= 8) {
                try {
                    auto v = build_vortex(g, config.gamma, config.epsilon, config.vortex_slack, mix_seed(seed, 1));
                    region = v.levels[std::min(config.vortex_levels, v.depth())];
                    a_last = v.levels[std::min(std::max(config.absorber_level, 0), v.depth())];
                }
                catch (const PreconditionError &) {
                }
                catch (const InvariantViolation &) {
                }
            }
            stat("vortex", 0, true);
            std::vector<char> reserved(n, 0);
            for (auto v : region)
                reserved[v] = 1;

            int t_last = config.t_last;
            if (t_last < 0)
                t_last = a_last.size() >= 3 ? 1 : 0;
            if (static_cast<std::int64_t>(t_last) * static_cast<std::int64_t>(a_last.size())
                    > static_cast<std::int64_t>(a_last.size()) * (static_cast<std::int64_t>(a_last.size()) - 1) / 2)
                t_last = 0;

            // (2) pools: the smallest trees finish, the next ones absorb
            std::vector<int> ids(count);
            std::iota(ids.begin(), ids.end(), 0);
            std::stable_sort(ids.begin(), ids.end(), [&] (int a, int b) { return trees[a].size() > trees[b].size(); });

            int finish_count = std::min(count, static_cast<int>(std::ceil(config.finish_fraction * count)));
            std::vector<int> finish(ids.end() - finish_count, ids.end());
            std::vector<int> bulk(ids.begin(), ids.end() - finish_count);

            AbsorberState absorber;
            absorber.a_last = a_last;
            if (t_last > 0) {
                std::vector<int> candidates(bulk.rbegin(), bulk.rend());
                auto prepared = prepare_absorber(cur, trees, candidates, a_last, t_last, mix_seed(seed, 2));
                if (! prepared.ok)
                    return fail("absorber", prepared.failure);
                cur = prepared.residual;
                absorber = prepared.state;
                for (auto & t : absorber.trees)
                    bulk.erase(std::find(bulk.begin(), bulk.end(), t.tree_id));
                stat("absorber", static_cast<int>(absorber.trees.size()), true);
            }
            else
                absorber.t_last = 0;

            // (3) bulk: largest first, never inside the region
            int prefer_below = static_cast<int>(std::floor(config.prefer_fraction * n));
            for (int id : bulk) {
                BiasedEmbedder e(trees[id], cur, rng, reserved, trees[id].order() <= prefer_below, config.bulk_budget);
                auto map = e.run();
                if (! map) {
                    stat("bulk", 0, false);
                    return fail("bulk", "tree " + std::to_string(id) + " could not be embedded");
                }
                at.assignments.push_back({ id, *map });
            }
            stat("bulk", static_cast<int>(bulk.size()), true);

            // (4) covering: leftover edges with both ends off the region
            if (! region.empty() && config.reservoir > 0) {
                int pool_size = static_cast<int>(std::ceil(config.reservoir * count));
                std::vector<int> pool;
                for (int id : finish)
                    if (static_cast<int>(pool.size()) < pool_size && trees[id].order() >= 6
                            && trees[id].order() <= static_cast<int>(region.size()) + 2)
                        pool.push_back(id);

                int covered = 0;
                for (auto & e : cur.edges()) {
                    if (reserved[e.u] || reserved[e.v] || ! cur.adjacent(e.u, e.v))
                        continue;
                    for (auto it = pool.begin() ; it != pool.end() ; ++it) {
                        ReservedTree rt{ reroot_far(trees[*it]), -1, { } };
                        CoverOptions opts;
                        opts.seed = mix_seed(seed, 1000 + static_cast<std::uint64_t>(*it));
                        opts.attempts = 4;
                        opts.backtrack_budget = 2000;
                        auto r = cover_matching_with_tree(rt, cur, region, { e }, opts);
                        if (! r.ok)
                            continue;
                        apply_embedding(cur, rt.tree, r.embedding);
                        at.assignments.push_back({ *it, r.embedding.map });
                        finish.erase(std::find(finish.begin(), finish.end(), *it));
                        pool.erase(it);
                        ++covered;
                        break;
                    }
                }
                stat("cover-off-region", covered, true);
            }

            // (5) exact finish, leaving an orientable remainder on A_last
            SearchRequest request;
            request.host = cur;
            for (int id : finish)
                request.trees.push_back(trees[id]);
            request.cover_all = true;
            request.budget = config.finish_budget;
            if (t_last > 0) {
                request.exempt = a_last;
                request.accept = [&] (const HostView & h) {
                    auto local = induced(host_graph(h), a_last);
                    return orient_exact_oracle(local, t_last).feasible;
                };
            }
            auto out = search_packing(request);
            if (out.status != ExactStatus::found) {
                stat("finish", 0, false);
                return fail("finish", "finishing search " + to_string(out.status) + " after " + std::to_string(out.nodes) + " nodes");
            }
            for (std::size_t i = 0 ; i < finish.size() ; ++i)
                at.assignments.push_back({ finish[i], out.maps[i].map });
            cur = out.residual;
            stat("finish", static_cast<int>(finish.size()), true);

            // (6) absorb the remainder
            if (t_last > 0) {
                auto absorbed = absorb_leftover(host_graph(cur), absorber);
                for (std::size_t i = 0 ; i < absorbed.assignments.size() ; ++i) {
                    auto & t = absorber.trees[i];
                    cur.remove_edge(absorbed.assignments[i].map[t.leaf], t.anchor_image);
                }
                at.assignments.insert(at.assignments.end(), absorbed.assignments.begin(), absorbed.assignments.end());
                stat("absorb", static_cast<int>(absorbed.assignments.size()), true);
            }
            else if (cur.size() != 0)
                return fail("finish", "residual edges remain");

            at.ok = true;
            at.residual = cur.size();
            return at;
        }
    }

    auto pack_heuristic(const SimpleGraph & g, const std::vector<RootedForest> & trees,
            const HeuristicConfig & config) -> HeuristicResult
    {
        using clock = std::chrono::steady_clock;
        auto start = clock::now();
        HeuristicResult result;
        result.certificate.graph_hash = canonical_hash(g);
        result.certificate.mode = PackMode::decompose;

        std::int64_t total = 0;
        for (auto & t : trees) {
            total += t.size();
            if (t.order() > g.order())
                throw PreconditionError("pack_heuristic: a tree has more vertices than the host");
        }
        if (total != g.size())
            throw PreconditionError("pack_heuristic: tree edges (" + std::to_string(total) + ") differ from host edges ("
                    + std::to_string(g.size()) + ")");

        for (int attempt = 0 ; attempt < std::max(1, config.restarts) ; ++attempt) {
            if (attempt > 0 && std::chrono::duration<double>(clock::now() - start).count() > config.time_limit_seconds)
                break;
            result.attempts = attempt + 1;
            auto at = run_attempt(g, trees, config, mix_seed(config.seed, static_cast<std::uint64_t>(attempt)));
            result.phases = at.phases;
            if (! at.ok) {
                result.failure = at.failure;
                result.failed_phase = at.phase;
                result.residual_edges = at.residual;
                continue;
            }

            PackingCertificate cert = result.certificate;
            cert.assignments = at.assignments;
            std::sort(cert.assignments.begin(), cert.assignments.end(),
                    [] (const TreeAssignment & a, const TreeAssignment & b) { return a.tree_id < b.tree_id; });
            auto check = verify_certificate(g, trees, cert);
            if (! check.ok) {
                result.failure = "certificate rejected: " + check.violation;
                result.failed_phase = "verify";
                continue;
            }
            result.ok = true;
            result.certificate = std::move(cert);
            result.failure.clear();
            result.failed_phase.clear();
            result.residual_edges = 0;
            break;
        }
        result.seconds = std::chrono::duration<double>(clock::now() - start).count();
        return result;
    }
}
