/* vim: set sw=4 sts=4 et : */

#include <treepack/cycles.hh>
#include <treepack/embed.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace treepack
{
    auto make_eulerian(const SimpleGraph & g, std::int64_t search_budget) -> MakeEulerianResult
    {
        const int n = g.order();
        MakeEulerianResult result;

        std::vector<char> odd(n, 0), matched(n, 0);
        for (VertexId v = 0 ; v < n ; ++v)
            odd[v] = g.degree(v) % 2;

        std::vector<char> in_m(g.size(), 0);
        for (int i = 0 ; i < g.size() ; ++i) {
            auto [u, v] = g.edges()[i];
            if (odd[u] && odd[v] && ! matched[u] && ! matched[v]) {
                matched[u] = matched[v] = 1;
                in_m[i] = 1;
                result.matching.push_back({ u, v });
            }
        }

        VertexSet x;
        for (VertexId v = 0 ; v < n ; ++v)
            if (odd[v] && ! matched[v])
                x.push_back(v);

        const int pairs = static_cast<int>(x.size()) / 2;
        std::vector<char> used(n, 0);
        std::vector<std::pair<VertexId, VertexId>> chosen(pairs, { -1, -1 });
        std::int64_t nodes = 0;
        int deepest = 0;

        // depth-first over pairs, trying interior pairs (a, b) in ascending order
        auto usable = [&] (VertexId a, VertexId b) {
            int idx = g.edge_index(a, b);
            return idx >= 0 && ! in_m[idx];
        };

        std::function<bool (int)> route = [&] (int i) -> bool {
            if (i == pairs)
                return true;
            deepest = std::max(deepest, i);
            VertexId s = x[2 * i], t = x[2 * i + 1];
            for (auto a : g.neighbours(s)) {
                if (used[a])
                    continue;
                for (auto b : g.neighbours(t)) {
                    if (used[b] || a == b || ! usable(a, b))
                        continue;
                    if (++nodes > search_budget)
                        return false;
                    used[a] = used[b] = 1;
                    chosen[i] = { a, b };
                    if (route(i + 1))
                        return true;
                    used[a] = used[b] = 0;
                }
            }
            return false;
        };

        if (! route(0)) {
            result.stuck = std::pair{ x[2 * deepest], x[2 * deepest + 1] };
            return result;
        }

        std::vector<Edge> removed = result.matching;
        for (int i = 0 ; i < pairs ; ++i) {
            VertexId s = x[2 * i], t = x[2 * i + 1];
            auto [a, b] = chosen[i];
            result.paths.push_back({ s, a, b, t });
            removed.push_back(make_edge(s, a));
            removed.push_back(make_edge(a, b));
            removed.push_back(make_edge(b, t));
        }
        std::sort(removed.begin(), removed.end());
        result.removed = removed;
        result.eulerian = remove_edges(g, removed);

        for (VertexId v = 0 ; v < n ; ++v)
            if (result.eulerian.degree(v) % 2)
                throw InvariantViolation("make_eulerian left an odd vertex");
        if (max_degree(result.removed) > 3)
            throw InvariantViolation("make_eulerian removed more than three edges at a vertex");
        result.ok = true;
        return result;
    }

    auto default_fair_slack(int n) -> std::int64_t
    {
        return static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n), 2.0 / 3.0) - 1e-9));
    }

    auto is_fair_partition(const SimpleGraph & g, const VertexSet & v_prime, const std::vector<VertexSet> & parts,
            std::int64_t slack) -> bool
    {
        const int k = static_cast<int>(parts.size());
        if (k < 1)
            return false;
        std::vector<char> seen(g.order(), 0);
        std::size_t total = 0;
        for (auto & p : parts) {
            if (p.size() % 2)
                return false;
            for (auto v : p) {
                if (seen[v])
                    return false;
                seen[v] = 1;
            }
            total += p.size();
        }
        if (total != v_prime.size())
            return false;
        for (auto v : v_prime)
            if (! seen[v])
                return false;
        for (auto & p : parts)
            for (auto & q : parts)
                if (p.size() > q.size() + 2)
                    return false;
        for (VertexId v = 0 ; v < g.order() ; ++v) {
            std::int64_t whole = degree_into(g, v, v_prime);
            for (auto & p : parts)
                if (std::int64_t(k) * degree_into(g, v, p) < whole - std::int64_t(k) * slack)
                    return false;
        }
        return true;
    }

    auto fair_partition(const SimpleGraph & g, const VertexSet & v_prime, int k, std::int64_t slack, std::uint64_t seed,
            int retry_cap) -> FairPartitionResult
    {
        if (k < 1)
            throw PreconditionError("fair partition needs k >= 1");
        if (v_prime.size() % 2)
            throw PreconditionError("fair partition needs an even set, got " + std::to_string(v_prime.size()) + " vertices");

        FairPartitionResult result;
        const int pairs = static_cast<int>(v_prime.size()) / 2;
        Rng rng(seed);
        VertexSet order = v_prime;
        for (int attempt = 0 ; attempt < std::max(1, retry_cap) ; ++attempt) {
            rng.shuffle(order);
            std::vector<VertexSet> parts(k);
            std::size_t at = 0;
            for (int i = 0 ; i < k ; ++i) {
                int size = 2 * (pairs / k + (i < pairs % k ? 1 : 0));
                parts[i].assign(order.begin() + at, order.begin() + at + size);
                std::sort(parts[i].begin(), parts[i].end());
                at += size;
            }
            result.attempts = attempt + 1;
            if (is_fair_partition(g, v_prime, parts, slack)) {
                result.ok = true;
                result.parts = std::move(parts);
                return result;
            }
        }
        return result;
    }

    auto is_hamilton_cycle(const SimpleGraph & g, const std::vector<VertexId> & cycle) -> bool
    {
        const int n = g.order();
        if (n < 3 || static_cast<int>(cycle.size()) != n)
            return false;
        std::vector<char> seen(n, 0);
        for (auto v : cycle) {
            if (v < 0 || v >= n || seen[v])
                return false;
            seen[v] = 1;
        }
        for (int i = 0 ; i < n ; ++i)
            if (! g.adjacent(cycle[i], cycle[(i + 1) % n]))
                return false;
        return true;
    }

    auto find_hamilton_cycle(const SimpleGraph & g, int restarts, std::uint64_t seed) -> std::optional<std::vector<VertexId>>
    {
        const int n = g.order();
        if (n < 3)
            throw PreconditionError("Hamilton cycle search needs at least 3 vertices");
        if (g.min_degree() < 2 || ! is_connected(g))
            return std::nullopt;

        Rng rng(seed);
        const std::int64_t step_cap = 40 * std::int64_t(n) * n + 1000;
        std::vector<VertexId> path, options;
        std::vector<int> pos(n, -1);

        for (int attempt = 0 ; attempt < std::max(1, restarts) ; ++attempt) {
            path.clear();
            std::fill(pos.begin(), pos.end(), -1);
            VertexId start = static_cast<VertexId>(rng.below(n));
            path.push_back(start);
            pos[start] = 0;

            for (std::int64_t step = 0 ; step < step_cap ; ++step) {
                VertexId end = path.back();
                options.clear();
                for (auto w : g.neighbours(end))
                    if (pos[w] < 0)
                        options.push_back(w);
                if (! options.empty()) {
                    VertexId w = options[rng.below(options.size())];
                    pos[w] = static_cast<int>(path.size());
                    path.push_back(w);
                    continue;
                }

                if (static_cast<int>(path.size()) == n && g.adjacent(end, path.front())) {
                    if (! is_hamilton_cycle(g, path))
                        throw InvariantViolation("rotation-extension produced an invalid cycle");
                    return path;
                }

                // the other end may have room to grow
                if (rng.coin() && static_cast<int>(path.size()) < n) {
                    std::reverse(path.begin(), path.end());
                    for (int i = 0 ; i < static_cast<int>(path.size()) ; ++i)
                        pos[path[i]] = i;
                    continue;
                }

                // rotation: pick w on the path adjacent to the end and reverse
                // the segment after it
                options.clear();
                int last = static_cast<int>(path.size()) - 1;
                for (auto w : g.neighbours(end))
                    if (pos[w] >= 0 && pos[w] < last - 1)
                        options.push_back(w);
                if (options.empty())
                    break;
                int i = pos[options[rng.below(options.size())]];
                std::reverse(path.begin() + i + 1, path.end());
                for (int j = i + 1 ; j <= last ; ++j)
                    pos[path[j]] = j;
            }
        }
        return std::nullopt;
    }

    auto cycle_list_is_valid(const SimpleGraph & g, const CycleList & list, const SimpleGraph & leftover) -> bool
    {
        if (list.cycles.size() != list.hamilton.size() || leftover.order() != g.order())
            return false;
        std::vector<char> used(g.size(), 0);
        auto take = [&] (VertexId u, VertexId v) {
            int idx = g.edge_index(u, v);
            if (idx < 0 || used[idx])
                return false;
            used[idx] = 1;
            return true;
        };
        for (std::size_t c = 0 ; c < list.cycles.size() ; ++c) {
            auto & cyc = list.cycles[c];
            if (cyc.size() < 3)
                return false;
            std::set<VertexId> distinct(cyc.begin(), cyc.end());
            if (distinct.size() != cyc.size())
                return false;
            if (list.hamilton[c] != (static_cast<int>(cyc.size()) == g.order()))
                return false;
            for (std::size_t i = 0 ; i < cyc.size() ; ++i)
                if (! take(cyc[i], cyc[(i + 1) % cyc.size()]))
                    return false;
        }
        for (auto & e : leftover.edges())
            if (! take(e.u, e.v))
                return false;
        return std::all_of(used.begin(), used.end(), [] (char c) { return c == 1; });
    }

    namespace
    {
        auto gap_of(const HostView & h) -> int
        {
            int hi = 0, lo = h.order();
            for (VertexId v = 0 ; v < h.order() ; ++v) {
                hi = std::max(hi, h.degree(v));
                lo = std::min(lo, h.degree(v));
            }
            return hi - lo;
        }

        auto complement_of(int n, const VertexSet & part) -> VertexSet
        {
            std::vector<char> in(n, 0);
            for (auto v : part)
                in[v] = 1;
            VertexSet out;
            for (VertexId v = 0 ; v < n ; ++v)
                if (! in[v])
                    out.push_back(v);
            return out;
        }

        // Hamilton cycle of cur[keep], in host labels, removed from cur
        auto extract_cycle(HostView & cur, const VertexSet & keep, int restarts, std::uint64_t seed)
            -> std::optional<std::vector<VertexId>>
        {
            if (keep.size() < 3)
                return std::nullopt;
            auto sub = induced(cur.to_graph(), keep);
            auto cycle = find_hamilton_cycle(sub, restarts, seed);
            if (! cycle)
                return std::nullopt;
            for (auto & v : *cycle)
                v = keep[v];
            for (std::size_t i = 0 ; i < cycle->size() ; ++i)
                cur.remove_edge((*cycle)[i], (*cycle)[(i + 1) % cycle->size()]);
            return cycle;
        }
    }

    auto decompose_long_cycles(const SimpleGraph & g, const CycleDecompParams & params) -> CycleDecompResult
    {
        const int n = g.order(), r = params.r;
        if (r < 2)
            throw PreconditionError("r must be at least 2");
        if (n % 2 == 0)
            throw PreconditionError("cycle decomposition needs an odd number of vertices, got " + std::to_string(n));
        for (VertexId v = 0 ; v < n ; ++v)
            if (g.degree(v) % 2)
                throw PreconditionError("graph is not Eulerian: vertex " + std::to_string(v) + " has odd degree");

        const std::int64_t slack = params.fair_slack >= 0 ? params.fair_slack : default_fair_slack(n);
        CycleDecompResult result;
        HostView cur(g);
        std::uint64_t draws = 0;
        auto next_seed = [&] { return mix_seed(params.seed, draws++); };

        result.initial_gap = gap_of(cur);
        result.gap_history.push_back(result.initial_gap);

        auto state = [&] (const std::string & what) {
            return what + " in iteration " + std::to_string(result.iterations) + " (gap " + std::to_string(gap_of(cur))
                + ", " + std::to_string(result.cycles.cycles.size()) + " cycles so far)";
        };

        auto push_cycle = [&] (std::vector<VertexId> c) {
            result.cycles.hamilton.push_back(static_cast<int>(c.size()) == n);
            result.cycles.cycles.push_back(std::move(c));
        };

        while (gap_of(cur) > 0) {
            int top = 0;
            for (VertexId v = 0 ; v < n ; ++v)
                top = std::max(top, cur.degree(v));
            VertexSet m_set, z_set;
            for (VertexId v = 0 ; v < n ; ++v)
                (cur.degree(v) == top ? m_set : z_set).push_back(v);
            VertexId x = m_set.front();
            bool even = m_set.size() % 2 == 0;
            VertexSet z_prime = z_set;
            if (even)
                z_prime = normalise([&] { auto s = z_set; s.push_back(x); return s; }());

            std::vector<int> before(n);
            for (VertexId v = 0 ; v < n ; ++v)
                before[v] = cur.degree(v);
            int gap_before = gap_of(cur);

            auto rounds = std::vector<VertexSet>{ z_prime };
            if (even)
                rounds.push_back(complement_of(n, { x }));

            for (auto & base : rounds) {
                auto fair = fair_partition(g, base, r, slack, next_seed());
                if (! fair.ok) {
                    result.failure = state("no fair partition found");
                    result.leftover = cur.to_graph();
                    return result;
                }
                for (int t = 0 ; t < r ; ++t) {
                    auto keep = complement_of(n, fair.parts[t]);
                    auto cycle = extract_cycle(cur, keep, params.hamilton_restarts, next_seed());
                    if (! cycle) {
                        result.failure = state("Hamilton heuristic failed on part " + std::to_string(t));
                        result.leftover = cur.to_graph();
                        return result;
                    }
                    push_cycle(std::move(*cycle));
                }
            }

            std::vector<char> in_m(n, 0);
            for (auto v : m_set)
                in_m[v] = 1;
            for (VertexId v = 0 ; v < n ; ++v) {
                int drop = before[v] - cur.degree(v);
                int expect = even ? (in_m[v] ? 4 * r - 2 : 4 * r - 4) : (in_m[v] ? 2 * r : 2 * r - 2);
                if (drop != expect)
                    throw InvariantViolation("degree drop at vertex " + std::to_string(v) + " is " + std::to_string(drop)
                            + ", expected " + std::to_string(expect));
            }
            ++result.iterations;
            result.gap_history.push_back(gap_of(cur));
            if (gap_before - result.gap_history.back() != 2)
                throw InvariantViolation("degree gap did not drop by exactly 2");
        }

        // regular phase: repeated extraction, keeping the best of several runs
        std::optional<HostView> best;
        std::vector<std::vector<VertexId>> best_cycles;
        for (int attempt = 0 ; attempt < std::max(1, params.regular_restarts) ; ++attempt) {
            HostView work = cur;
            std::vector<std::vector<VertexId>> found;
            VertexSet everything(n);
            std::iota(everything.begin(), everything.end(), 0);
            while (work.size() > 0) {
                int top = 0;
                for (VertexId v = 0 ; v < n ; ++v)
                    top = std::max(top, work.degree(v));
                if (top <= params.leftover_threshold)
                    break;
                auto cycle = extract_cycle(work, everything, params.hamilton_restarts, next_seed());
                if (! cycle)
                    break;
                found.push_back(std::move(*cycle));
            }
            if (! best || work.size() < best->size()) {
                best = work;
                best_cycles = std::move(found);
            }
            int top = 0;
            for (VertexId v = 0 ; v < n ; ++v)
                top = std::max(top, best->degree(v));
            if (top <= params.leftover_threshold)
                break;
        }
        for (auto & c : best_cycles)
            push_cycle(std::move(c));
        result.leftover = best->to_graph();

        if (! cycle_list_is_valid(g, result.cycles, result.leftover))
            throw InvariantViolation("cycle decomposition failed re-verification");
        result.ok = true;
        return result;
    }

    auto seagull_decompose(const BipartitionView & view) -> std::vector<Flock>
    {
        const auto & g = *view.host;
        std::vector<char> in_a(g.order(), 0);
        for (auto v : view.a)
            in_a[v] = 1;

        std::vector<Seagull> gulls;
        for (auto b : view.b) {
            VertexSet wings;
            for (auto w : g.neighbours(b))
                if (in_a[w])
                    wings.push_back(w);
            if (wings.size() % 2)
                throw PreconditionError("vertex " + std::to_string(b) + " of B has odd degree " + std::to_string(wings.size()));
            for (std::size_t i = 0 ; i < wings.size() ; i += 2)
                gulls.push_back({ wings[i], b, wings[i + 1] });
        }

        const int s = static_cast<int>(gulls.size());
        std::vector<std::vector<int>> at(g.order());
        for (int i = 0 ; i < s ; ++i)
            for (auto v : { gulls[i].wing1, gulls[i].centre, gulls[i].wing2 })
                at[v].push_back(i);
        std::vector<std::vector<int>> conflict(s);
        for (auto & list : at)
            for (auto i : list)
                for (auto j : list)
                    if (i != j)
                        conflict[i].push_back(j);
        for (auto & c : conflict) {
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
        }

        std::vector<int> order(s);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&] (int i, int j) { return conflict[i].size() > conflict[j].size(); });
        std::vector<int> colour(s, -1);
        int colours = 0;
        for (auto i : order) {
            std::vector<char> taken(conflict[i].size() + 1, 0);
            for (auto j : conflict[i])
                if (colour[j] >= 0 && colour[j] < static_cast<int>(taken.size()))
                    taken[colour[j]] = 1;
            int c = 0;
            while (taken[c])
                ++c;
            colour[i] = c;
            colours = std::max(colours, c + 1);
        }

        int bound = 3 * view.max_degree();
        if (colours > bound)
            throw InvariantViolation("seagull colouring used more than 3 delta colours");

        std::vector<Flock> flocks(colours);
        for (int i = 0 ; i < s ; ++i)
            flocks[colour[i]].push_back(gulls[i]);

        for (auto & flock : flocks) {
            std::set<VertexId> seen;
            for (auto & gull : flock)
                for (auto v : { gull.wing1, gull.centre, gull.wing2 })
                    if (! seen.insert(v).second)
                        throw InvariantViolation("seagulls in a flock share a vertex");
        }
        return flocks;
    }

    auto weight_partition(const WeightedSet & ws) -> std::vector<std::vector<int>>
    {
        const int n = static_cast<int>(ws.w.size()), m = ws.m;
        if (m < 1 || m > n)
            throw PreconditionError("weight partition needs 1 <= m <= n");
        Rational total(0);
        for (auto & x : ws.w) {
            if (x < Rational(0) || x > ws.cap)
                throw PreconditionError("weight " + to_string(x) + " outside [0, M]");
            total += x;
        }

        const int size_cap = (2 * n + m - 1) / m;
        const Rational weight_cap = Rational(2) * total / Rational(m) + ws.cap;
        std::vector<std::vector<int>> parts(m);
        std::vector<Rational> weight(m, Rational(0));

        for (int item = 0 ; item < n ; ++item) {
            int pick = -1;
            for (int i = 0 ; i < m ; ++i)
                if (static_cast<int>(parts[i].size()) < size_cap && (pick < 0 || weight[i] < weight[pick]))
                    pick = i;
            if (pick < 0 || weight[pick] + ws.w[item] > weight_cap)
                throw InvariantViolation("weight partition found no admissible part");
            parts[pick].push_back(item);
            weight[pick] += ws.w[item];
        }

        for (int i = 0 ; i < m ; ++i)
            if (static_cast<int>(parts[i].size()) > size_cap || weight[i] > weight_cap)
                throw InvariantViolation("weight partition bound violated");
        return parts;
    }
}
