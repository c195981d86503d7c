/* vim: set sw=4 sts=4 et : */

#include <treepack/diagnostics.hh>
#include <treepack/errors.hh>
#include <treepack/rng.hh>

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <limits>

namespace treepack
{
    namespace
    {
        auto rational_times(const Rational & r, std::int64_t k) -> Rational
        {
            return r * Rational(k);
        }

        auto require_in(const Rational & x, const Rational & lo, bool lo_open, const Rational & hi, const char * what) -> void
        {
            if ((lo_open ? x <= lo : x < lo) || x > hi)
                throw PreconditionError(std::string(what) + " = " + to_string(x) + " is out of range");
        }

        // uniform random subset of {0..n-1} of the given size, sorted
        auto random_subset(Rng & rng, int n, int size) -> VertexSet
        {
            std::vector<int> all(n);
            for (int i = 0 ; i < n ; ++i)
                all[i] = i;
            for (int i = 0 ; i < size ; ++i)
                std::swap(all[i], all[i + rng.below(n - i)]);
            all.resize(size);
            std::sort(all.begin(), all.end());
            return all;
        }

        auto mask_to_set(std::uint64_t mask, const VertexSet & universe) -> VertexSet
        {
            VertexSet s;
            for (std::size_t i = 0 ; i < universe.size() ; ++i)
                if ((mask >> i) & 1)
                    s.push_back(universe[i]);
            return s;
        }

        auto identity_set(int n) -> VertexSet
        {
            VertexSet s(n);
            for (int i = 0 ; i < n ; ++i)
                s[i] = i;
            return s;
        }

        // e(U, V) = sum over u in U of the weight from u into V, which agrees
        // with the overlap formula: an edge inside U ∩ V is seen from both ends
        auto dense_exhaustive(int n, const std::vector<std::vector<std::int64_t>> & w, const DenseParams & params,
                DiagnosticsReport & report) -> void
        {
            int s0 = std::max<std::int64_t>(0, ceil_of(rational_times(params.beta, n)));
            std::uint64_t full = (std::uint64_t(1) << n);
            std::vector<std::int64_t> sum(full, 0), deg(n, 0);

            bool have_min = false;
            std::int64_t min_e = 0, min_ab = 1;
            std::uint64_t min_u = 0, min_v = 0;

            for (std::uint64_t vmask = 1 ; vmask < full ; ++vmask) {
                int b = std::popcount(vmask);
                if (b < s0)
                    continue;
                for (int u = 0 ; u < n ; ++u) {
                    deg[u] = 0;
                    for (int v = 0 ; v < n ; ++v)
                        if ((vmask >> v) & 1)
                            deg[u] += w[u][v];
                }
                for (std::uint64_t umask = 1 ; umask < full ; ++umask) {
                    sum[umask] = sum[umask & (umask - 1)] + deg[std::countr_zero(umask)];
                    int a = std::popcount(umask);
                    if (a < s0)
                        continue;
                    ++report.samples;
                    std::int64_t ab = std::int64_t(a) * b;
                    if (! have_min || sum[umask] * min_ab < min_e * ab) {
                        have_min = true;
                        min_e = sum[umask];
                        min_ab = ab;
                        min_u = umask;
                        min_v = vmask;
                    }
                }
            }

            if (! have_min) {
                report.detail = "no qualifying pair";
                return;
            }

            Rational min_density(min_e, min_ab);
            report.detail = "minimum density " + to_string(min_density);
            if (min_density < params.alpha) {
                auto universe = identity_set(n);
                report.verdict = Verdict::fail;
                report.witness = { mask_to_set(min_u, universe), mask_to_set(min_v, universe) };
            }
        }

        auto dense_sampled(int n, const std::function<std::int64_t (const VertexSet &, const VertexSet &)> & count,
                const DenseParams & params, DiagnosticsReport & report) -> void
        {
            report.mode = CheckMode::sampled;
            int s0 = std::max<std::int64_t>(1, ceil_of(rational_times(params.beta, n)));
            if (s0 > n) {
                report.detail = "no qualifying pair";
                return;
            }
            Rng rng(params.seed);
            for (std::int64_t trial = 0 ; trial < params.trials ; ++trial) {
                int a = static_cast<int>(rng.uniform_int(s0, n)), b = static_cast<int>(rng.uniform_int(s0, n));
                auto u = random_subset(rng, n, a), v = random_subset(rng, n, b);
                ++report.samples;
                Rational density(count(u, v), std::int64_t(a) * b);
                if (density < params.alpha) {
                    report.verdict = Verdict::fail;
                    report.witness = { u, v };
                    report.detail = "density " + to_string(density);
                    return;
                }
            }
        }

        auto validate(const DenseParams & params) -> void
        {
            require_in(params.beta, Rational(0), true, Rational(1), "beta");
            if (params.alpha > Rational(1))
                throw PreconditionError("alpha = " + to_string(params.alpha) + " is out of range");
        }

        auto bfs_ball(const SimpleGraph & g, VertexId v, int radius) -> VertexSet
        {
            auto dist = bfs_distances(g, v, radius);
            VertexSet ball;
            for (int w = 0 ; w < g.order() ; ++w)
                if (dist[w] >= 0)
                    ball.push_back(w);
            return ball;
        }

        auto effective_power(int delta, int k) -> double
        {
            double r = 1.0;
            for (int i = 0 ; i < k ; ++i)
                r *= std::max(2, delta);
            return r;
        }
    }

    auto to_string(Verdict v) -> std::string
    {
        return v == Verdict::pass ? "pass" : "fail";
    }

    auto to_string(CheckMode m) -> std::string
    {
        return m == CheckMode::exhaustive ? "exhaustive" : "sampled";
    }

    auto DiagnosticsReport::summary() const -> std::string
    {
        std::string out;
        if (verdict == Verdict::fail)
            out = "fail";
        else if (mode == CheckMode::sampled)
            out = "no counterexample found in " + std::to_string(samples) + " samples";
        else
            out = "pass";
        if (! detail.empty())
            out += " (" + detail + ")";
        return out;
    }

    auto check_quasi_random(const SimpleGraph & g, const QuasiRandomParams & params) -> DiagnosticsReport
    {
        require_in(params.epsilon, Rational(0), true, Rational(1), "epsilon");
        require_in(params.p, Rational(0), false, Rational(1), "p");
        int n = g.order();
        if (n < 2)
            throw PreconditionError("check_quasi_random needs n >= 2");

        DiagnosticsReport report;
        report.check = "quasi_random";

        Rational centre_deg = params.p * Rational(n);
        Rational centre_codeg = params.p * params.p * Rational(n);
        std::int64_t deg_lo = ceil_of((Rational(1) - params.epsilon) * centre_deg);
        std::int64_t deg_hi = floor_of((Rational(1) + params.epsilon) * centre_deg);
        std::int64_t codeg_lo = ceil_of((Rational(1) - params.epsilon) * centre_codeg);
        std::int64_t codeg_hi = floor_of((Rational(1) + params.epsilon) * centre_codeg);

        for (int v = 0 ; v < n ; ++v) {
            int d = g.degree(v);
            ++report.samples;
            if (d < deg_lo || d > deg_hi) {
                report.verdict = Verdict::fail;
                report.witness = { { v } };
                report.detail = "degree " + std::to_string(d) + " outside [" + std::to_string(deg_lo) + ", " + std::to_string(deg_hi) + "]";
                return report;
            }
        }

        for (int u = 0 ; u < n ; ++u) {
            auto ru = g.row(u);
            for (int v = u + 1 ; v < n ; ++v) {
                auto rv = g.row(v);
                int c = 0;
                for (int w = 0 ; w < g.words() ; ++w)
                    c += std::popcount(ru[w] & rv[w]);
                ++report.samples;
                if (c < codeg_lo || c > codeg_hi) {
                    report.verdict = Verdict::fail;
                    report.witness = { { u, v } };
                    report.detail = "codegree " + std::to_string(c) + " outside [" + std::to_string(codeg_lo) + ", " + std::to_string(codeg_hi) + "]";
                    return report;
                }
            }
        }

        return report;
    }

    auto check_dense(const SimpleGraph & g, const DenseParams & params) -> DiagnosticsReport
    {
        validate(params);
        DiagnosticsReport report;
        report.check = "dense";
        int n = g.order();
        if (n < 1)
            throw PreconditionError("check_dense needs n >= 1");

        if (params.alpha <= Rational(0)) {
            report.detail = "alpha <= 0";
            return report;
        }

        if (n <= params.exhaustive_cap) {
            std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
            for (auto & e : g.edges())
                w[e.u][e.v] = w[e.v][e.u] = 1;
            dense_exhaustive(n, w, params, report);
        }
        else {
            auto count = [&] (const VertexSet & u, const VertexSet & v) -> std::int64_t {
                std::vector<std::uint64_t> vmask(g.words(), 0);
                for (auto x : v)
                    vmask[x >> 6] |= std::uint64_t(1) << (x & 63);
                std::int64_t total = 0;
                for (auto x : u) {
                    auto r = g.row(x);
                    for (int i = 0 ; i < g.words() ; ++i)
                        total += std::popcount(r[i] & vmask[i]);
                }
                return total;
            };
            dense_sampled(n, count, params, report);
        }
        return report;
    }

    auto check_dense(const MultiGraph & g, const DenseParams & params) -> DiagnosticsReport
    {
        validate(params);
        DiagnosticsReport report;
        report.check = "dense";
        int n = g.order();
        if (n < 1)
            throw PreconditionError("check_dense needs n >= 1");

        if (params.alpha <= Rational(0)) {
            report.detail = "alpha <= 0";
            return report;
        }

        if (n <= params.exhaustive_cap) {
            std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
            for (auto & [e, m] : g.edges())
                w[e.u][e.v] = w[e.v][e.u] = m;
            dense_exhaustive(n, w, params, report);
        }
        else {
            auto count = [&] (const VertexSet & u, const VertexSet & v) -> std::int64_t {
                return pair_edge_count(g, u, v);
            };
            dense_sampled(n, count, params, report);
        }
        return report;
    }

    auto check_regular_pair(const BipartitionView & view, const RegularityParams & params) -> DiagnosticsReport
    {
        require_in(params.epsilon, Rational(0), true, Rational(1), "epsilon");
        const auto & g = *view.host;
        const auto & sa = view.a;
        const auto & sb = view.b;
        int na = static_cast<int>(sa.size()), nb = static_cast<int>(sb.size());
        if (na < 1 || nb < 1)
            throw PreconditionError("check_regular_pair needs nonempty sides");

        Rational d = params.d ? *params.d : Rational(view.edge_count(), std::int64_t(na) * nb);
        require_in(d, Rational(0), false, Rational(1), "d");
        const Rational & eps = params.epsilon;

        DiagnosticsReport report;
        report.check = params.super ? "super_regular_pair" : "regular_pair";

        if (params.super) {
            auto window = [&] (VertexId v, const VertexSet & other) -> bool {
                Rational deg(degree_into(g, v, other));
                Rational size(static_cast<std::int64_t>(other.size()));
                return within(deg, d * size, eps * size);
            };
            for (auto a : sa)
                if (! window(a, sb)) {
                    report.verdict = Verdict::fail;
                    report.witness = { { a } };
                    report.detail = "degree of " + std::to_string(a) + " outside the window";
                    return report;
                }
            for (auto b : sb)
                if (! window(b, sa)) {
                    report.verdict = Verdict::fail;
                    report.witness = { { b } };
                    report.detail = "degree of " + std::to_string(b) + " outside the window";
                    return report;
                }
        }

        int a0 = std::max<std::int64_t>(1, ceil_of(eps * Rational(na)));
        int b0 = std::max<std::int64_t>(1, ceil_of(eps * Rational(nb)));

        // admissible edge counts for each (|A'|, |B'|): (d - eps) ab < e < (d + eps) ab
        std::vector<std::vector<std::int64_t>> lo(na + 1, std::vector<std::int64_t>(nb + 1)), hi = lo;
        for (int a = 1 ; a <= na ; ++a)
            for (int b = 1 ; b <= nb ; ++b) {
                Rational ab(std::int64_t(a) * b);
                lo[a][b] = floor_of((d - eps) * ab) + 1;
                hi[a][b] = ceil_of((d + eps) * ab) - 1;
            }

        auto fail_with = [&] (VertexSet x, VertexSet y, std::int64_t e) {
            report.verdict = Verdict::fail;
            report.detail = "sub-pair density " + to_string(Rational(e, std::int64_t(x.size()) * std::int64_t(y.size()))) + " vs " + to_string(d);
            report.witness = { std::move(x), std::move(y) };
        };

        if (na + nb <= params.exhaustive_cap) {
            std::uint64_t full_a = std::uint64_t(1) << na, full_b = std::uint64_t(1) << nb;
            std::vector<std::int64_t> sum(full_a, 0), deg(na, 0);
            for (std::uint64_t bmask = 1 ; bmask < full_b ; ++bmask) {
                int b = std::popcount(bmask);
                if (b < b0)
                    continue;
                for (int i = 0 ; i < na ; ++i) {
                    deg[i] = 0;
                    for (int j = 0 ; j < nb ; ++j)
                        if (((bmask >> j) & 1) && g.adjacent(sa[i], sb[j]))
                            ++deg[i];
                }
                for (std::uint64_t amask = 1 ; amask < full_a ; ++amask) {
                    sum[amask] = sum[amask & (amask - 1)] + deg[std::countr_zero(amask)];
                    int a = std::popcount(amask);
                    if (a < a0)
                        continue;
                    ++report.samples;
                    if (sum[amask] < lo[a][b] || sum[amask] > hi[a][b]) {
                        fail_with(mask_to_set(amask, sa), mask_to_set(bmask, sb), sum[amask]);
                        return report;
                    }
                }
            }
        }
        else {
            report.mode = CheckMode::sampled;
            Rng rng(params.seed);
            for (std::int64_t trial = 0 ; trial < params.trials ; ++trial) {
                int a = static_cast<int>(rng.uniform_int(a0, na)), b = static_cast<int>(rng.uniform_int(b0, nb));
                VertexSet x, y;
                for (auto i : random_subset(rng, na, a))
                    x.push_back(sa[i]);
                for (auto j : random_subset(rng, nb, b))
                    y.push_back(sb[j]);
                std::int64_t e = 0;
                for (auto u : x)
                    e += degree_into(g, u, y);
                ++report.samples;
                if (e < lo[a][b] || e > hi[a][b]) {
                    fail_with(std::move(x), std::move(y), e);
                    return report;
                }
            }
        }
        return report;
    }

    auto robust_neighbourhood(const SimpleGraph & g, const VertexSet & s, const Rational & nu) -> VertexSet
    {
        std::int64_t threshold = ceil_of(nu * Rational(g.order()));
        VertexSet result;
        if (s.empty() && threshold > 0)
            return result;
        for (int v = 0 ; v < g.order() ; ++v)
            if (degree_into(g, v, s) >= threshold)
                result.push_back(v);
        return result;
    }

    auto check_robust_expander(const SimpleGraph & g, const ExpanderParams & params) -> DiagnosticsReport
    {
        if (! (params.nu > Rational(0) && params.nu <= params.tau && params.tau < Rational(1)))
            throw PreconditionError("expander parameters need 0 < nu <= tau < 1");
        int n = g.order();
        if (n < 2)
            throw PreconditionError("check_robust_expander needs n >= 2");

        DiagnosticsReport report;
        report.check = "robust_expander";

        std::int64_t s_lo = std::max<std::int64_t>(0, ceil_of(params.tau * Rational(n)));
        std::int64_t s_hi = floor_of((Rational(1) - params.tau) * Rational(n));
        std::int64_t threshold = ceil_of(params.nu * Rational(n));
        if (s_lo > s_hi) {
            report.detail = "no qualifying set";
            return report;
        }

        auto rn_size = [&] (const VertexSet & s) -> std::int64_t {
            return static_cast<std::int64_t>(robust_neighbourhood(g, s, params.nu).size());
        };

        if (n <= std::min(params.exhaustive_cap, 62)) {
            std::vector<std::uint64_t> rows(n, 0);
            for (int v = 0 ; v < n ; ++v)
                rows[v] = g.row(v)[0];
            for (std::int64_t s = s_lo ; s <= s_hi ; ++s) {
                if (s == 0)
                    continue;
                std::uint64_t limit = std::uint64_t(1) << n;
                for (std::uint64_t mask = (std::uint64_t(1) << s) - 1 ; mask < limit ; ) {
                    std::int64_t rn = 0;
                    for (int v = 0 ; v < n ; ++v)
                        if (std::popcount(rows[v] & mask) >= threshold)
                            ++rn;
                    ++report.samples;
                    if (rn - s < threshold) {
                        report.verdict = Verdict::fail;
                        report.witness = { mask_to_set(mask, identity_set(n)) };
                        report.detail = "|RN(S)| = " + std::to_string(rn) + " for |S| = " + std::to_string(s);
                        return report;
                    }
                    // next mask with the same popcount
                    std::uint64_t c = mask & -mask, r = mask + c;
                    mask = (((r ^ mask) >> 2) / c) | r;
                }
            }
        }
        else {
            report.mode = CheckMode::sampled;
            Rng rng(params.seed);
            for (std::int64_t trial = 0 ; trial < params.trials ; ++trial) {
                int s = static_cast<int>(rng.uniform_int(std::max<std::int64_t>(1, s_lo), std::max<std::int64_t>(1, s_hi)));
                auto set = random_subset(rng, n, s);
                ++report.samples;
                auto rn = rn_size(set);
                if (rn - s < threshold) {
                    report.verdict = Verdict::fail;
                    report.witness = { set };
                    report.detail = "|RN(S)| = " + std::to_string(rn) + " for |S| = " + std::to_string(s);
                    return report;
                }
            }
        }
        return report;
    }

    auto is_k_independent(const SimpleGraph & g, int k, const VertexSet & set, std::pair<VertexId, VertexId> * violation) -> bool
    {
        std::vector<char> in(g.order(), 0);
        for (auto v : set)
            in[v] = 1;
        for (auto v : set) {
            auto dist = bfs_distances(g, v, k - 1);
            for (int w = 0 ; w < g.order() ; ++w)
                if (w != v && in[w] && dist[w] >= 0 && dist[w] < k) {
                    if (violation)
                        *violation = { std::min(v, w), std::max(v, w) };
                    return false;
                }
        }
        return true;
    }

    auto is_k_independent_matching(const SimpleGraph & g, int k, const std::vector<Edge> & matching) -> bool
    {
        int n = g.order();
        std::vector<int> owner(n, -1);
        for (int i = 0 ; i < static_cast<int>(matching.size()) ; ++i) {
            for (auto x : { matching[i].u, matching[i].v }) {
                if (owner[x] >= 0)
                    return false;
                owner[x] = i;
            }
        }
        for (int i = 0 ; i < static_cast<int>(matching.size()) ; ++i)
            for (auto x : { matching[i].u, matching[i].v }) {
                auto dist = bfs_distances(g, x, k - 1);
                for (int w = 0 ; w < n ; ++w)
                    if (dist[w] >= 0 && dist[w] < k && owner[w] >= 0 && owner[w] != i)
                        return false;
            }
        return true;
    }

    auto greedy_k_independent_set(const SimpleGraph & g, int k, const VertexSet & x, const VertexSet & z) -> VertexSet
    {
        if (k < 1)
            throw PreconditionError("k must be at least 1");
        auto xs = normalise(x), zs = normalise(z);
        for (auto v : zs)
            if (v < 0 || v >= g.order())
                throw PreconditionError("candidate vertex out of range");
        if (! std::includes(zs.begin(), zs.end(), xs.begin(), xs.end()))
            throw PreconditionError("seed set is not contained in the candidate set");
        std::pair<VertexId, VertexId> bad;
        if (! is_k_independent(g, k, xs, &bad))
            throw PreconditionError("seed set is not " + std::to_string(k) + "-independent: vertices "
                    + std::to_string(bad.first) + " and " + std::to_string(bad.second) + " are too close");

        std::vector<char> blocked(g.order(), 0);
        VertexSet y = xs;
        for (auto v : xs)
            for (auto w : bfs_ball(g, v, k - 1))
                blocked[w] = 1;
        for (auto v : zs) {
            if (blocked[v])
                continue;
            y.push_back(v);
            for (auto w : bfs_ball(g, v, k - 1))
                blocked[w] = 1;
        }
        y = normalise(std::move(y));

        if (! is_k_independent(g, k, y))
            throw InvariantViolation("greedy k-independent set is not k-independent");
        if (static_cast<double>(y.size()) * effective_power(g.max_degree(), k) < static_cast<double>(zs.size()))
            throw InvariantViolation("greedy k-independent set is below the size bound");
        return y;
    }

    auto greedy_k_independent_matching(const SimpleGraph & g, int k) -> std::vector<Edge>
    {
        if (k < 1)
            throw PreconditionError("k must be at least 1");
        if (g.size() == 0)
            throw PreconditionError("greedy_k_independent_matching needs at least one edge");

        int n = g.order();
        constexpr int far = std::numeric_limits<int>::max();
        std::vector<int> dist_to_m(n, far);
        std::vector<Edge> m;

        for (auto & e : g.edges()) {
            if (dist_to_m[e.u] < k || dist_to_m[e.v] < k)
                continue;
            m.push_back(e);
            for (auto src : { e.u, e.v }) {
                auto dist = bfs_distances(g, src, k - 1);
                for (int w = 0 ; w < n ; ++w)
                    if (dist[w] >= 0)
                        dist_to_m[w] = std::min(dist_to_m[w], dist[w]);
            }
        }

        if (! is_k_independent_matching(g, k, m))
            throw InvariantViolation("greedy matching is not k-independent");
        double power = 1.0;
        for (int i = 0 ; i < k ; ++i)
            power *= g.max_degree();
        if (2.0 * power * static_cast<double>(m.size()) < static_cast<double>(g.size()))
            throw InvariantViolation("greedy matching is below the size bound");
        return m;
    }
}
