/* vim: set sw=4 sts=4 et : */

#include <treepack/packer.hh>
#include <treepack/errors.hh>

#include <nlohmann/json.hpp>

#include <algorithm>

namespace treepack
{
    auto to_string(PackMode mode) -> std::string
    {
        return mode == PackMode::pack ? "pack" : "decompose";
    }

    auto parse_pack_mode(const std::string & s) -> PackMode
    {
        if (s == "pack")
            return PackMode::pack;
        if (s == "decompose")
            return PackMode::decompose;
        throw ParseError("unknown mode '" + s + "'");
    }

    namespace
    {
        auto fail(std::string what, int tree_id = -1) -> VerifyResult
        {
            VerifyResult r;
            r.violation = std::move(what);
            r.tree_id = tree_id;
            return r;
        }
    }

    auto verify_certificate(const SimpleGraph & g, const std::vector<RootedForest> & trees,
            const PackingCertificate & cert) -> VerifyResult
    {
        if (cert.graph_hash != canonical_hash(g))
            return fail("graph hash mismatch");

        int n = g.order();
        int count = static_cast<int>(trees.size());
        std::vector<char> seen(count, 0);
        std::vector<int> owner(g.size(), -1);

        for (auto & a : cert.assignments) {
            if (a.tree_id < 0 || a.tree_id >= count)
                return fail("unknown tree id", a.tree_id);
            if (seen[a.tree_id])
                return fail("tree assigned twice", a.tree_id);
            seen[a.tree_id] = 1;

            auto & t = trees[a.tree_id];
            if (static_cast<int>(a.map.size()) != t.order())
                return fail("map length differs from tree order", a.tree_id);

            std::vector<int> used(n, -1);
            for (VertexId x = 0 ; x < t.order() ; ++x) {
                VertexId v = a.map[x];
                if (v < 0 || v >= n) {
                    auto r = fail("map entry out of range", a.tree_id);
                    r.vertex = x;
                    return r;
                }
                if (used[v] >= 0) {
                    auto r = fail("map not injective", a.tree_id);
                    r.vertex = v;
                    return r;
                }
                used[v] = x;
            }

            for (auto & e : t.edges()) {
                VertexId u = a.map[e.u], v = a.map[e.v];
                int index = g.edge_index(u, v);
                if (index < 0) {
                    auto r = fail("tree edge mapped to a non-edge", a.tree_id);
                    r.edge = e;
                    return r;
                }
                if (owner[index] >= 0) {
                    auto r = fail("host edge used twice (also by tree " + std::to_string(owner[index]) + ")", a.tree_id);
                    r.edge = make_edge(u, v);
                    return r;
                }
                owner[index] = a.tree_id;
            }
        }

        for (int i = 0 ; i < count ; ++i)
            if (! seen[i])
                return fail("tree not assigned", i);

        if (cert.mode == PackMode::decompose)
            for (int i = 0 ; i < g.size() ; ++i)
                if (owner[i] < 0) {
                    auto r = fail("host edge not covered");
                    r.edge = g.edges()[i];
                    return r;
                }

        VerifyResult r;
        r.ok = true;
        return r;
    }

    auto certificate_to_json(const PackingCertificate & cert) -> std::string
    {
        nlohmann::json j;
        j["graph_hash"] = cert.graph_hash;
        j["mode"] = to_string(cert.mode);
        j["assignments"] = nlohmann::json::array();
        for (auto & a : cert.assignments)
            j["assignments"].push_back({ { "tree_id", a.tree_id }, { "map", a.map } });
        return j.dump();
    }

    auto certificate_from_json(const std::string & text) -> PackingCertificate
    {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::parse_error & e) {
            throw ParseError(std::string("certificate: ") + e.what());
        }

        PackingCertificate cert;
        try {
            cert.graph_hash = j.at("graph_hash").get<std::string>();
            cert.mode = parse_pack_mode(j.at("mode").get<std::string>());
            for (auto & a : j.at("assignments")) {
                TreeAssignment t;
                t.tree_id = a.at("tree_id").get<int>();
                t.map = a.at("map").get<std::vector<VertexId>>();
                cert.assignments.push_back(std::move(t));
            }
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError(std::string("certificate: ") + e.what());
        }
        return cert;
    }
}
