/* vim: set sw=4 sts=4 et : */

#include <treepack/forest.hh>
#include <treepack/errors.hh>

#include <nlohmann/json.hpp>

#include <istream>
#include <ostream>

namespace treepack
{
    auto read_forests(std::istream & in) -> std::vector<RootedForest>
    {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        }
        catch (const nlohmann::json::parse_error & e) {
            throw ParseError(std::string("forest file: ") + e.what());
        }

        std::vector<RootedForest> result;
        std::vector<char> filled;
        try {
            auto & list = j.at("trees");
            result.resize(list.size());
            filled.assign(list.size(), 0);
            for (auto & t : list) {
                int id = t.at("id").get<int>();
                if (id < 0 || id >= static_cast<int>(list.size()) || filled[id])
                    throw ParseError("forest file: tree ids must be distinct and in 0.." + std::to_string(list.size() - 1));
                int n = t.at("n").get<int>();
                std::vector<Edge> edges;
                for (auto & e : t.at("edges")) {
                    if (! e.is_array() || e.size() != 2)
                        throw ParseError("forest file: tree " + std::to_string(id) + " has a malformed edge");
                    edges.push_back(make_edge(e[0].get<int>(), e[1].get<int>()));
                }
                std::vector<VertexId> roots;
                if (t.contains("roots"))
                    roots = t.at("roots").get<std::vector<VertexId>>();
                int delta = t.contains("delta") ? t.at("delta").get<int>() : -1;
                RootedForest f;
                try {
                    f = RootedForest::from_edges(n, edges, roots, delta);
                }
                catch (const PreconditionError & e) {
                    throw ParseError("forest file: tree " + std::to_string(id) + ": " + e.what());
                }
                if (delta >= 0 && f.max_degree() > delta)
                    throw ParseError("forest file: tree " + std::to_string(id) + " exceeds its degree bound " + std::to_string(delta));
                result[id] = std::move(f);
                filled[id] = 1;
            }
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError(std::string("forest file: ") + e.what());
        }
        return result;
    }

    auto write_forests(std::ostream & out, const std::vector<RootedForest> & forests) -> void
    {
        nlohmann::json list = nlohmann::json::array();
        for (std::size_t i = 0 ; i < forests.size() ; ++i) {
            auto & f = forests[i];
            nlohmann::json edges = nlohmann::json::array();
            for (auto & e : f.edges())
                edges.push_back({ e.u, e.v });
            nlohmann::json t{ { "id", i }, { "n", f.order() }, { "edges", edges }, { "roots", f.roots() } };
            if (f.declared_delta_bound() >= 0)
                t["delta"] = f.declared_delta_bound();
            list.push_back(std::move(t));
        }
        out << nlohmann::json{ { "trees", list } }.dump() << "\n";
    }
}
