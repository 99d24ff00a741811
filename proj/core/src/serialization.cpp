#include "twlab/serialization.hpp"

#include <algorithm>

#include <json.hpp>

#include "twlab/errors.hpp"

namespace twlab {

namespace {

using json = nlohmann::ordered_json;

json parse(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), 0);
    }
}

void expect_type(const json& doc, const char* type)
{
    if (!doc.is_object() || doc.value("type", std::string{}) != type) {
        throw ParseError(std::string("expected a JSON object with \"type\": \"") + type + "\"", 0);
    }
}

template <typename F>
auto guarded(F&& f)
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(e.what(), 0);
    }
}

} // namespace

std::string to_json(const CspInstance& c)
{
    json constraints = json::array();
    for (const auto& constraint : c.constraints()) {
        json forbidden = json::array();
        for (auto code : constraint.forbidden) {
            forbidden.push_back(decode_tuple(code, c.order(), c.domain_size()));
        }
        constraints.push_back({{"scope", constraint.scope}, {"forbidden", std::move(forbidden)}});
    }
    json doc = {{"type", "csp"},
                {"n", c.variable_count()},
                {"domain_size", c.domain_size()},
                {"order", c.order()},
                {"constraints", std::move(constraints)}};
    return doc.dump(2) + "\n";
}

std::string to_json(const BayesNet& b)
{
    json nodes = json::array();
    for (Vertex v = 0; v < b.node_count(); ++v) {
        const auto width = static_cast<std::size_t>(b.domain_size(v));
        const auto table = b.cpt(v);
        json rows = json::array();
        for (std::size_t r = 0; r < b.row_count(v); ++r) {
            rows.push_back(std::vector<double>(table.begin() + static_cast<std::ptrdiff_t>(r * width),
                                               table.begin() + static_cast<std::ptrdiff_t>((r + 1) * width)));
        }
        const auto parents = b.structure().parents(v);
        nodes.push_back({{"id", v}, {"parents", std::vector<Vertex>(parents.begin(), parents.end())}, {"cpt", std::move(rows)}});
    }
    json doc = {{"type", "bayesnet"},
                {"n", b.node_count()},
                {"domain_sizes", std::vector<int>(b.domain_sizes().begin(), b.domain_sizes().end())},
                {"nodes", std::move(nodes)}};
    return doc.dump(2) + "\n";
}

std::string to_json(const DiGraph& g)
{
    json arcs = json::array();
    for (const auto& [p, c] : g.arcs()) {
        arcs.push_back({p, c});
    }
    json doc = {{"type", "digraph"}, {"n", g.vertex_count()}, {"arcs", std::move(arcs)}};
    return doc.dump(2) + "\n";
}

CspInstance csp_from_json(std::string_view text)
{
    const json doc = parse(text);
    expect_type(doc, "csp");
    return guarded([&] {
        const int n = doc.at("n").get<int>();
        const int domain = doc.at("domain_size").get<int>();
        const int order = doc.at("order").get<int>();
        std::vector<Constraint> constraints;
        for (const auto& item : doc.at("constraints")) {
            Constraint c;
            c.scope = item.at("scope").get<std::vector<Vertex>>();
            for (const auto& tuple : item.at("forbidden")) {
                const auto values = tuple.get<std::vector<int>>();
                if (values.size() != static_cast<std::size_t>(order)) {
                    throw InvalidArgument("forbidden tuple arity differs from the constraint order");
                }
                for (int x : values) {
                    if (x < 0 || x >= domain) {
                        throw InvalidArgument("forbidden tuple value outside the domain");
                    }
                }
                c.forbidden.push_back(encode_tuple(values, domain));
            }
            // A scope listed unsorted would silently permute the tuples.
            if (!std::is_sorted(c.scope.begin(), c.scope.end())) {
                throw InvalidArgument("constraint scopes must be listed in increasing order");
            }
            constraints.push_back(std::move(c));
        }
        return CspInstance(n, domain, order, std::move(constraints));
    });
}

BayesNet bayesnet_from_json(std::string_view text)
{
    const json doc = parse(text);
    expect_type(doc, "bayesnet");
    return guarded([&] {
        const int n = doc.at("n").get<int>();
        auto sizes = doc.at("domain_sizes").get<std::vector<int>>();
        std::vector<Arc> arcs;
        std::vector<std::vector<double>> cpts(static_cast<std::size_t>(std::max(n, 0)));
        std::vector<char> seen(cpts.size(), 0);
        for (const auto& node : doc.at("nodes")) {
            const int id = node.at("id").get<int>();
            if (id < 0 || id >= n || seen[static_cast<std::size_t>(id)]) {
                throw InvalidArgument("node ids must be distinct and within 0..n-1");
            }
            seen[static_cast<std::size_t>(id)] = 1;
            auto parents = node.at("parents").get<std::vector<Vertex>>();
            if (!std::is_sorted(parents.begin(), parents.end())) {
                throw InvalidArgument("parents must be listed in increasing order");
            }
            for (Vertex p : parents) {
                arcs.emplace_back(p, id);
            }
            auto& table = cpts[static_cast<std::size_t>(id)];
            for (const auto& row : node.at("cpt")) {
                for (double x : row.get<std::vector<double>>()) {
                    table.push_back(x);
                }
            }
        }
        return BayesNet(DiGraph(n, std::move(arcs)), std::move(sizes), std::move(cpts));
    });
}

DiGraph digraph_from_json(std::string_view text)
{
    const json doc = parse(text);
    expect_type(doc, "digraph");
    return guarded([&] {
        std::vector<Arc> arcs;
        for (const auto& arc : doc.at("arcs")) {
            arcs.emplace_back(arc.at(0).get<int>(), arc.at(1).get<int>());
        }
        return DiGraph(doc.at("n").get<int>(), std::move(arcs));
    });
}

std::string json_document_type(std::string_view text)
{
    const json doc = parse(text);
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
        throw ParseError("JSON document has no \"type\" field", 0);
    }
    return doc["type"].get<std::string>();
}

} // namespace twlab
