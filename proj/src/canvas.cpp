#include "harmonica/canvas.hpp"

#include <algorithm>
#include <functional>

namespace harmonica {

bool subgraph_list_colorable(const SubgraphRef& s, const ListAssignment& lists) {
    std::vector<VertexId> verts(s.vertices.begin(), s.vertices.end());
    std::map<VertexId, Color> chosen;
    // Plain backtracking; |S| stays small by construction.
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == verts.size()) return true;
        VertexId v = verts[i];
        if (!lists.has(v)) return false;
        for (Color c : lists.at(v)) {
            bool clash = false;
            for (const Edge& e : s.edges) {
                VertexId other;
                if (e.first == v) other = e.second;
                else if (e.second == v) other = e.first;
                else continue;
                auto it = chosen.find(other);
                if (it != chosen.end() && it->second == c) { clash = true; break; }
            }
            if (clash) continue;
            chosen[v] = c;
            if (go(i + 1)) return true;
            chosen.erase(v);
        }
        return false;
    };
    return go(0);
}

CanvasCheck validate_canvas(const PlaneGraph& graph, const SubgraphRef& s,
                            const ListAssignment& lists) {
    std::vector<Violation> violations;
    const std::set<VertexId> outer = graph.outer_vertices();
    const std::set<Edge> outer_edges = graph.outer_edge_set();

    for (VertexId v : graph.vertices()) {
        if (!lists.has(v)) {
            violations.push_back({"missing_or_empty_list", v, std::nullopt});
            continue;
        }
        std::size_t size = lists.at(v).size();
        if (!outer.count(v)) {
            if (size < 5) violations.push_back({"interior_vertex_below_5", v, std::nullopt});
        } else if (!s.vertices.count(v)) {
            if (size < 3) violations.push_back({"outer_vertex_below_3", v, std::nullopt});
        }
    }

    for (VertexId v : s.vertices) {
        if (!graph.has_vertex(v))
            violations.push_back({"s_vertex_not_in_graph", v, std::nullopt});
        else if (!outer.count(v))
            violations.push_back({"s_vertex_not_on_boundary", v, std::nullopt});
    }
    for (const Edge& e : s.edges) {
        if (!s.vertices.count(e.first) || !s.vertices.count(e.second)) {
            violations.push_back({"s_edge_endpoint_missing", std::nullopt, e});
            continue;
        }
        if (!graph.has_vertex(e.first) || !graph.has_vertex(e.second) ||
            !graph.has_edge(e.first, e.second)) {
            violations.push_back({"s_edge_not_in_graph", std::nullopt, e});
            continue;
        }
        if (!outer_edges.count(edge_key(e.first, e.second)))
            violations.push_back({"s_edge_not_on_boundary", std::nullopt, e});
    }

    bool s_well_formed =
        std::none_of(violations.begin(), violations.end(), [](const Violation& v) {
            return v.clause.rfind("s_", 0) == 0 || v.clause == "missing_or_empty_list";
        });
    if (s_well_formed && !subgraph_list_colorable(s, lists))
        violations.push_back({"s_not_colorable", std::nullopt, std::nullopt});

    CanvasCheck out;
    out.violations = std::move(violations);
    if (out.violations.empty()) out.canvas = Canvas{graph, s, lists};
    return out;
}

bool contains_canvas(const Canvas& t, const Canvas& t_prime) {
    for (VertexId v : t_prime.graph.vertices())
        if (!t.graph.has_vertex(v)) return false;
    for (const Edge& e : t_prime.graph.edge_set())
        if (!t.graph.has_edge(e.first, e.second)) return false;
    if (!(t.s == t_prime.s)) return false;
    for (VertexId v : t_prime.graph.vertices()) {
        bool a = t.lists.has(v), b = t_prime.lists.has(v);
        if (a != b) return false;
        if (a && t.lists.at(v) != t_prime.lists.at(v)) return false;
    }
    return true;
}

} // namespace harmonica
