#include "harmonica/solver.hpp"

#include <algorithm>
#include <cassert>

namespace harmonica {

namespace {

void check_pins(const PlaneGraph& graph, const ListAssignment& lists, const Coloring& pinned) {
    for (const auto& [v, c] : pinned) {
        if (!graph.has_vertex(v))
            throw SolverError(SolverError::Kind::PinnedConflict,
                              "pinned vertex " + std::to_string(v) + " not in graph");
        if (!lists.has(v) || !lists.at(v).count(c))
            throw SolverError(SolverError::Kind::PinnedConflict,
                              "pinned color not in list of vertex " + std::to_string(v));
    }
    for (const auto& [v, c] : pinned)
        for (VertexId w : graph.rotation(v)) {
            auto it = pinned.find(w);
            if (it != pinned.end() && it->second == c)
                throw SolverError(SolverError::Kind::PinnedConflict,
                                  "pinned colors clash on edge " + std::to_string(v) + "-" +
                                      std::to_string(w));
        }
}

void require_lists(const PlaneGraph& graph, const ListAssignment& lists) {
    for (VertexId v : graph.vertices())
        if (!lists.has(v))
            throw SolverError(SolverError::Kind::PreconditionViolated,
                              "vertex " + std::to_string(v) + " has no list");
}

struct Search {
    const PlaneGraph& graph;
    std::vector<VertexId> verts;
    std::map<VertexId, std::vector<Color>> domain;
    Coloring assigned;

    bool consistent(VertexId v, Color c) const {
        for (VertexId w : graph.rotation(v)) {
            auto it = assigned.find(w);
            if (it != assigned.end() && it->second == c) return false;
        }
        return true;
    }
};

// Fail-first branching for the single-solution query.
bool solve_one(Search& s) {
    VertexId best = -1;
    std::size_t best_live = 0;
    for (VertexId v : s.verts) {
        if (s.assigned.count(v)) continue;
        std::size_t live = 0;
        for (Color c : s.domain[v])
            if (s.consistent(v, c)) ++live;
        if (live == 0) return false;
        if (best == -1 || live < best_live) {
            best = v;
            best_live = live;
        }
    }
    if (best == -1) return true;
    for (Color c : s.domain[best]) {
        if (!s.consistent(best, c)) continue;
        s.assigned[best] = c;
        if (solve_one(s)) return true;
        s.assigned.erase(best);
    }
    return false;
}

// Static id order so solutions stream out lexicographically.
bool enumerate_all(Search& s, std::size_t idx, const std::function<bool(const Coloring&)>& emit) {
    if (idx == s.verts.size()) return emit(s.assigned);
    VertexId v = s.verts[idx];
    if (s.assigned.count(v)) return enumerate_all(s, idx + 1, emit);
    for (Color c : s.domain[v]) {
        if (!s.consistent(v, c)) continue;
        s.assigned[v] = c;
        bool keep_going = enumerate_all(s, idx + 1, emit);
        s.assigned.erase(v);
        if (!keep_going) return false;
    }
    return true;
}

Search make_search(const PlaneGraph& graph, const ListAssignment& lists, const Coloring& pinned) {
    require_lists(graph, lists);
    check_pins(graph, lists, pinned);
    Search s{graph, graph.vertices(), {}, pinned};
    for (VertexId v : s.verts) {
        auto it = pinned.find(v);
        if (it != pinned.end())
            s.domain[v] = {it->second};
        else
            s.domain[v] = std::vector<Color>(lists.at(v).begin(), lists.at(v).end());
    }
    return s;
}

void require_outer_edge_path(const PlaneGraph& graph, const PathRef& p, const char* name) {
    if (p[0] == p[1] || !graph.has_vertex(p[0]) || !graph.has_vertex(p[1]) ||
        !graph.has_edge(p[0], p[1]))
        throw SolverError(SolverError::Kind::PreconditionViolated,
                          std::string(name) + " is not an edge of the graph");
    auto outer = graph.outer_vertices();
    if (!outer.count(p[0]) || !outer.count(p[1]))
        throw SolverError(SolverError::Kind::PreconditionViolated,
                          std::string(name) + " must have both ends on the outer boundary");
}

} // namespace

EdgeColoringSet make_edge_coloring_set(const PlaneGraph& graph, const ListAssignment& lists,
                                       const PathRef& path,
                                       const std::set<std::pair<Color, Color>>& members) {
    require_outer_edge_path(graph, path, "path");
    for (const auto& [c1, c2] : members) {
        if (c1 == c2)
            throw SolverError(SolverError::Kind::PreconditionViolated,
                              "edge coloring is not proper");
        if (!lists.has(path[0]) || !lists.at(path[0]).count(c1) || !lists.has(path[1]) ||
            !lists.at(path[1]).count(c2))
            throw SolverError(SolverError::Kind::PreconditionViolated,
                              "edge coloring does not respect the lists");
    }
    return EdgeColoringSet{path, members};
}

std::optional<Coloring> find_coloring(const PlaneGraph& graph, const ListAssignment& lists,
                                      const Coloring& pinned) {
    Search s = make_search(graph, lists, pinned);
    if (solve_one(s)) return s.assigned;
    return std::nullopt;
}

void for_each_coloring(const PlaneGraph& graph, const ListAssignment& lists,
                       const Coloring& pinned,
                       const std::function<bool(const Coloring&)>& emit) {
    Search s = make_search(graph, lists, pinned);
    enumerate_all(s, 0, emit);
}

std::vector<Coloring> enumerate_colorings(const PlaneGraph& graph, const ListAssignment& lists,
                                          const Coloring& pinned) {
    std::vector<Coloring> out;
    for_each_coloring(graph, lists, pinned, [&out](const Coloring& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

EdgeColoringSet extension_set(const PlaneGraph& graph, const ListAssignment& lists,
                              const PathRef& p, const EdgeColoringSet& c,
                              const PathRef& p_prime) {
    require_outer_edge_path(graph, p, "P");
    require_outer_edge_path(graph, p_prime, "P'");
    require_lists(graph, lists);
    if (!(c.path == p))
        throw SolverError(SolverError::Kind::PreconditionViolated,
                          "coloring set is indexed by a different path than P");

    EdgeColoringSet out{p_prime, {}};
    // For each member of C and each candidate coloring of P', one solver call
    // decides whether some full coloring realizes both.
    for (const auto& [c1, c2] : c.members) {
        Coloring base;
        base[p[0]] = c1;
        base[p[1]] = c2;
        if (base.at(p[0]) != c1 || base.at(p[1]) != c2) continue;
        for (Color d1 : lists.at(p_prime[0])) {
            for (Color d2 : lists.at(p_prime[1])) {
                if (d1 == d2) continue;
                if (out.members.count({d1, d2})) continue;
                Coloring pinned = base;
                auto pin = [&pinned](VertexId v, Color col) {
                    auto it = pinned.find(v);
                    if (it != pinned.end()) return it->second == col;
                    pinned[v] = col;
                    return true;
                };
                if (!pin(p_prime[0], d1) || !pin(p_prime[1], d2)) continue;
                bool clash = false;
                for (const auto& [v, col] : pinned)
                    for (VertexId w : graph.rotation(v)) {
                        auto it = pinned.find(w);
                        if (it != pinned.end() && it->second == col) clash = true;
                    }
                if (clash) continue;
                if (find_coloring(graph, lists, pinned)) out.members.insert({d1, d2});
            }
        }
    }
    return out;
}

EdgeColoringSet extension_set(const Canvas& canvas, const PathRef& p, const EdgeColoringSet& c,
                              const PathRef& p_prime) {
    return extension_set(canvas.graph, canvas.lists, p, c, p_prime);
}

bool check_chord_composition(const Canvas& canvas, const PathRef& p, const EdgeColoringSet& c,
                             const PathRef& u, const PathRef& p_prime) {
    const PlaneGraph& g = canvas.graph;
    auto same_path = [](const PathRef& a, const PathRef& b) {
        return edge_key(a[0], a[1]) == edge_key(b[0], b[1]);
    };
    if (!same_path(u, p) && !same_path(u, p_prime)) {
        if (!g.outer_is_cycle())
            throw SolverError(SolverError::Kind::NotASeparatingChord,
                              "outer walk is not a cycle");
        auto chords = g.chords_of_outer();
        if (std::find(chords.begin(), chords.end(), edge_key(u[0], u[1])) == chords.end())
            throw SolverError(SolverError::Kind::NotASeparatingChord,
                              "U is not a chord of the outer cycle");
        // Split the outer cycle at U's ends and check P, P' land on opposite
        // closed sides.
        const auto& outer = g.outer_walk();
        std::map<VertexId, int> side;
        int current = 0;
        for (std::size_t pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < outer.size(); ++i) {
                VertexId v = outer[i];
                if (v == u[0] || v == u[1]) {
                    if (pass == 0) side[v] = 3;
                    current = current == 1 ? 2 : 1;
                } else if (pass == 1 && !side.count(v)) {
                    side[v] = current;
                }
            }
        auto side_of_path = [&side](const PathRef& path) {
            int mask = 0;
            for (VertexId v : path) {
                int s = side.count(v) ? side[v] : 0;
                if (s == 3) continue;
                mask |= s;
            }
            return mask; // 0 = on U only, 1/2 = one side, 3 = straddles
        };
        int sp = side_of_path(p), spp = side_of_path(p_prime);
        bool ok = sp != 3 && spp != 3 && (sp == 0 || spp == 0 || sp != spp);
        if (!ok)
            throw SolverError(SolverError::Kind::NotASeparatingChord,
                              "U does not separate P from P'");
    }
    EdgeColoringSet via_u = extension_set(canvas.graph, canvas.lists, p, c, u);
    EdgeColoringSet lhs = extension_set(canvas.graph, canvas.lists, u, via_u, p_prime);
    EdgeColoringSet rhs = extension_set(canvas.graph, canvas.lists, p, c, p_prime);
    return lhs.members == rhs.members;
}

int count_bad_wheel_colorings(const Canvas& canvas) {
    const PlaneGraph& g = canvas.graph;
    // Chords of the boundary in the walk sense: edges joining two boundary
    // vertices that are not boundary edges themselves.
    auto outer = g.outer_vertices();
    auto outer_edges = g.outer_edge_set();
    for (const Edge& e : g.edge_set())
        if (outer.count(e.first) && outer.count(e.second) && !outer_edges.count(e))
            throw SolverError(SolverError::Kind::PreconditionViolated,
                              "outer boundary has a chord");
    if (canvas.s.vertices.size() != 3 || canvas.s.edges.size() != 2)
        throw SolverError(SolverError::Kind::PreconditionViolated,
                          "S is not a path of length two");
    // Identify the middle vertex and check the path is induced.
    std::map<VertexId, int> deg;
    for (const Edge& e : canvas.s.edges) {
        deg[e.first]++;
        deg[e.second]++;
    }
    VertexId mid = -1;
    std::vector<VertexId> ends;
    for (VertexId v : canvas.s.vertices) {
        if (deg[v] == 2) mid = v;
        else if (deg[v] == 1) ends.push_back(v);
    }
    if (mid == -1 || ends.size() != 2)
        throw SolverError(SolverError::Kind::PreconditionViolated,
                          "S is not a path of length two");
    if (g.has_edge(ends[0], ends[1]))
        throw SolverError(SolverError::Kind::PreconditionViolated, "S is not induced");

    int bad = 0;
    std::vector<VertexId> sv(canvas.s.vertices.begin(), canvas.s.vertices.end());
    for (Color a : canvas.lists.at(sv[0]))
        for (Color b : canvas.lists.at(sv[1]))
            for (Color c : canvas.lists.at(sv[2])) {
                Coloring phi{{sv[0], a}, {sv[1], b}, {sv[2], c}};
                bool proper = true;
                for (const Edge& e : canvas.s.edges)
                    if (phi[e.first] == phi[e.second]) proper = false;
                if (!proper) continue;
                if (!find_coloring(g, canvas.lists, phi)) ++bad;
            }
    return bad;
}

} // namespace harmonica
