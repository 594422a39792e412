#include "oracles.hpp"

#include <algorithm>
#include <functional>

namespace harmonica::oracles {

std::vector<Coloring> brute_colorings(const PlaneGraph& graph, const ListAssignment& lists) {
    std::vector<VertexId> verts = graph.vertices();
    std::vector<Coloring> out;
    Coloring current;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == verts.size()) {
            for (const Edge& e : graph.edge_set())
                if (current.at(e.first) == current.at(e.second)) return;
            out.push_back(current);
            return;
        }
        for (Color c : lists.at(verts[i])) {
            current[verts[i]] = c;
            go(i + 1);
        }
        current.erase(verts[i]);
    };
    go(0);
    return out;
}

std::set<std::pair<Color, Color>> brute_extension_set(const PlaneGraph& graph,
                                                      const ListAssignment& lists,
                                                      const PathRef& p,
                                                      const std::set<std::pair<Color, Color>>& c,
                                                      const PathRef& p_prime) {
    std::set<std::pair<Color, Color>> out;
    for (const Coloring& phi : brute_colorings(graph, lists)) {
        if (!c.count({phi.at(p[0]), phi.at(p[1])})) continue;
        out.insert({phi.at(p_prime[0]), phi.at(p_prime[1])});
    }
    return out;
}

int components_after_removal(const PlaneGraph& graph, VertexId gone) {
    std::set<VertexId> unseen;
    for (VertexId v : graph.vertices())
        if (v != gone) unseen.insert(v);
    int components = 0;
    while (!unseen.empty()) {
        ++components;
        std::vector<VertexId> stack{*unseen.begin()};
        unseen.erase(unseen.begin());
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : graph.rotation(v)) {
                auto it = unseen.find(w);
                if (it != unseen.end()) {
                    unseen.erase(it);
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

namespace {

using Lists = std::map<VertexId, ColorSet>;

ColorSet minus(const ColorSet& a, const ColorSet& b) {
    ColorSet out;
    for (Color c : a)
        if (!b.count(c)) out.insert(c);
    return out;
}

struct Oracle {
    const PlaneGraph& g;
    VertexId to;

    bool from_edge(Lists eff, std::set<VertexId> removed, VertexId u, VertexId v);

    bool from_vertex(Lists eff, std::set<VertexId> removed, VertexId a,
                     const std::set<VertexId>& must_use) {
        if (eff.at(a).size() != 1) return false;
        for (VertexId x : g.rotation(a)) {
            if (removed.count(x) || x == to || x == a) continue;
            for (VertexId y : g.rotation(a)) {
                if (y <= x || removed.count(y) || y == to) continue;
                if (!g.has_edge(x, y)) continue;
                bool uses_all = true;
                for (VertexId m : must_use)
                    if (m != x && m != y) uses_all = false;
                if (!uses_all) continue;
                ColorSet mx = minus(eff.at(x), eff.at(a));
                if (mx.size() != 2 || minus(eff.at(y), eff.at(a)) != mx) continue;
                Lists next = eff;
                next[x] = mx;
                next[y] = mx;
                std::set<VertexId> removed2 = removed;
                removed2.insert(a);
                if (from_edge(next, removed2, x, y)) return true;
            }
        }
        return false;
    }
};

bool Oracle::from_edge(Lists eff, std::set<VertexId> removed, VertexId u, VertexId v) {
    const ColorSet& m = eff.at(u);
    if (m.size() != 2 || eff.at(v) != m) return false;
    if (!g.has_edge(u, v)) return false;
    if (!removed.count(to) && g.has_edge(u, to) && g.has_edge(v, to) && eff.at(to) == m)
        return true;
    for (VertexId z : g.rotation(u)) {
        if (removed.count(z) || z == to || z == v) continue;
        if (!g.has_edge(v, z)) continue;
        if (eff.at(z).size() != 3) continue;
        bool contains = true;
        for (Color c : m)
            if (!eff.at(z).count(c)) contains = false;
        if (!contains) continue;
        Lists next = eff;
        next[z] = minus(eff.at(z), m);
        // Drop u, v, or both; a survivor must join the very next triangle.
        for (int choice = 0; choice < 3; ++choice) {
            std::set<VertexId> removed2 = removed;
            std::set<VertexId> must;
            if (choice == 0) {
                removed2.insert(u);
                removed2.insert(v);
            } else if (choice == 1) {
                removed2.insert(u);
                must.insert(v);
            } else {
                removed2.insert(v);
                must.insert(u);
            }
            if (from_vertex(next, removed2, z, must)) return true;
        }
    }
    return false;
}

} // namespace

bool harmonica_exists_from_vertex(const PlaneGraph& graph, const ListAssignment& lists,
                                  VertexId from, VertexId to) {
    if (from == to) return false;
    Lists eff;
    for (VertexId v : graph.vertices()) {
        if (!lists.has(v)) return false;
        eff[v] = lists.at(v);
    }
    if (eff.at(from).size() != 1) return false;
    Oracle o{graph, to};
    return o.from_vertex(eff, {}, from, {});
}

} // namespace harmonica::oracles
