#include "harmonica/reductions.hpp"

#include <algorithm>

namespace harmonica {

namespace {

// Locates `path` as a contiguous arc of the outer cycle with x adjoining its
// first vertex, returning the walk-neighbor of the last vertex on the far
// side (y).  Both walk orientations are tried.
VertexId locate_path_and_y(const PlaneGraph& g, const std::vector<VertexId>& path, VertexId x) {
    const auto& outer = g.outer_walk();
    const std::size_t n = outer.size();
    std::set<VertexId> on_walk(outer.begin(), outer.end());
    for (VertexId p : path)
        if (!on_walk.count(p))
            throw ReductionError(ReductionError::Kind::PathNotInBoundary,
                                 "path vertex " + std::to_string(p) + " not on the outer walk");
    for (std::size_t start = 0; start < n; ++start) {
        for (int dir : {1, -1}) {
            bool match = true;
            for (std::size_t i = 0; i < path.size(); ++i) {
                std::size_t pos = (start + n + dir * static_cast<long>(i)) % n;
                if (outer[pos] != path[i]) { match = false; break; }
            }
            if (!match) continue;
            VertexId before = outer[(start + n - dir) % n];
            VertexId after = outer[(start + n + dir * static_cast<long>(path.size())) % n];
            if (before == x) return after;
        }
    }
    throw ReductionError(ReductionError::Kind::BadCenter,
                         "x is not the outer-walk neighbor of the first path vertex");
}

} // namespace

DemocraticReduction democratic_reduction(const Canvas& canvas, const std::vector<VertexId>& path,
                                         std::pair<Color, Color> l0, VertexId x) {
    const PlaneGraph& g = canvas.graph;
    if (path.empty())
        throw ReductionError(ReductionError::Kind::PathNotInBoundary, "empty path");
    if (l0.first == l0.second)
        throw ReductionError(ReductionError::Kind::PairNotInEveryList,
                             "L0 must contain two distinct colors");
    const ColorSet l0set{l0.first, l0.second};

    std::set<VertexId> pset(path.begin(), path.end());
    if (pset.size() != path.size())
        throw ReductionError(ReductionError::Kind::PathNotInduced, "path repeats a vertex");
    std::set<VertexId> outer = g.outer_vertices();
    if (pset.size() >= outer.size())
        throw ReductionError(ReductionError::Kind::PathIsWholeBoundary,
                             "V(C) must differ from V(P)");

    VertexId y = locate_path_and_y(g, path, x);
    // With V(C) != V(P) the walk neighbors x and y exist; x == y is fine.

    if (g.outer_is_cycle()) {
        std::set<VertexId> chord_ends;
        for (const Edge& e : g.chords_of_outer()) {
            chord_ends.insert(e.first);
            chord_ends.insert(e.second);
        }
        for (VertexId p : path)
            if (chord_ends.count(p))
                throw ReductionError(ReductionError::Kind::PathHitsChordEnd,
                                     "path vertex " + std::to_string(p) + " ends a chord of C");
    }
    auto cuts = g.cutvertices();
    for (VertexId p : path)
        if (cuts.count(p))
            throw ReductionError(ReductionError::Kind::PathHitsCutvertex,
                                 "path vertex " + std::to_string(p) + " is a cutvertex");
    // Induced: no edges between non-consecutive path vertices.
    for (std::size_t i = 0; i < path.size(); ++i)
        for (std::size_t j = i + 2; j < path.size(); ++j)
            if (g.has_edge(path[i], path[j]))
                throw ReductionError(ReductionError::Kind::PathNotInduced,
                                     "path is not induced");
    for (VertexId p : path) {
        if (!canvas.lists.has(p) || !std::includes(canvas.lists.at(p).begin(),
                                                   canvas.lists.at(p).end(), l0set.begin(),
                                                   l0set.end()))
            throw ReductionError(ReductionError::Kind::PairNotInEveryList,
                                 "L0 not contained in the list of vertex " + std::to_string(p));
    }
    if (!canvas.lists.has(x))
        throw ReductionError(ReductionError::Kind::CenterListExhausted, "x has no list");
    ColorSet x_rest;
    std::set_difference(canvas.lists.at(x).begin(), canvas.lists.at(x).end(), l0set.begin(),
                        l0set.end(), std::inserter(x_rest, x_rest.begin()));
    if (x_rest.empty())
        throw ReductionError(ReductionError::Kind::CenterListExhausted, "L(x) - L0 is empty");

    // Neighbors of P other than y lose the pair; so does x in any case.
    std::set<VertexId> shrink{x};
    for (VertexId p : path)
        for (VertexId w : g.rotation(p))
            if (!pset.count(w) && w != y) shrink.insert(w);

    PlaneGraph reduced_graph = g.delete_vertices(pset);
    ListAssignment reduced_lists = canvas.lists;
    std::map<VertexId, ColorSet> removed;
    for (VertexId w : shrink) {
        if (!reduced_graph.has_vertex(w)) continue;
        ColorSet gone;
        for (Color c : l0set)
            if (reduced_lists.at(w).count(c)) gone.insert(c);
        for (Color c : gone) reduced_lists[w].erase(c);
        if (!gone.empty()) removed[w] = gone;
    }

    SubgraphRef reduced_s;
    for (VertexId v : canvas.s.vertices)
        if (!pset.count(v)) reduced_s.vertices.insert(v);
    for (const Edge& e : canvas.s.edges)
        if (!pset.count(e.first) && !pset.count(e.second)) reduced_s.edges.insert(e);
    bool x_added = false;
    if (reduced_lists.at(x).size() < 3 && !reduced_s.vertices.count(x)) {
        reduced_s.vertices.insert(x);
        x_added = true;
    }

    CanvasCheck check = validate_canvas(reduced_graph, reduced_s, reduced_lists);
    if (!check.ok()) {
        std::string clauses;
        for (const auto& v : check.violations) clauses += v.clause + " ";
        throw ReductionError(ReductionError::Kind::ReducedNotACanvas,
                             "reduced triple is not a canvas: " + clauses);
    }

    DemocraticReduction out;
    out.source = canvas;
    out.reduced = *check.canvas;
    out.path = path;
    out.l0 = l0;
    out.center_x = x;
    out.boundary_y = y;
    out.removed = std::move(removed);
    out.x_added_to_s = x_added;
    return out;
}

Coloring extend_reduced_coloring(const DemocraticReduction& reduction,
                                 const Coloring& reduced_coloring) {
    
    const ColorSet l0{reduction.l0.first, reduction.l0.second};
    for (VertexId v : reduction.reduced.graph.vertices()) {
        auto it = reduced_coloring.find(v);
        if (it == reduced_coloring.end() || !reduction.reduced.lists.at(v).count(it->second))
            throw ReductionError(ReductionError::Kind::ImproperInput,
                                 "reduced coloring misses or miscolors vertex " +
                                     std::to_string(v));
    }
    for (const Edge& e : reduction.reduced.graph.edge_set())
        if (reduced_coloring.at(e.first) == reduced_coloring.at(e.second))
            throw ReductionError(ReductionError::Kind::ImproperInput,
                                 "reduced coloring is not proper");

    Coloring full = reduced_coloring;
    const auto& path = reduction.path;
    // p_k avoids y, then each p_i avoids p_{i+1}; smaller color id on ties.
    auto pick = [&l0](std::optional<Color> avoid) {
        for (Color c : l0)
            if (!avoid || c != *avoid) return c;
        return *l0.rbegin();
    };
    std::optional<Color> y_color;
    auto ity = full.find(reduction.boundary_y);
    if (ity != full.end()) y_color = ity->second;
    full[path.back()] = pick(y_color);
    for (std::size_t i = path.size() - 1; i-- > 0;)
        full[path[i]] = pick(full[path[i + 1]]);
    return full;
}

} // namespace harmonica
