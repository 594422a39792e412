#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "harmonica/plane_graph.hpp"

namespace harmonica {

using Color = int;
using ColorSet = std::set<Color>;

// Per-vertex allowed color sets.  Entries for vertices outside a particular
// graph are permitted and ignored, so one assignment can serve a graph and
// its subgraphs.
struct ListAssignment {
    std::map<VertexId, ColorSet> lists;

    bool has(VertexId v) const {
        auto it = lists.find(v);
        return it != lists.end() && !it->second.empty();
    }
    const ColorSet& at(VertexId v) const { return lists.at(v); }
    ColorSet& operator[](VertexId v) { return lists[v]; }

    ListAssignment restricted_to(const std::set<VertexId>& vs) const {
        ListAssignment out;
        for (VertexId v : vs) {
            auto it = lists.find(v);
            if (it != lists.end()) out.lists[v] = it->second;
        }
        return out;
    }
};

// A subgraph reference: vertex set plus edge set, identified by host ids.
struct SubgraphRef {
    std::set<VertexId> vertices;
    std::set<Edge> edges;

    bool operator==(const SubgraphRef&) const = default;
    bool empty() const { return vertices.empty(); }
};

struct Canvas {
    PlaneGraph graph;
    SubgraphRef s;
    ListAssignment lists;
};

struct Violation {
    std::string clause;
    std::optional<VertexId> vertex;
    std::optional<Edge> edge;
};

struct CanvasCheck {
    std::optional<Canvas> canvas;
    std::vector<Violation> violations;
    bool ok() const { return canvas.has_value(); }
};

// Checks all canvas clauses: interior vertices carry lists of size at least
// five, outer vertices off S at least three, S lies in the outer-face
// boundary, and S admits a proper list coloring.  Every violated clause is
// reported with the offending vertex or edge; nothing fails silently.
CanvasCheck validate_canvas(const PlaneGraph& graph, const SubgraphRef& s,
                            const ListAssignment& lists);

// T contains T' when T's graph contains T''s as a subgraph, the precolored
// subgraphs coincide, and the lists agree on the smaller vertex set.
bool contains_canvas(const Canvas& t, const Canvas& t_prime);

// Exhaustive check that the subgraph admits a proper list coloring (S is tiny
// in every use).
bool subgraph_list_colorable(const SubgraphRef& s, const ListAssignment& lists);

} // namespace harmonica
