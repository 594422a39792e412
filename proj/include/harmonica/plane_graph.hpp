#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace harmonica {

using VertexId = int;
using Edge = std::pair<VertexId, VertexId>;

// Undirected edge key, endpoints sorted.
inline Edge edge_key(VertexId u, VertexId v) {
    return u < v ? Edge{u, v} : Edge{v, u};
}

class GraphError : public std::runtime_error {
public:
    enum class Kind {
        NonPlanarEmbedding,
        OuterWalkNotAFace,
        ParallelEdgeOrLoop,
        InvalidRotationSystem,
        OuterWalkNotCycle,
        EmptyResult,
        InfeasibleParameters,
    };

    GraphError(Kind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// An embedded plane graph: per-vertex cyclic neighbor order (rotation system)
// plus a designated outer face walk.  Vertex ids are stable across deletion;
// all operations return fresh graphs, nothing is mutated in place.
//
// Graphs produced by deletion may be disconnected.  The primary outer walk
// then belongs to one component; other components that ended up facing the
// unbounded region carry their exposed walks in extra_outer_walks().
class PlaneGraph {
public:
    // Empty placeholder; real graphs come out of build()/build_with_extras().
    PlaneGraph() = default;

    // Validates the rotation system (simple, symmetric, genus zero) and that
    // `outer` is one of the traced faces.  Requires a connected graph.
    static PlaneGraph build(const std::map<VertexId, std::vector<VertexId>>& rotations,
                            const std::vector<VertexId>& outer);

    // Same validation but allows disconnected graphs whose additional exposed
    // boundary walks are listed explicitly (used when reloading deletion
    // results from disk).
    static PlaneGraph build_with_extras(const std::map<VertexId, std::vector<VertexId>>& rotations,
                                        const std::vector<VertexId>& outer,
                                        const std::vector<std::vector<VertexId>>& extras);

    std::vector<VertexId> vertices() const;
    bool has_vertex(VertexId v) const { return rotations_.count(v) > 0; }
    const std::vector<VertexId>& rotation(VertexId v) const;
    bool has_edge(VertexId u, VertexId v) const { return edges_.count(edge_key(u, v)) > 0; }
    int degree(VertexId v) const { return static_cast<int>(rotation(v).size()); }
    std::size_t vertex_count() const { return rotations_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::set<Edge>& edge_set() const { return edges_; }

    const std::vector<VertexId>& outer_walk() const { return outer_; }
    const std::vector<std::vector<VertexId>>& extra_outer_walks() const { return extra_outer_; }

    // Vertices/edges incident with the outer face (primary walk plus extras).
    std::set<VertexId> outer_vertices() const;
    std::set<Edge> outer_edge_set() const;
    bool outer_is_cycle() const;

    // Traces every face of the rotation system, one closed walk per face,
    // across all components.  Each directed edge is used exactly once.  An
    // isolated vertex yields the trivial walk [v].
    std::vector<std::vector<VertexId>> trace_faces() const;

    // Edges joining two outer-cycle vertices that are not outer-cycle edges.
    // Requires the outer walk to be a cycle.
    std::vector<Edge> chords_of_outer() const;

    std::set<VertexId> cutvertices() const;

    int component_count() const;
    bool connected() const { return component_count() <= 1; }

    // Induced embedded subgraph on V minus X.  The outer face of the result
    // is the face whose region contains the old outer region, found by
    // merging faces across deleted elements; it agrees with the face holding
    // the longest surviving arc of the old outer walk whenever such an arc
    // survives.  Ties and arcless cases fall back to the smallest vertex id.
    PlaneGraph delete_vertices(const std::set<VertexId>& xs) const;

    // Embedded subgraph on the given vertices keeping only the given edges
    // (rotations restricted, outer face recomputed as above).
    PlaneGraph subgraph(const std::set<VertexId>& vs, const std::set<Edge>& es) const;

    bool operator==(const PlaneGraph& other) const {
        return rotations_ == other.rotations_ && outer_ == other.outer_;
    }

private:
    void index_edges();
    PlaneGraph restricted(const std::set<VertexId>& vs, const std::set<Edge>& es) const;

    std::map<VertexId, std::vector<VertexId>> rotations_;
    std::set<Edge> edges_;
    std::vector<VertexId> outer_;
    std::vector<std::vector<VertexId>> extra_outer_;
};

inline PlaneGraph build_plane_graph(const std::map<VertexId, std::vector<VertexId>>& rotations,
                                    const std::vector<VertexId>& outer) {
    return PlaneGraph::build(rotations, outer);
}

} // namespace harmonica
