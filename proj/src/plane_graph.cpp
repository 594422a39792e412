#include "harmonica/plane_graph.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace harmonica {

namespace {

using DirectedEdge = std::pair<VertexId, VertexId>;

// Two closed walks describe the same face if one is a cyclic shift of the
// other (same direction, no reflection).
bool cyclic_equal(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    const std::size_t n = a.size();
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] != b[(i + shift) % n]) { ok = false; break; }
        }
        if (ok) return true;
    }
    return false;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Face tracing over an arbitrary rotation map (used both by PlaneGraph and
// while validating candidate rotation systems).  Arriving at v along u->v the
// walk continues toward the successor of u in v's rotation.
std::vector<std::vector<VertexId>> trace_all_faces(
    const std::map<VertexId, std::vector<VertexId>>& rotations,
    std::map<DirectedEdge, int>* face_of_directed = nullptr) {
    std::vector<std::vector<VertexId>> faces;
    std::set<DirectedEdge> seen;
    for (const auto& [v, rot] : rotations) {
        if (rot.empty()) {
            faces.push_back({v});
            continue;
        }
        for (VertexId w : rot) {
            DirectedEdge start{v, w};
            if (seen.count(start)) continue;
            std::vector<VertexId> walk;
            DirectedEdge cur = start;
            do {
                seen.insert(cur);
                if (face_of_directed)
                    (*face_of_directed)[cur] = static_cast<int>(faces.size());
                walk.push_back(cur.first);
                const auto& r = rotations.at(cur.second);
                auto it = std::find(r.begin(), r.end(), cur.first);
                assert(it != r.end());
                ++it;
                if (it == r.end()) it = r.begin();
                cur = DirectedEdge{cur.second, *it};
            } while (cur != start);
            faces.push_back(std::move(walk));
        }
    }
    return faces;
}

void validate_rotations(const std::map<VertexId, std::vector<VertexId>>& rotations) {
    for (const auto& [v, rot] : rotations) {
        std::set<VertexId> dedup;
        for (VertexId w : rot) {
            if (w == v)
                throw GraphError(GraphError::Kind::ParallelEdgeOrLoop,
                                 "loop at vertex " + std::to_string(v));
            if (!dedup.insert(w).second)
                throw GraphError(GraphError::Kind::ParallelEdgeOrLoop,
                                 "parallel edge " + std::to_string(v) + "-" + std::to_string(w));
            auto it = rotations.find(w);
            if (it == rotations.end())
                throw GraphError(GraphError::Kind::InvalidRotationSystem,
                                 "rotation of " + std::to_string(v) + " references unknown vertex " +
                                     std::to_string(w));
            if (std::count(it->second.begin(), it->second.end(), v) != 1)
                throw GraphError(GraphError::Kind::InvalidRotationSystem,
                                 "edge " + std::to_string(v) + "-" + std::to_string(w) +
                                     " missing from the mate rotation");
        }
    }
}

int count_components(const std::map<VertexId, std::vector<VertexId>>& rotations) {
    std::set<VertexId> unseen;
    for (const auto& [v, _] : rotations) unseen.insert(v);
    int components = 0;
    while (!unseen.empty()) {
        ++components;
        std::vector<VertexId> stack{*unseen.begin()};
        unseen.erase(unseen.begin());
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : rotations.at(v)) {
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

// Genus-zero check: every component must satisfy V - E + F = 2, which over
// the whole graph reads V - E + (#traced walks) = 2 * #components.
void validate_euler(const std::map<VertexId, std::vector<VertexId>>& rotations,
                    const std::vector<std::vector<VertexId>>& faces) {
    std::size_t vcount = rotations.size();
    std::size_t directed = 0;
    for (const auto& [_, rot] : rotations) directed += rot.size();
    std::size_t ecount = directed / 2;
    int k = count_components(rotations);
    long lhs = static_cast<long>(vcount) - static_cast<long>(ecount) +
               static_cast<long>(faces.size());
    if (lhs != 2L * k)
        throw GraphError(GraphError::Kind::NonPlanarEmbedding,
                         "rotation system is not a plane embedding (V-E+F=" +
                             std::to_string(lhs) + ", expected " + std::to_string(2 * k) + ")");
}

int match_face(const std::vector<std::vector<VertexId>>& faces,
               const std::vector<VertexId>& walk) {
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (cyclic_equal(faces[i], walk)) return static_cast<int>(i);
    return -1;
}

} // namespace

void PlaneGraph::index_edges() {
    edges_.clear();
    for (const auto& [v, rot] : rotations_)
        for (VertexId w : rot) edges_.insert(edge_key(v, w));
}

PlaneGraph PlaneGraph::build(const std::map<VertexId, std::vector<VertexId>>& rotations,
                             const std::vector<VertexId>& outer) {
    if (rotations.empty())
        throw GraphError(GraphError::Kind::InvalidRotationSystem, "empty vertex set");
    validate_rotations(rotations);
    if (count_components(rotations) != 1)
        throw GraphError(GraphError::Kind::InvalidRotationSystem,
                         "graph must be connected (deletion results may bypass this via extras)");
    auto faces = trace_all_faces(rotations);
    validate_euler(rotations, faces);
    if (match_face(faces, outer) < 0)
        throw GraphError(GraphError::Kind::OuterWalkNotAFace,
                         "outer walk does not trace a face of the embedding");
    PlaneGraph g;
    g.rotations_ = rotations;
    g.outer_ = outer;
    g.index_edges();
    return g;
}

PlaneGraph PlaneGraph::build_with_extras(const std::map<VertexId, std::vector<VertexId>>& rotations,
                                         const std::vector<VertexId>& outer,
                                         const std::vector<std::vector<VertexId>>& extras) {
    if (rotations.empty())
        throw GraphError(GraphError::Kind::InvalidRotationSystem, "empty vertex set");
    validate_rotations(rotations);
    auto faces = trace_all_faces(rotations);
    validate_euler(rotations, faces);
    std::set<int> used;
    if (!used.insert(match_face(faces, outer)).second || match_face(faces, outer) < 0)
        throw GraphError(GraphError::Kind::OuterWalkNotAFace,
                         "outer walk does not trace a face of the embedding");
    for (const auto& w : extras) {
        int idx = match_face(faces, w);
        if (idx < 0 || !used.insert(idx).second)
            throw GraphError(GraphError::Kind::OuterWalkNotAFace,
                             "extra outer walk does not trace a distinct face");
    }
    PlaneGraph g;
    g.rotations_ = rotations;
    g.outer_ = outer;
    g.extra_outer_ = extras;
    g.index_edges();
    return g;
}

std::vector<VertexId> PlaneGraph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(rotations_.size());
    for (const auto& [v, _] : rotations_) out.push_back(v);
    return out;
}

const std::vector<VertexId>& PlaneGraph::rotation(VertexId v) const {
    auto it = rotations_.find(v);
    if (it == rotations_.end())
        throw GraphError(GraphError::Kind::InvalidRotationSystem,
                         "unknown vertex " + std::to_string(v));
    return it->second;
}

std::set<VertexId> PlaneGraph::outer_vertices() const {
    std::set<VertexId> out(outer_.begin(), outer_.end());
    for (const auto& w : extra_outer_) out.insert(w.begin(), w.end());
    return out;
}

std::set<Edge> PlaneGraph::outer_edge_set() const {
    std::set<Edge> out;
    auto add_walk = [&out](const std::vector<VertexId>& w) {
        if (w.size() < 2) return;
        for (std::size_t i = 0; i < w.size(); ++i)
            out.insert(edge_key(w[i], w[(i + 1) % w.size()]));
    };
    add_walk(outer_);
    for (const auto& w : extra_outer_) add_walk(w);
    return out;
}

bool PlaneGraph::outer_is_cycle() const {
    if (outer_.size() < 3 || !extra_outer_.empty()) return false;
    std::set<VertexId> dedup(outer_.begin(), outer_.end());
    return dedup.size() == outer_.size();
}

std::vector<std::vector<VertexId>> PlaneGraph::trace_faces() const {
    return trace_all_faces(rotations_);
}

std::vector<Edge> PlaneGraph::chords_of_outer() const {
    if (!outer_is_cycle())
        throw GraphError(GraphError::Kind::OuterWalkNotCycle,
                         "chords are defined against an outer cycle");
    std::set<VertexId> on_cycle(outer_.begin(), outer_.end());
    std::set<Edge> cycle_edges;
    for (std::size_t i = 0; i < outer_.size(); ++i)
        cycle_edges.insert(edge_key(outer_[i], outer_[(i + 1) % outer_.size()]));
    std::vector<Edge> chords;
    for (const Edge& e : edges_)
        if (on_cycle.count(e.first) && on_cycle.count(e.second) && !cycle_edges.count(e))
            chords.push_back(e);
    return chords;
}

std::set<VertexId> PlaneGraph::cutvertices() const {
    // Standard lowpoint computation, iterative to keep the call stack flat.
    std::set<VertexId> result;
    std::map<VertexId, int> disc, low;
    int timer = 0;
    for (const auto& [root, _] : rotations_) {
        if (disc.count(root)) continue;
        struct Frame { VertexId v; VertexId parent; std::size_t next; int tree_children; };
        std::vector<Frame> stack{{root, -1, 0, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& rot = rotations_.at(f.v);
            if (f.next < rot.size()) {
                VertexId w = rot[f.next++];
                if (w == f.parent) continue;
                if (disc.count(w)) {
                    low[f.v] = std::min(low[f.v], disc[w]);
                } else {
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, f.v, 0, 0});
                }
            } else {
                Frame done = f;
                stack.pop_back();
                if (!stack.empty()) {
                    Frame& up = stack.back();
                    up.tree_children++;
                    low[up.v] = std::min(low[up.v], low[done.v]);
                    if (up.parent != -1 && low[done.v] >= disc[up.v]) result.insert(up.v);
                } else if (done.tree_children > 1) {
                    result.insert(done.v);
                }
            }
        }
    }
    return result;
}

int PlaneGraph::component_count() const { return count_components(rotations_); }

PlaneGraph PlaneGraph::delete_vertices(const std::set<VertexId>& xs) const {
    for (VertexId x : xs)
        if (!has_vertex(x))
            throw GraphError(GraphError::Kind::InvalidRotationSystem,
                             "deleting unknown vertex " + std::to_string(x));
    std::set<VertexId> keep;
    for (const auto& [v, _] : rotations_)
        if (!xs.count(v)) keep.insert(v);
    if (keep.empty())
        throw GraphError(GraphError::Kind::EmptyResult, "deletion removes every vertex");
    std::set<Edge> kept_edges;
    for (const Edge& e : edges_)
        if (keep.count(e.first) && keep.count(e.second)) kept_edges.insert(e);
    return restricted(keep, kept_edges);
}

PlaneGraph PlaneGraph::subgraph(const std::set<VertexId>& vs, const std::set<Edge>& es) const {
    if (vs.empty())
        throw GraphError(GraphError::Kind::EmptyResult, "empty subgraph");
    for (VertexId v : vs)
        if (!has_vertex(v))
            throw GraphError(GraphError::Kind::InvalidRotationSystem,
                             "subgraph references unknown vertex " + std::to_string(v));
    for (const Edge& e : es)
        if (!edges_.count(e) || !vs.count(e.first) || !vs.count(e.second))
            throw GraphError(GraphError::Kind::InvalidRotationSystem,
                             "subgraph references edge not present between kept vertices");
    return restricted(vs, es);
}

// Shared core of deletion and subgraph restriction.  The faces of the host
// are merged across every removed edge (and hence around every removed
// vertex); the class holding the host's outer face is the new outer region.
// Each face of the restricted graph maps into exactly one class via any of
// its directed edges, so the walks bounding the new outer region are exactly
// the restricted faces whose class is the outer class.
PlaneGraph PlaneGraph::restricted(const std::set<VertexId>& vs, const std::set<Edge>& es) const {
    std::map<DirectedEdge, int> host_face_of;
    auto host_faces = trace_all_faces(rotations_, &host_face_of);

    Dsu dsu(host_faces.size());
    int host_outer = match_face(host_faces, outer_);
    assert(host_outer >= 0);
    for (const auto& w : extra_outer_) {
        int idx = match_face(host_faces, w);
        assert(idx >= 0);
        dsu.unite(host_outer, idx);
    }
    for (const Edge& e : edges_) {
        if (es.count(e)) continue;
        dsu.unite(host_face_of.at({e.first, e.second}), host_face_of.at({e.second, e.first}));
    }
    int outer_class = dsu.find(host_outer);

    std::map<VertexId, std::vector<VertexId>> new_rot;
    for (VertexId v : vs) {
        std::vector<VertexId> rot;
        for (VertexId w : rotations_.at(v))
            if (es.count(edge_key(v, w))) rot.push_back(w);
        new_rot[v] = std::move(rot);
    }

    std::vector<std::vector<VertexId>> candidates;
    for (const auto& walk : trace_all_faces(new_rot)) {
        int cls;
        if (walk.size() == 1) {
            // Isolated vertex: all of its host faces merged into one class.
            VertexId v = walk[0];
            const auto& host_rot = rotations_.at(v);
            if (host_rot.empty()) continue;
            cls = dsu.find(host_face_of.at({v, host_rot[0]}));
        } else {
            cls = dsu.find(host_face_of.at({walk[0], walk[1]}));
        }
        if (cls == outer_class) candidates.push_back(walk);
    }

    PlaneGraph g;
    g.rotations_ = std::move(new_rot);
    g.index_edges();
    if (candidates.empty()) {
        // Everything that survived is enclosed by removed structure; treat
        // the face of the largest component as outer.  Does not arise in the
        // theorem pipelines but keeps the invariant that outer_ is nonempty.
        auto walks = trace_all_faces(g.rotations_);
        g.outer_ = *std::max_element(walks.begin(), walks.end(),
                                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
        return g;
    }

    // Primary walk: the candidate containing the longest surviving arc of the
    // old primary outer walk, ties and arcless candidates by smallest id.
    std::vector<std::vector<VertexId>> arcs;
    const std::size_t n = outer_.size();
    if (n > 0) {
        std::vector<bool> alive(n);
        bool all_alive = true;
        for (std::size_t i = 0; i < n; ++i) {
            alive[i] = vs.count(outer_[i]) > 0 &&
                       (es.count(edge_key(outer_[i], outer_[(i + 1) % n])) > 0);
            all_alive = all_alive && alive[i];
        }
        if (all_alive) {
            arcs.push_back(outer_);
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                if (!alive[i] || alive[(i + n - 1) % n]) continue;
                std::vector<VertexId> arc{outer_[i]};
                std::size_t j = i;
                while (alive[j]) {
                    j = (j + 1) % n;
                    arc.push_back(outer_[j]);
                }
                arcs.push_back(std::move(arc));
            }
        }
    }
    auto arc_len_in = [&](const std::vector<VertexId>& walk) {
        std::set<DirectedEdge> walk_edges;
        for (std::size_t i = 0; i + 1 <= walk.size() && walk.size() > 1; ++i)
            walk_edges.insert({walk[i], walk[(i + 1) % walk.size()]});
        std::size_t best = 0;
        for (const auto& arc : arcs) {
            bool inside = true;
            for (std::size_t i = 0; i + 1 < arc.size(); ++i)
                if (!walk_edges.count({arc[i], arc[i + 1]})) { inside = false; break; }
            if (inside && arc.size() > 1) best = std::max(best, arc.size() - 1);
        }
        return best;
    };
    std::size_t best_idx = 0;
    std::size_t best_len = 0;
    VertexId best_min = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        std::size_t len = arc_len_in(candidates[i]);
        VertexId mn = *std::min_element(candidates[i].begin(), candidates[i].end());
        if (i == 0 || len > best_len || (len == best_len && mn < best_min)) {
            best_idx = i;
            best_len = len;
            best_min = mn;
        }
    }
    g.outer_ = candidates[best_idx];
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (i != best_idx) g.extra_outer_.push_back(candidates[i]);
    return g;
}

} // namespace harmonica
