#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "harmonica/canvas.hpp"
#include "harmonica/plane_graph.hpp"

namespace harmonica {

using Coloring = std::map<VertexId, Color>;
using PathRef = std::array<VertexId, 2>;

class SolverError : public std::runtime_error {
public:
    enum class Kind { PinnedConflict, PreconditionViolated, NotASeparatingChord };
    SolverError(Kind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// A set of proper list colorings of a length-one path, stored as ordered
// color pairs relative to path[0], path[1].
struct EdgeColoringSet {
    PathRef path;
    std::set<std::pair<Color, Color>> members;

    bool operator==(const EdgeColoringSet&) const = default;
};

EdgeColoringSet make_edge_coloring_set(const PlaneGraph& graph, const ListAssignment& lists,
                                       const PathRef& path,
                                       const std::set<std::pair<Color, Color>>& members);

// Exhaustive search for a proper list coloring extending `pinned`.  Vertices
// are picked fail-first (smallest live domain, then smallest id), colors
// ascending, so results are reproducible.  Returns NONE only when no
// extension exists.
std::optional<Coloring> find_coloring(const PlaneGraph& graph, const ListAssignment& lists,
                                      const Coloring& pinned = {});

// Yields every solution exactly once, in lexicographic order of the coloring
// viewed as a vertex-id-sorted vector.  The callback returns false to stop.
void for_each_coloring(const PlaneGraph& graph, const ListAssignment& lists,
                       const Coloring& pinned,
                       const std::function<bool(const Coloring&)>& emit);

std::vector<Coloring> enumerate_colorings(const PlaneGraph& graph, const ListAssignment& lists,
                                          const Coloring& pinned = {});

// Phi(P', C): the colorings of P' occurring in some full proper list
// coloring whose restriction to P lies in C.  P and P' must be edges with
// both ends on the outer-face boundary.
EdgeColoringSet extension_set(const PlaneGraph& graph, const ListAssignment& lists,
                              const PathRef& p, const EdgeColoringSet& c, const PathRef& p_prime);
EdgeColoringSet extension_set(const Canvas& canvas, const PathRef& p, const EdgeColoringSet& c,
                              const PathRef& p_prime);

// Checks Phi(P', Phi(U, C)) == Phi(P', C) where U is a chord of the outer
// cycle separating P from P'.  U == P or U == P' is accepted as a degenerate
// separation.  Expected to hold on every valid instance.
bool check_chord_composition(const Canvas& canvas, const PathRef& p, const EdgeColoringSet& c,
                             const PathRef& u, const PathRef& p_prime);

// For a canvas whose S is an induced path p-q-r on a chordless outer cycle:
// the number of proper list colorings of S that do not extend to the whole
// graph.  At most one on every valid instance.
int count_bad_wheel_colorings(const Canvas& canvas);

} // namespace harmonica
