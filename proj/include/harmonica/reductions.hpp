#pragma once

#include <utility>
#include <vector>

#include "harmonica/canvas.hpp"
#include "harmonica/solver.hpp"

namespace harmonica {

class ReductionError : public std::runtime_error {
public:
    enum class Kind {
        PathNotInBoundary,
        PathNotInduced,
        PathHitsChordEnd,
        PathHitsCutvertex,
        PathIsWholeBoundary,
        PairNotInEveryList,
        BadCenter,
        CenterListExhausted,
        ReducedNotACanvas,
        ImproperInput,
    };
    ReductionError(Kind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// The democratic reduction T(P, L0, x): delete the boundary path P whose
// lists all contain the pair L0, subtract L0 from the center x and from P's
// neighbors other than the far boundary neighbor y, and move x into S when
// its list drops below three colors.
struct DemocraticReduction {
    Canvas source;
    Canvas reduced;
    std::vector<VertexId> path; // p1..pk, p1 adjacent to x
    std::pair<Color, Color> l0;
    VertexId center_x;
    VertexId boundary_y;
    std::map<VertexId, ColorSet> removed; // per-vertex list delta
    bool x_added_to_s = false;
};

DemocraticReduction democratic_reduction(const Canvas& canvas, const std::vector<VertexId>& path,
                                         std::pair<Color, Color> l0, VertexId x);

// Extends a proper coloring of the reduced canvas back to the source canvas:
// p_k takes a color of L0 avoiding y, then each earlier path vertex avoids
// its successor.  When both L0 colors are available the smaller id wins.
Coloring extend_reduced_coloring(const DemocraticReduction& reduction,
                                 const Coloring& reduced_coloring);

} // namespace harmonica
