#pragma once

#include <json.hpp>

#include "harmonica/canvas.hpp"
#include "harmonica/harmonica.hpp"
#include "harmonica/plane_graph.hpp"
#include "harmonica/solver.hpp"

namespace harmonica {

class JsonError : public std::runtime_error {
public:
    explicit JsonError(std::string message) : std::runtime_error(std::move(message)) {}
};

// Graph object: {"vertices":[ids], "rotations":{id:[ids]}, "outer":[ids]}.
// Deletion results that expose several boundary walks add "outer_extra".
nlohmann::json graph_to_json(const PlaneGraph& graph);
PlaneGraph graph_from_json(const nlohmann::json& j);

// Canvas file: the graph object plus "lists":{id:[colors]} and
// "S":{"vertices":[ids],"edges":[[id,id]]}.  Optional "p1"/"p2" hints make
// fuzz counterexamples replayable directly.
nlohmann::json canvas_to_json(const PlaneGraph& graph, const ListAssignment& lists,
                              const SubgraphRef& s);

struct ParsedCanvas {
    PlaneGraph graph;
    ListAssignment lists;
    SubgraphRef s;
    std::optional<VertexId> p1;
    std::optional<VertexId> p2;
};
ParsedCanvas canvas_from_json(const nlohmann::json& j);

nlohmann::json coloring_to_json(const Coloring& coloring);
Coloring coloring_from_json(const nlohmann::json& j);

// Certificate: {"from": id | [id,id], "to": id,
//               "steps":[{"kind":"start|step|base","verts":[..],
//                         "residual":[c,c], "dropped":[..]?}]}.
nlohmann::json certificate_to_json(const HarmonicaCertificate& cert);
HarmonicaCertificate certificate_from_json(const nlohmann::json& j);

} // namespace harmonica
