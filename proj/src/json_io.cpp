#include "harmonica/json_io.hpp"

namespace harmonica {

using nlohmann::json;

namespace {

json walk_to_json(const std::vector<VertexId>& walk) {
    json out = json::array();
    for (VertexId v : walk) out.push_back(v);
    return out;
}

std::vector<VertexId> walk_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw JsonError(std::string(what) + " must be an array");
    std::vector<VertexId> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw JsonError(std::string(what) + " must hold integers");
        out.push_back(v.get<VertexId>());
    }
    return out;
}

} // namespace

json graph_to_json(const PlaneGraph& graph) {
    json j;
    j["vertices"] = walk_to_json(graph.vertices());
    json rot = json::object();
    for (VertexId v : graph.vertices()) rot[std::to_string(v)] = walk_to_json(graph.rotation(v));
    j["rotations"] = rot;
    j["outer"] = walk_to_json(graph.outer_walk());
    if (!graph.extra_outer_walks().empty()) {
        json extras = json::array();
        for (const auto& w : graph.extra_outer_walks()) extras.push_back(walk_to_json(w));
        j["outer_extra"] = extras;
    }
    return j;
}

PlaneGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rotations") || !j.contains("outer"))
        throw JsonError("graph object needs 'rotations' and 'outer'");
    std::map<VertexId, std::vector<VertexId>> rotations;
    for (const auto& [key, value] : j.at("rotations").items()) {
        VertexId v;
        try {
            v = std::stoi(key);
        } catch (const std::exception&) {
            throw JsonError("rotation key '" + key + "' is not a vertex id");
        }
        rotations[v] = walk_from_json(value, "rotation");
    }
    if (j.contains("vertices"))
        for (VertexId v : walk_from_json(j.at("vertices"), "vertices"))
            rotations.try_emplace(v, std::vector<VertexId>{});
    auto outer = walk_from_json(j.at("outer"), "outer");
    try {
        if (j.contains("outer_extra")) {
            std::vector<std::vector<VertexId>> extras;
            for (const auto& w : j.at("outer_extra"))
                extras.push_back(walk_from_json(w, "outer_extra"));
            return PlaneGraph::build_with_extras(rotations, outer, extras);
        }
        return PlaneGraph::build(rotations, outer);
    } catch (const GraphError& e) {
        throw JsonError(std::string("invalid graph: ") + e.what());
    }
}

json canvas_to_json(const PlaneGraph& graph, const ListAssignment& lists, const SubgraphRef& s) {
    json j = graph_to_json(graph);
    json jl = json::object();
    for (const auto& [v, colors] : lists.lists) {
        json arr = json::array();
        for (Color c : colors) arr.push_back(c);
        jl[std::to_string(v)] = arr;
    }
    j["lists"] = jl;
    json js;
    js["vertices"] = walk_to_json(std::vector<VertexId>(s.vertices.begin(), s.vertices.end()));
    json edges = json::array();
    for (const Edge& e : s.edges) edges.push_back(json::array({e.first, e.second}));
    js["edges"] = edges;
    j["S"] = js;
    return j;
}

ParsedCanvas canvas_from_json(const json& j) {
    ParsedCanvas out{graph_from_json(j), {}, {}, std::nullopt, std::nullopt};
    if (!j.contains("lists")) throw JsonError("canvas needs 'lists'");
    for (const auto& [key, value] : j.at("lists").items()) {
        VertexId v;
        try {
            v = std::stoi(key);
        } catch (const std::exception&) {
            throw JsonError("list key '" + key + "' is not a vertex id");
        }
        for (const auto& c : value) {
            if (!c.is_number_integer()) throw JsonError("colors must be integers");
            out.lists[v].insert(c.get<Color>());
        }
    }
    if (j.contains("S")) {
        const json& js = j.at("S");
        if (js.contains("vertices"))
            for (VertexId v : walk_from_json(js.at("vertices"), "S.vertices"))
                out.s.vertices.insert(v);
        if (js.contains("edges"))
            for (const auto& e : js.at("edges")) {
                auto pair = walk_from_json(e, "S.edges entry");
                if (pair.size() != 2) throw JsonError("S edge must have two endpoints");
                out.s.edges.insert(edge_key(pair[0], pair[1]));
            }
    }
    if (j.contains("p1")) out.p1 = j.at("p1").get<VertexId>();
    if (j.contains("p2")) out.p2 = j.at("p2").get<VertexId>();
    return out;
}

json coloring_to_json(const Coloring& coloring) {
    json inner = json::object();
    for (const auto& [v, c] : coloring) inner[std::to_string(v)] = c;
    json j;
    j["coloring"] = inner;
    return j;
}

Coloring coloring_from_json(const json& j) {
    if (!j.contains("coloring")) throw JsonError("expected a 'coloring' object");
    Coloring out;
    for (const auto& [key, value] : j.at("coloring").items()) {
        try {
            out[std::stoi(key)] = value.get<Color>();
        } catch (const std::exception&) {
            throw JsonError("coloring key '" + key + "' is not a vertex id");
        }
    }
    return out;
}

json certificate_to_json(const HarmonicaCertificate& cert) {
    json j;
    if (std::holds_alternative<VertexId>(cert.origin))
        j["from"] = std::get<VertexId>(cert.origin);
    else {
        const auto& e = std::get<PathRef>(cert.origin);
        j["from"] = json::array({e[0], e[1]});
    }
    j["to"] = cert.terminal;
    json steps = json::array();
    for (const auto& s : cert.steps) {
        json step;
        switch (s.kind) {
        case HarmonicaStep::Kind::Start: step["kind"] = "start"; break;
        case HarmonicaStep::Kind::Step: step["kind"] = "step"; break;
        case HarmonicaStep::Kind::Base: step["kind"] = "base"; break;
        }
        step["verts"] = json::array({s.verts[0], s.verts[1], s.verts[2]});
        json residual = json::array();
        for (Color c : s.residual) residual.push_back(c);
        step["residual"] = residual;
        if (s.kind == HarmonicaStep::Kind::Step) {
            json dropped = json::array();
            for (VertexId v : s.dropped) dropped.push_back(v);
            step["dropped"] = dropped;
        }
        steps.push_back(step);
    }
    j["steps"] = steps;
    return j;
}

HarmonicaCertificate certificate_from_json(const json& j) {
    if (!j.contains("from") || !j.contains("to") || !j.contains("steps"))
        throw JsonError("certificate needs 'from', 'to' and 'steps'");
    HarmonicaCertificate cert;
    if (j.at("from").is_array()) {
        auto e = walk_from_json(j.at("from"), "from");
        if (e.size() != 2) throw JsonError("edge origin must have two vertices");
        cert.origin = PathRef{e[0], e[1]};
    } else {
        cert.origin = j.at("from").get<VertexId>();
    }
    cert.terminal = j.at("to").get<VertexId>();
    for (const auto& js : j.at("steps")) {
        HarmonicaStep step;
        std::string kind = js.at("kind").get<std::string>();
        if (kind == "start") step.kind = HarmonicaStep::Kind::Start;
        else if (kind == "step") step.kind = HarmonicaStep::Kind::Step;
        else if (kind == "base") step.kind = HarmonicaStep::Kind::Base;
        else throw JsonError("unknown step kind '" + kind + "'");
        auto verts = walk_from_json(js.at("verts"), "verts");
        if (verts.size() != 3) throw JsonError("each step names three vertices");
        step.verts = {verts[0], verts[1], verts[2]};
        for (const auto& c : js.at("residual")) step.residual.insert(c.get<Color>());
        if (js.contains("dropped"))
            for (VertexId v : walk_from_json(js.at("dropped"), "dropped"))
                step.dropped.insert(v);
        cert.steps.push_back(std::move(step));
    }
    return cert;
}

} // namespace harmonica
