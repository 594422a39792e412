#include "harmonica/harmonica.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "harmonica/json_io.hpp"

namespace harmonica {

namespace {

ColorSet set_minus(const ColorSet& a, const ColorSet& b) {
    ColorSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
    return out;
}

bool subset(const ColorSet& a, const ColorSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

std::set<VertexId> HarmonicaCertificate::chain_vertices() const {
    std::set<VertexId> out;
    if (std::holds_alternative<VertexId>(origin)) {
        out.insert(std::get<VertexId>(origin));
    } else {
        const auto& e = std::get<PathRef>(origin);
        out.insert(e[0]);
        out.insert(e[1]);
    }
    for (const auto& s : steps) out.insert(s.verts.begin(), s.verts.end());
    return out;
}

std::set<Edge> HarmonicaCertificate::chain_edges() const {
    std::set<Edge> out;
    if (std::holds_alternative<PathRef>(origin)) {
        const auto& e = std::get<PathRef>(origin);
        out.insert(edge_key(e[0], e[1]));
    }
    for (const auto& s : steps) {
        out.insert(edge_key(s.verts[0], s.verts[1]));
        out.insert(edge_key(s.verts[0], s.verts[2]));
        out.insert(edge_key(s.verts[1], s.verts[2]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verifier
// ---------------------------------------------------------------------------

VerifyResult verify_coloring_harmonica(const PlaneGraph& graph, const ListAssignment& lists,
                                       const HarmonicaCertificate& cert,
                                       const HarmonicaOrigin& from, VertexId to) {
    auto fail = [](std::string clause) { return VerifyResult{false, std::move(clause)}; };

    if (!(cert.origin == from)) return fail("origin_mismatch");
    if (cert.terminal != to) return fail("terminal_mismatch");
    if (cert.steps.empty()) return fail("empty_certificate");
    if (!graph.has_vertex(to)) return fail("terminal_not_in_graph");

    // Pass 1: shape, interfaces, distinctness and list clauses on host lists.
    bool in_pair_state;               // otherwise singleton state
    VertexId cur_vertex = -1;         // singleton state
    PathRef cur_pair{-1, -1};         // pair state
    ColorSet residual;                // singleton set or pair set M
    std::set<VertexId> used;
    VertexId reusable = -1; // kept endpoint of the previous step, -1 when none
    ColorSet reusable_list;

    auto host_list = [&](VertexId v) -> const ColorSet* {
        if (!lists.has(v)) return nullptr;
        return &lists.at(v);
    };

    if (std::holds_alternative<VertexId>(from)) {
        VertexId u = std::get<VertexId>(from);
        if (!graph.has_vertex(u)) return fail("origin_not_in_graph");
        if (u == to) return fail("origin_equals_terminal");
        const ColorSet* l = host_list(u);
        if (!l || l->size() != 1) return fail("origin_list_size");
        in_pair_state = false;
        cur_vertex = u;
        residual = *l;
        used.insert(u);
    } else {
        PathRef e = std::get<PathRef>(from);
        if (!graph.has_vertex(e[0]) || !graph.has_vertex(e[1]) || !graph.has_edge(e[0], e[1]))
            return fail("origin_edge_missing");
        if (e[0] == to || e[1] == to) return fail("origin_equals_terminal");
        const ColorSet* lu = host_list(e[0]);
        const ColorSet* lv = host_list(e[1]);
        if (!lu || !lv || lu->size() != 2 || *lu != *lv) return fail("origin_pair_lists");
        in_pair_state = true;
        cur_pair = e;
        residual = *lu;
        used.insert(e[0]);
        used.insert(e[1]);
    }

    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const HarmonicaStep& s = cert.steps[i];
        const bool last = i + 1 == cert.steps.size();
        switch (s.kind) {
        case HarmonicaStep::Kind::Start: {
            if (in_pair_state) return fail("start_in_pair_state");
            if (last) return fail("chain_ends_without_base");
            VertexId a = s.verts[0], x = s.verts[1], y = s.verts[2];
            if (a != cur_vertex) return fail("start_interface_mismatch");
            if (x == y || x == to || y == to) return fail("start_vertices_invalid");
            auto avail = [&](VertexId v) { return !used.count(v) || reusable == v; };
            if (!avail(x) || !avail(y)) return fail("start_vertex_reused");
            if (reusable != -1 && reusable != x && reusable != y)
                return fail("stranded_kept_endpoint");
            if (!graph.has_edge(a, x) || !graph.has_edge(a, y) || !graph.has_edge(x, y))
                return fail("start_triangle_missing");
            const ColorSet* lx = reusable == x ? &reusable_list : host_list(x);
            const ColorSet* ly = reusable == y ? &reusable_list : host_list(y);
            if (!lx || !ly) return fail("missing_list");
            ColorSet mx = set_minus(*lx, residual);
            ColorSet my = set_minus(*ly, residual);
            if (mx.size() != 2 || mx != my) return fail("start_list_clause");
            if (s.residual != mx) return fail("start_residual_mismatch");
            if (s.dropped.size() > 0) return fail("start_has_drop_set");
            used.insert(x);
            used.insert(y);
            reusable = -1;
            in_pair_state = true;
            cur_pair = {x, y};
            residual = mx;
            break;
        }
        case HarmonicaStep::Kind::Step: {
            if (!in_pair_state) return fail("step_in_singleton_state");
            if (last) return fail("chain_ends_without_base");
            VertexId u = s.verts[0], v = s.verts[1], z = s.verts[2];
            if (!((u == cur_pair[0] && v == cur_pair[1]) ||
                  (u == cur_pair[1] && v == cur_pair[0])))
                return fail("step_interface_mismatch");
            if (z == to || used.count(z)) return fail("step_vertex_reused");
            if (!graph.has_edge(u, z) || !graph.has_edge(v, z) || !graph.has_edge(u, v))
                return fail("step_triangle_missing");
            const ColorSet* lz = host_list(z);
            if (!lz) return fail("missing_list");
            if (lz->size() != 3 || !subset(residual, *lz)) return fail("step_list_clause");
            if (s.residual != residual) return fail("step_residual_mismatch");
            if (s.dropped.empty()) return fail("step_drops_nothing");
            for (VertexId d : s.dropped)
                if (d != u && d != v) return fail("step_drop_not_endpoint");
            ColorSet singleton = set_minus(*lz, residual);
            used.insert(z);
            reusable = s.dropped.size() == 1 ? (s.dropped.count(u) ? v : u) : -1;
            if (reusable != -1) reusable_list = residual;
            in_pair_state = false;
            cur_vertex = z;
            residual = singleton;
            break;
        }
        case HarmonicaStep::Kind::Base: {
            if (!in_pair_state) return fail("base_in_singleton_state");
            if (!last) return fail("base_not_terminal");
            VertexId u = s.verts[0], v = s.verts[1], w = s.verts[2];
            if (!((u == cur_pair[0] && v == cur_pair[1]) ||
                  (u == cur_pair[1] && v == cur_pair[0])))
                return fail("base_interface_mismatch");
            if (w != to) return fail("base_terminal_mismatch");
            if (used.count(w)) return fail("base_terminal_reused");
            if (!graph.has_edge(u, w) || !graph.has_edge(v, w) || !graph.has_edge(u, v))
                return fail("base_triangle_missing");
            const ColorSet* lw = host_list(w);
            if (!lw) return fail("missing_list");
            if (*lw != residual) return fail("base_list_clause");
            if (s.residual != residual) return fail("base_residual_mismatch");
            used.insert(w);
            break;
        }
        }
    }
    if (cert.steps.back().kind != HarmonicaStep::Kind::Base)
        return fail("chain_ends_without_base");

    // Pass 2: replay the recursion on the recorded structure itself and check
    // the outer-face incidences level by level.
    PlaneGraph level = graph.subgraph(cert.chain_vertices(), cert.chain_edges());
    for (const HarmonicaStep& s : cert.steps) {
        std::set<VertexId> outer = level.outer_vertices();
        if (!outer.count(to)) return fail("terminal_not_on_outer_face");
        switch (s.kind) {
        case HarmonicaStep::Kind::Start: {
            for (VertexId v : s.verts)
                if (!outer.count(v)) return fail("start_not_on_outer_face");
            level = level.delete_vertices({s.verts[0]});
            break;
        }
        case HarmonicaStep::Kind::Step: {
            if (!level.outer_edge_set().count(edge_key(s.verts[0], s.verts[1])))
                return fail("step_pair_edge_not_on_outer_face");
            if (!outer.count(s.verts[2])) return fail("step_not_on_outer_face");
            level = level.delete_vertices(s.dropped);
            break;
        }
        case HarmonicaStep::Kind::Base: {
            std::set<VertexId> want(s.verts.begin(), s.verts.end());
            std::set<VertexId> have;
            for (VertexId v : level.vertices()) have.insert(v);
            if (have != want) return fail("base_graph_not_exact_triangle");
            if (level.edge_count() != 3) return fail("base_graph_not_exact_triangle");
            if (!level.outer_edge_set().count(edge_key(s.verts[0], s.verts[1])))
                return fail("base_pair_edge_not_on_outer_face");
            break;
        }
        }
    }

    return VerifyResult{true, ""};
}

// ---------------------------------------------------------------------------
// Detector
// ---------------------------------------------------------------------------

namespace {

struct Detector {
    const PlaneGraph& graph;
    const ListAssignment& lists;
    VertexId target;
    HarmonicaOrigin origin;
    std::vector<HarmonicaStep> chain;
    std::set<VertexId> used;
    std::optional<HarmonicaCertificate> found;

    bool accept() {
        HarmonicaCertificate cert{origin, target, chain};
        if (verify_coloring_harmonica(graph, lists, cert, origin, target).ok) {
            found = std::move(cert);
            return true;
        }
        return false;
    }

    // Pair state: residual M lives on (x, y).  Base tried first so certs are
    // as short as possible; then each forcing triangle, smaller z first.
    bool search_pair(VertexId x, VertexId y, const ColorSet& m) {
        if (!used.count(target) && graph.has_edge(x, target) && graph.has_edge(y, target) &&
            lists.has(target) && lists.at(target) == m) {
            chain.push_back({HarmonicaStep::Kind::Base, {x, y, target}, {}, m});
            if (accept()) return true;
            chain.pop_back();
        }
        std::vector<VertexId> zs;
        for (VertexId z : graph.rotation(x))
            if (z != target && !used.count(z) && graph.has_edge(y, z)) zs.push_back(z);
        std::sort(zs.begin(), zs.end());
        for (VertexId z : zs) {
            if (!lists.has(z)) continue;
            const ColorSet& lz = lists.at(z);
            if (lz.size() != 3 || !subset(m, lz)) continue;
            ColorSet singleton = set_minus(lz, m);
            chain.push_back({HarmonicaStep::Kind::Step, {x, y, z}, {x, y}, m});
            used.insert(z);
            if (search_singleton(z, singleton, {{x, m}, {y, m}})) return true;
            used.erase(z);
            chain.pop_back();
        }
        return false;
    }

    // Singleton state.  `reusables` holds the previous step's endpoints with
    // their residual lists; at most one may join the next pair, and whichever
    // does is recorded as kept (removed from the step's drop set).
    bool search_singleton(VertexId a, const ColorSet& s,
                          const std::vector<std::pair<VertexId, ColorSet>>& reusables) {
        std::vector<VertexId> nbrs;
        for (VertexId v : graph.rotation(a)) {
            if (v == target) continue;
            bool reusable = false;
            for (const auto& [r, _] : reusables)
                if (r == v) reusable = true;
            if (used.count(v) && !reusable) continue;
            nbrs.push_back(v);
        }
        std::sort(nbrs.begin(), nbrs.end());
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                VertexId x = nbrs[i], y = nbrs[j];
                if (!graph.has_edge(x, y)) continue;
                int reused = 0;
                ColorSet effx, effy;
                bool have_x = false, have_y = false;
                for (const auto& [r, rl] : reusables) {
                    if (r == x) { effx = rl; have_x = true; ++reused; }
                    if (r == y) { effy = rl; have_y = true; ++reused; }
                }
                if (reused > 1) continue; // the step deletes one or both
                if (!have_x) {
                    if (!lists.has(x)) continue;
                    effx = lists.at(x);
                }
                if (!have_y) {
                    if (!lists.has(y)) continue;
                    effy = lists.at(y);
                }
                ColorSet mx = set_minus(effx, s);
                if (mx.size() != 2) continue;
                if (set_minus(effy, s) != mx) continue;
                // Patch the previous step's drop set with what is now kept.
                std::optional<HarmonicaStep> saved;
                if (!chain.empty() && chain.back().kind == HarmonicaStep::Kind::Step) {
                    saved = chain.back();
                    for (VertexId kept : {x, y}) chain.back().dropped.erase(kept);
                }
                chain.push_back({HarmonicaStep::Kind::Start, {a, x, y}, {}, mx});
                bool newx = !used.count(x), newy = !used.count(y);
                used.insert(x);
                used.insert(y);
                if (search_pair(x, y, mx)) return true;
                if (newx) used.erase(x);
                if (newy) used.erase(y);
                chain.pop_back();
                if (saved) chain.back() = *saved;
            }
        }
        return false;
    }
};

} // namespace

std::optional<HarmonicaCertificate> find_coloring_harmonica(const PlaneGraph& graph,
                                                            const ListAssignment& lists,
                                                            VertexId p1, VertexId p2) {
    if (!graph.has_vertex(p1) || !graph.has_vertex(p2) || p1 == p2) return std::nullopt;
    if (!lists.has(p1) || lists.at(p1).size() != 1) return std::nullopt;
    Detector d{graph, lists, p2, p1, {}, {p1}, std::nullopt};
    d.search_singleton(p1, lists.at(p1), {});
    return d.found;
}

std::optional<HarmonicaCertificate> find_coloring_harmonica_from_edge(const PlaneGraph& graph,
                                                                      const ListAssignment& lists,
                                                                      const PathRef& uv,
                                                                      VertexId to) {
    if (!graph.has_vertex(uv[0]) || !graph.has_vertex(uv[1]) || !graph.has_vertex(to))
        return std::nullopt;
    if (uv[0] == to || uv[1] == to || !graph.has_edge(uv[0], uv[1])) return std::nullopt;
    if (!lists.has(uv[0]) || !lists.has(uv[1])) return std::nullopt;
    const ColorSet& lu = lists.at(uv[0]);
    if (lu.size() != 2 || lists.at(uv[1]) != lu) return std::nullopt;
    Detector d{graph, lists, to, uv, {}, {uv[0], uv[1]}, std::nullopt};
    d.search_pair(uv[0], uv[1], lu);
    return d.found;
}

// ---------------------------------------------------------------------------
// Decision pipeline
// ---------------------------------------------------------------------------

DecideResult decide_with_certificate(const PlaneGraph& graph, const ListAssignment& lists,
                                     VertexId p1, VertexId p2) {
    std::vector<std::string> audit;
    if (!graph.has_vertex(p1)) audit.push_back("p1 not in graph");
    if (!graph.has_vertex(p2)) audit.push_back("p2 not in graph");
    if (p1 == p2) audit.push_back("p1 equals p2");
    std::set<VertexId> outer = graph.outer_vertices();
    if (graph.has_vertex(p1) && !outer.count(p1)) audit.push_back("p1 not on outer face");
    if (graph.has_vertex(p2) && !outer.count(p2)) audit.push_back("p2 not on outer face");
    for (VertexId v : graph.vertices()) {
        if (!lists.has(v)) {
            audit.push_back("vertex " + std::to_string(v) + " missing a list");
            continue;
        }
        std::size_t size = lists.at(v).size();
        if (v == p1) continue;
        if (v == p2) {
            if (size < 2) audit.push_back("list of p2 below 2");
        } else if (outer.count(v)) {
            if (size < 3) audit.push_back("outer list of " + std::to_string(v) + " below 3");
        } else if (size < 5) {
            audit.push_back("interior list of " + std::to_string(v) + " below 5");
        }
    }
    if (!audit.empty()) {
        std::string report;
        for (const auto& a : audit) report += a + "; ";
        throw HypothesisViolated("list_size_audit", report);
    }

    auto coloring = find_coloring(graph, lists, {});
    auto cert = find_coloring_harmonica(graph, lists, p1, p2);

    // The two verdicts must agree; this equivalence is the point of the
    // whole pipeline, so a mismatch aborts with a reproducible dump.
    if (coloring.has_value() == cert.has_value()) {
        nlohmann::json dump = canvas_to_json(graph, lists, SubgraphRef{});
        dump["p1"] = p1;
        dump["p2"] = p2;
        dump["solver_colorable"] = coloring.has_value();
        dump["harmonica_found"] = cert.has_value();
        throw TheoremViolation(dump.dump());
    }

    DecideResult out;
    out.colorable = coloring.has_value();
    out.coloring = std::move(coloring);
    out.certificate = std::move(cert);
    return out;
}

} // namespace harmonica
