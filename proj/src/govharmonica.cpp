#include <algorithm>
#include <cassert>

#include "harmonica/harmonica.hpp"

namespace harmonica {

namespace {

ColorSet set_minus(const ColorSet& a, const ColorSet& b) {
    ColorSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
    return out;
}

ColorSet set_union(const ColorSet& a, Color c) {
    ColorSet out = a;
    out.insert(c);
    return out;
}

bool same_edge(const PathRef& a, const PathRef& b) {
    return edge_key(a[0], a[1]) == edge_key(b[0], b[1]);
}

// Rolling government descriptor along the recursion.
struct LevelGov {
    Government::Kind kind;
    PathRef pair; // ordered; for dictatorships index 0 is the dictator
    Color dict_color = -1;
    ColorSet colors; // partner colors (dictatorship) or the democracy pair
};

LevelGov level_from_government(const Government& g) {
    LevelGov out;
    out.kind = g.kind;
    if (g.kind == Government::Kind::Dictatorship) {
        out.pair = {g.path[g.dictator_index], g.path[1 - g.dictator_index]};
        out.dict_color = g.dictator_color;
        out.colors = g.satellite_colors;
    } else {
        out.pair = g.path;
        out.colors = {g.democracy_colors.first, g.democracy_colors.second};
    }
    return out;
}

struct GovDetector {
    const Canvas& canvas;
    PathRef p_prime;
    std::vector<GovHarmonicaStep> trace;
    std::set<VertexId> used;
    std::optional<GovernmentHarmonica> found;
    const Government& top;
    PathRef top_p;

    const ListAssignment& lists() const { return canvas.lists; }
    const PlaneGraph& g() const { return canvas.graph; }

    bool accept() {
        GovernmentHarmonica h;
        h.p = top_p;
        h.p_prime = p_prime;
        h.government = top;
        h.steps = trace;
        h.vertices.insert(top_p[0]);
        h.vertices.insert(top_p[1]);
        h.vertices.insert(p_prime[0]);
        h.vertices.insert(p_prime[1]);
        h.edges.insert(edge_key(top_p[0], top_p[1]));
        h.edges.insert(edge_key(p_prime[0], p_prime[1]));
        for (const auto& s : trace) {
            h.vertices.insert(s.pair_before[0]);
            h.vertices.insert(s.pair_before[1]);
            if (s.rule == GovHarmonicaStep::Rule::DictatorTriangle) {
                // Triangle hanging off the dictator.
                h.vertices.insert(s.new_pair[0]);
                h.vertices.insert(s.new_pair[1]);
                h.edges.insert(edge_key(s.apex, s.new_pair[0]));
                h.edges.insert(edge_key(s.apex, s.new_pair[1]));
                h.edges.insert(edge_key(s.new_pair[0], s.new_pair[1]));
            } else if (s.rule == GovHarmonicaStep::Rule::DemocracyApex) {
                // Apex above the current pair; the next pair edge is one of
                // the two apex edges.
                h.vertices.insert(s.apex);
                h.edges.insert(edge_key(s.apex, s.pair_before[0]));
                h.edges.insert(edge_key(s.apex, s.pair_before[1]));
            }
        }
        if (verify_government_harmonica(canvas, h).ok) {
            found = std::move(h);
            return true;
        }
        return false;
    }

    bool search(const LevelGov& gov) {
        // First bullet: the whole graph is the single edge P = P'.
        if (same_edge(gov.pair, p_prime)) {
            trace.push_back({GovHarmonicaStep::Rule::Terminal, gov.pair, {-1, -1}, -1, {}, -1, {}});
            if (accept()) return true;
            trace.pop_back();
        }
        if (gov.kind == Government::Kind::Dictatorship) {
            VertexId z = gov.pair[0];
            VertexId pbar = gov.pair[1];
            // Second bullet: P and P' meet exactly in the dictator.
            if (!same_edge(gov.pair, p_prime) && (p_prime[0] == z || p_prime[1] == z)) {
                VertexId t = p_prime[0] == z ? p_prime[1] : p_prime[0];
                if (t != pbar && !used.count(t)) {
                    trace.push_back({GovHarmonicaStep::Rule::SharedDictator, gov.pair, p_prime,
                                     -1, {}, -1, {}});
                    if (accept()) return true;
                    trace.pop_back();
                }
            }
            // Third bullet: triangle z-u1-u2 carrying a democracy onward.
            if (p_prime[0] == z || p_prime[1] == z) return false; // z is deleted below
            std::vector<VertexId> nbrs;
            for (VertexId v : g().rotation(z))
                if (v == pbar || !used.count(v)) nbrs.push_back(v);
            std::sort(nbrs.begin(), nbrs.end());
            for (std::size_t i = 0; i < nbrs.size(); ++i)
                for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                    VertexId u1 = nbrs[i], u2 = nbrs[j];
                    if (!g().has_edge(u1, u2)) continue;
                    ColorSet l0;
                    bool partner = (u1 == pbar || u2 == pbar);
                    if (partner) {
                        if (gov.colors.size() != 2) continue;
                        l0 = gov.colors;
                        VertexId fresh = u1 == pbar ? u2 : u1;
                        if (!lists().has(fresh) ||
                            lists().at(fresh) != set_union(l0, gov.dict_color) ||
                            lists().at(fresh).size() != 3)
                            continue;
                    } else {
                        if (!lists().has(u1) || !lists().has(u2)) continue;
                        const ColorSet& l1 = lists().at(u1);
                        if (l1 != lists().at(u2) || l1.size() != 3 || !l1.count(gov.dict_color))
                            continue;
                        l0 = set_minus(l1, {gov.dict_color});
                    }
                    std::set<VertexId> deleted{z};
                    if (!partner) deleted.insert(pbar);
                    if (deleted.count(p_prime[0]) || deleted.count(p_prime[1])) continue;
                    trace.push_back({GovHarmonicaStep::Rule::DictatorTriangle, gov.pair,
                                     {u1, u2}, z, l0, gov.dict_color, deleted});
                    std::set<VertexId> added;
                    for (VertexId v : {u1, u2})
                        if (used.insert(v).second) added.insert(v);
                    LevelGov next{Government::Kind::Democracy, {u1, u2}, -1, l0};
                    if (search(next)) return true;
                    for (VertexId v : added) used.erase(v);
                    trace.pop_back();
                }
            return false;
        }
        // Fourth bullet: democracy with an apex vertex above the edge.
        VertexId a = gov.pair[0], b = gov.pair[1];
        std::vector<VertexId> apexes;
        for (VertexId v : g().rotation(a))
            if (!used.count(v) && g().has_edge(b, v)) apexes.push_back(v);
        std::sort(apexes.begin(), apexes.end());
        for (VertexId z : apexes) {
            if (!lists().has(z)) continue;
            const ColorSet& lz = lists().at(z);
            if (lz.size() != 3 || !std::includes(lz.begin(), lz.end(), gov.colors.begin(),
                                                 gov.colors.end()))
                continue;
            Color c = *set_minus(lz, gov.colors).begin();
            for (int i : {0, 1}) {
                VertexId gone = gov.pair[i];
                VertexId survivor = gov.pair[1 - i];
                if (gone == p_prime[0] || gone == p_prime[1]) continue;
                trace.push_back({GovHarmonicaStep::Rule::DemocracyApex, gov.pair,
                                 {z, survivor}, z, gov.colors, c, {gone}});
                bool z_new = used.insert(z).second;
                LevelGov next{Government::Kind::Dictatorship, {z, survivor}, c, gov.colors};
                if (search(next)) return true;
                if (z_new) used.erase(z);
                trace.pop_back();
            }
        }
        return false;
    }
};

} // namespace

std::optional<GovernmentHarmonica> find_government_harmonica(const Canvas& canvas,
                                                             const PathRef& p,
                                                             const PathRef& p_prime,
                                                             const Government& c) {
    const PlaneGraph& g = canvas.graph;
    if (!g.has_vertex(p[0]) || !g.has_vertex(p[1]) || !g.has_edge(p[0], p[1]))
        return std::nullopt;
    if (!g.has_vertex(p_prime[0]) || !g.has_vertex(p_prime[1]) ||
        !g.has_edge(p_prime[0], p_prime[1]))
        return std::nullopt;
    if (!same_edge(c.path, p)) return std::nullopt;
    GovDetector d{canvas, p_prime, {}, {p[0], p[1]}, std::nullopt, c, p};
    d.search(level_from_government(c));
    return d.found;
}

VerifyResult verify_government_harmonica(const Canvas& canvas, const GovernmentHarmonica& h) {
    auto fail = [](std::string clause) { return VerifyResult{false, std::move(clause)}; };
    const ListAssignment& lists = canvas.lists;
    if (h.steps.empty()) return fail("empty_trace");

    PlaneGraph level = canvas.graph.subgraph(h.vertices, h.edges);
    LevelGov gov = level_from_government(h.government);
    if (!same_edge(h.government.path, h.p)) return fail("government_path_mismatch");

    for (std::size_t i = 0; i < h.steps.size(); ++i) {
        const GovHarmonicaStep& s = h.steps[i];
        const bool last = i + 1 == h.steps.size();
        if (!same_edge(s.pair_before, gov.pair)) return fail("level_pair_mismatch");

        // Canvas clauses at this level: the current pair plays S, and both it
        // and P' must lie on the boundary of the outer face.
        SubgraphRef sref;
        sref.vertices = {gov.pair[0], gov.pair[1]};
        sref.edges = {edge_key(gov.pair[0], gov.pair[1])};
        if (!validate_canvas(level, sref, lists).ok()) return fail("level_not_a_canvas");
        auto outer_edges = level.outer_edge_set();
        if (!outer_edges.count(edge_key(gov.pair[0], gov.pair[1])))
            return fail("pair_not_on_outer_face");
        if (!level.has_vertex(h.p_prime[0]) || !level.has_vertex(h.p_prime[1]) ||
            !outer_edges.count(edge_key(h.p_prime[0], h.p_prime[1])))
            return fail("p_prime_not_on_outer_face");

        switch (s.rule) {
        case GovHarmonicaStep::Rule::Terminal: {
            if (!last) return fail("terminal_not_last");
            if (!same_edge(gov.pair, h.p_prime)) return fail("terminal_pair_mismatch");
            if (level.vertex_count() != 2 || level.edge_count() != 1)
                return fail("terminal_graph_not_exact");
            break;
        }
        case GovHarmonicaStep::Rule::SharedDictator: {
            if (!last) return fail("terminal_not_last");
            if (gov.kind != Government::Kind::Dictatorship) return fail("rule_needs_dictatorship");
            VertexId z = gov.pair[0];
            if (h.p_prime[0] != z && h.p_prime[1] != z) return fail("dictator_not_shared");
            if (same_edge(gov.pair, h.p_prime)) return fail("paths_equal_under_rule2");
            if (level.vertex_count() != 3 || level.edge_count() != 2)
                return fail("rule2_graph_not_exact");
            break;
        }
        case GovHarmonicaStep::Rule::DictatorTriangle: {
            if (last) return fail("chain_ends_without_terminal");
            if (gov.kind != Government::Kind::Dictatorship) return fail("rule_needs_dictatorship");
            VertexId z = gov.pair[0], pbar = gov.pair[1];
            if (s.apex != z) return fail("rule3_apex_mismatch");
            VertexId u1 = s.new_pair[0], u2 = s.new_pair[1];
            if (!level.has_vertex(u1) || !level.has_vertex(u2) || !level.has_edge(z, u1) ||
                !level.has_edge(z, u2) || !level.has_edge(u1, u2))
                return fail("rule3_triangle_missing");
            if (s.l0.size() != 2 || s.extra_color != gov.dict_color)
                return fail("rule3_colors_mismatch");
            for (VertexId u : {u1, u2}) {
                if (u == pbar) {
                    if (gov.colors != s.l0) return fail("rule3_partner_colors");
                } else {
                    if (!lists.has(u) || lists.at(u) != set_union(s.l0, gov.dict_color) ||
                        lists.at(u).size() != 3)
                        return fail("rule3_list_clause");
                }
            }
            std::set<VertexId> expect_deleted{z};
            if (u1 != pbar && u2 != pbar) expect_deleted.insert(pbar);
            if (s.deleted != expect_deleted) return fail("rule3_deletions");
            level = level.delete_vertices(s.deleted);
            gov = LevelGov{Government::Kind::Democracy, {u1, u2}, -1, s.l0};
            break;
        }
        case GovHarmonicaStep::Rule::DemocracyApex: {
            if (last) return fail("chain_ends_without_terminal");
            if (gov.kind != Government::Kind::Democracy) return fail("rule_needs_democracy");
            VertexId z = s.apex;
            if (!level.has_vertex(z) || !level.has_edge(z, gov.pair[0]) ||
                !level.has_edge(z, gov.pair[1]))
                return fail("rule4_apex_missing");
            if (!lists.has(z) || lists.at(z) != set_union(gov.colors, s.extra_color) ||
                lists.at(z).size() != 3)
                return fail("rule4_list_clause");
            if (s.l0 != gov.colors) return fail("rule4_colors_mismatch");
            if (s.deleted.size() != 1) return fail("rule4_deletions");
            VertexId gone = *s.deleted.begin();
            if (gone != gov.pair[0] && gone != gov.pair[1]) return fail("rule4_deletions");
            VertexId survivor = gone == gov.pair[0] ? gov.pair[1] : gov.pair[0];
            if (!(s.new_pair == std::array<VertexId, 2>{z, survivor}))
                return fail("rule4_new_pair");
            level = level.delete_vertices(s.deleted);
            gov = LevelGov{Government::Kind::Dictatorship, {z, survivor}, s.extra_color,
                           gov.colors};
            break;
        }
        }
    }
    return VerifyResult{true, ""};
}

// ---------------------------------------------------------------------------
// Lemma-level conversion into a coloring harmonica.
// ---------------------------------------------------------------------------

ColoringHarmonica convert_harmonica(const Canvas& host, const GovernmentHarmonica& h,
                                    VertexId w, Color d) {
    const ListAssignment& lists = host.lists;
    if (w != h.p_prime[0] && w != h.p_prime[1])
        throw HypothesisViolated("dictator_not_on_p_prime", "w must be an endpoint of P'");
    if (w == h.p[0] || w == h.p[1])
        throw HypothesisViolated("vertices_not_distinct", "w must avoid the ends of P");
    if (!lists.has(w) || !lists.at(w).count(d))
        throw HypothesisViolated("dictated_color_not_in_list",
                                 "d must belong to the list of w");

    LevelGov gov = level_from_government(h.government);
    auto degree_in = [&h](VertexId v) {
        int deg = 0;
        for (const Edge& e : h.edges)
            if (e.first == v || e.second == v) ++deg;
        return deg;
    };
    HarmonicaOrigin origin;
    if (gov.kind == Government::Kind::Dictatorship) {
        VertexId u = gov.pair[0], v = gov.pair[1];
        if (!lists.has(u) || lists.at(u).size() != 1)
            throw HypothesisViolated("dictator_list_not_singleton",
                                     "dictatorship case needs |L(u)| = 1");
        if (degree_in(v) >= 2) {
            ColorSet rest = set_minus(lists.at(v), lists.at(u));
            if (rest.size() != 2)
                throw HypothesisViolated("partner_list_clause",
                                         "dictatorship case needs |L(v) - L(u)| = 2");
        }
        origin = u;
    } else {
        for (VertexId v : gov.pair)
            if (!lists.has(v) || lists.at(v).size() != 2)
                throw HypothesisViolated("democracy_list_clause",
                                         "democracy case needs both P-lists of size two");
        origin = PathRef{gov.pair[0], gov.pair[1]};
    }

    std::vector<HarmonicaStep> steps;
    std::size_t i = 0;
    while (true) {
        if (i >= h.steps.size())
            throw HypothesisViolated("trace_shape", "trace ended before reaching the dictator");
        const GovHarmonicaStep& s = h.steps[i];
        if (gov.kind == Government::Kind::Dictatorship) {
            if (s.rule != GovHarmonicaStep::Rule::DictatorTriangle)
                throw HypothesisViolated("trace_shape",
                                         "dictatorship level must apply the triangle rule");
            steps.push_back({HarmonicaStep::Kind::Start,
                             {gov.pair[0], s.new_pair[0], s.new_pair[1]},
                             {},
                             s.l0});
            gov = LevelGov{Government::Kind::Democracy, s.new_pair, -1, s.l0};
            ++i;
        } else {
            if (s.rule != GovHarmonicaStep::Rule::DemocracyApex)
                throw HypothesisViolated("trace_shape",
                                         "democracy level must apply the apex rule");
            if (s.apex == w) {
                steps.push_back({HarmonicaStep::Kind::Base,
                                 {gov.pair[0], gov.pair[1], w},
                                 {},
                                 gov.colors});
                break;
            }
            VertexId gone = *s.deleted.begin();
            VertexId survivor = gone == gov.pair[0] ? gov.pair[1] : gov.pair[0];
            std::set<VertexId> dropped{gone};
            bool reused = false;
            if (i + 1 < h.steps.size()) {
                const auto& next = h.steps[i + 1];
                if (next.rule == GovHarmonicaStep::Rule::DictatorTriangle &&
                    (next.new_pair[0] == survivor || next.new_pair[1] == survivor))
                    reused = true;
            }
            if (!reused) dropped.insert(survivor);
            steps.push_back({HarmonicaStep::Kind::Step,
                             {gov.pair[0], gov.pair[1], s.apex},
                             dropped,
                             gov.colors});
            gov = LevelGov{Government::Kind::Dictatorship, {s.apex, survivor}, s.extra_color,
                           gov.colors};
            ++i;
        }
    }

    HarmonicaCertificate cert{origin, w, std::move(steps)};
    PlaneGraph reduced = host.graph.subgraph(cert.chain_vertices(), cert.chain_edges());
    ListAssignment out_lists = lists.restricted_to(cert.chain_vertices());
    out_lists[w].erase(d);
    return ColoringHarmonica{std::move(reduced), std::move(out_lists), std::move(cert)};
}

} // namespace harmonica
