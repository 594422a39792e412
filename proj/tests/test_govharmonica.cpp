#include <doctest.h>

#include "harmonica/genfuzz.hpp"
#include "harmonica/harmonica.hpp"

using namespace harmonica;

namespace {

Canvas canvas_of(const PlaneGraph& g, const ListAssignment& lists, const PathRef& p) {
    SubgraphRef s;
    s.vertices = {p[0], p[1]};
    s.edges = {edge_key(p[0], p[1])};
    auto check = validate_canvas(g, s, lists);
    REQUIRE(check.ok());
    return *check.canvas;
}

Government democracy_on(const PathRef& p, Color a, Color b) {
    EdgeColoringSet c{p, {{a, b}, {b, a}}};
    auto cls = classify(c);
    REQUIRE(cls.kind == Classification::Kind::Democracy);
    return *cls.witness;
}

Government dictatorship_on(const PathRef& p, std::set<std::pair<Color, Color>> members) {
    EdgeColoringSet c{p, std::move(members)};
    auto cls = classify(c);
    REQUIRE(cls.kind == Classification::Kind::Dictatorship);
    return *cls.witness;
}

} // namespace

TEST_CASE("the single edge is a harmonica from P to itself") {
    PlaneGraph edge = PlaneGraph::build({{0, {1}}, {1, {0}}}, {0, 1});
    ListAssignment lists;
    lists[0] = {1, 2};
    lists[1] = {1, 2};
    Canvas canvas = canvas_of(edge, lists, {0, 1});
    auto h = find_government_harmonica(canvas, {0, 1}, {0, 1}, democracy_on({0, 1}, 1, 2));
    REQUIRE(h.has_value());
    REQUIRE(h->steps.size() == 1);
    CHECK(h->steps[0].rule == GovHarmonicaStep::Rule::Terminal);
    CHECK(verify_government_harmonica(canvas, *h).ok);
}

TEST_CASE("two edges sharing the dictator form a harmonica") {
    // Path 0 - 1 - 2 with dictator 1.
    PlaneGraph path = PlaneGraph::build({{0, {1}}, {1, {0, 2}}, {2, {1}}}, {0, 1, 2, 1});
    ListAssignment lists;
    lists[0] = {1, 2};
    lists[1] = {5};
    lists[2] = {1, 2, 3};
    Canvas canvas = canvas_of(path, lists, {1, 0});
    Government dict = dictatorship_on({1, 0}, {{5, 1}, {5, 2}});
    auto h = find_government_harmonica(canvas, {1, 0}, {1, 2}, dict);
    REQUIRE(h.has_value());
    CHECK(h->steps.size() == 1);
    CHECK(h->steps[0].rule == GovHarmonicaStep::Rule::SharedDictator);
    CHECK(verify_government_harmonica(canvas, *h).ok);
}

TEST_CASE("no harmonica without the structural triangle") {
    // Two disjoint precolored edges on a square: the dictator cannot reach.
    std::map<VertexId, std::vector<VertexId>> rot;
    for (int i = 0; i < 4; ++i) rot[i] = {(i + 1) % 4, (i + 3) % 4};
    PlaneGraph square = PlaneGraph::build(rot, {0, 1, 2, 3});
    ListAssignment lists;
    for (int i = 0; i < 4; ++i) lists[i] = {1, 2, 3};
    Canvas canvas = canvas_of(square, lists, {0, 1});
    Government dict = dictatorship_on({0, 1}, {{1, 2}, {1, 3}});
    CHECK_FALSE(find_government_harmonica(canvas, {0, 1}, {2, 3}, dict).has_value());
}

TEST_CASE("strip recast: dictatorship chain down to the far edge") {
    // Same snake as the coloring strip, with the terminal list widened by
    // the color the chain will dictate there.
    StripInstance strip = make_vertex_strip(1);
    ListAssignment lists = strip.lists;
    lists[3] = {2, 3, 4};
    Canvas canvas = canvas_of(strip.graph, lists, {0, 1});
    Government dict = dictatorship_on({0, 1}, {{1, 2}, {1, 3}});
    auto h = find_government_harmonica(canvas, {0, 1}, {3, 2}, dict);
    REQUIRE(h.has_value());
    REQUIRE(h->steps.size() == 3);
    CHECK(h->steps[0].rule == GovHarmonicaStep::Rule::DictatorTriangle);
    CHECK(h->steps[1].rule == GovHarmonicaStep::Rule::DemocracyApex);
    CHECK(h->steps[2].rule == GovHarmonicaStep::Rule::Terminal);
    CHECK(verify_government_harmonica(canvas, *h).ok);

    // The extension set of the structure dictates color 4 at the far vertex.
    EdgeColoringSet cset{{0, 1}, {{1, 2}, {1, 3}}};
    auto phi = extension_set(canvas, {0, 1}, cset, {3, 2});
    CHECK(phi.members == std::set<std::pair<Color, Color>>{{4, 2}, {4, 3}});

    ColoringHarmonica ch = convert_harmonica(canvas, *h, 3, 4);
    CHECK(ch.lists.at(3) == ColorSet{2, 3});
    CHECK(verify_coloring_harmonica(ch.graph, ch.lists, ch.certificate, ch.certificate.origin,
                                    3)
              .ok);
    CHECK_FALSE(find_coloring(ch.graph, ch.lists).has_value());

    // The image is exactly the certificate the coloring detector finds.
    auto direct = find_coloring_harmonica(strip.graph, strip.lists, 0, 3);
    REQUIRE(direct.has_value());
    CHECK(ch.certificate == *direct);
}

TEST_CASE("democracy over a triangle converts to the base certificate") {
    // Triangle 0-1-2 with a pendant 3 hanging off 2: the far path is 2-3.
    PlaneGraph g = PlaneGraph::build({{0, {1, 2}}, {1, {2, 0}}, {2, {0, 1, 3}}, {3, {2}}},
                                     {0, 1, 2, 3, 2});
    ListAssignment lists;
    lists[0] = {2, 3};
    lists[1] = {2, 3};
    lists[2] = {2, 3, 4};
    lists[3] = {1, 2, 3};
    Canvas canvas = canvas_of(g, lists, {0, 1});
    Government dem = democracy_on({0, 1}, 2, 3);
    auto h = find_government_harmonica(canvas, {0, 1}, {2, 3}, dem);
    REQUIRE(h.has_value());
    CHECK(h->steps[0].rule == GovHarmonicaStep::Rule::DemocracyApex);
    CHECK(verify_government_harmonica(canvas, *h).ok);

    EdgeColoringSet cset{{0, 1}, {{2, 3}, {3, 2}}};
    auto phi = extension_set(canvas, {0, 1}, cset, {2, 3});
    auto cls = classify(phi);
    REQUIRE(cls.kind == Classification::Kind::Dictatorship);
    CHECK(cls.witness->dictator() == 2);
    CHECK(cls.witness->dictator_color == 4);

    // The degree-one end of the far path disappears in the image.
    ColoringHarmonica ch = convert_harmonica(canvas, *h, 2, 4);
    CHECK(ch.certificate.steps.size() == 1);
    CHECK(ch.certificate.steps[0].kind == HarmonicaStep::Kind::Base);
    CHECK_FALSE(ch.graph.has_vertex(3));
    CHECK(ch.lists.at(2) == ColorSet{2, 3});
    CHECK(verify_coloring_harmonica(ch.graph, ch.lists, ch.certificate, ch.certificate.origin,
                                    2)
              .ok);
    CHECK_FALSE(find_coloring(ch.graph, ch.lists).has_value());
}

TEST_CASE("conversion hypotheses are enforced") {
    StripInstance strip = make_vertex_strip(1);
    ListAssignment lists = strip.lists;
    lists[3] = {2, 3, 4};
    Canvas canvas = canvas_of(strip.graph, lists, {0, 1});
    Government dict = dictatorship_on({0, 1}, {{1, 2}, {1, 3}});
    auto h = find_government_harmonica(canvas, {0, 1}, {3, 2}, dict);
    REQUIRE(h.has_value());
    // w must sit on P' and away from P, and d must be in w's list.
    CHECK_THROWS_AS(convert_harmonica(canvas, *h, 0, 4), HypothesisViolated);
    CHECK_THROWS_AS(convert_harmonica(canvas, *h, 3, 7), HypothesisViolated);
}

TEST_CASE("tampered traces fail verification") {
    StripInstance strip = make_vertex_strip(1);
    ListAssignment lists = strip.lists;
    lists[3] = {2, 3, 4};
    Canvas canvas = canvas_of(strip.graph, lists, {0, 1});
    Government dict = dictatorship_on({0, 1}, {{1, 2}, {1, 3}});
    auto h = find_government_harmonica(canvas, {0, 1}, {3, 2}, dict);
    REQUIRE(h.has_value());
    GovernmentHarmonica bad = *h;
    bad.steps[0].l0 = {7, 8};
    CHECK_FALSE(verify_government_harmonica(canvas, bad).ok);
    bad = *h;
    bad.steps.pop_back();
    CHECK_FALSE(verify_government_harmonica(canvas, bad).ok);
}

TEST_CASE("planted government harmonicas satisfy the three-color lemma") {
    GeneratorProfile p = default_profile(GeneratorProfile::Id::Thm9, 555, 1.0);
    for (std::uint64_t t = 0; t < 20; ++t) {
        GeneratedInstance inst = random_canvas(p, t);
        REQUIRE(inst.coloring_set.has_value());
        auto cls = classify(*inst.coloring_set);
        REQUIRE(cls.kind != Classification::Kind::Neither);
        auto h = find_government_harmonica(inst.canvas, inst.p, inst.p_prime, *cls.witness);
        REQUIRE(h.has_value());
        for (VertexId v : h->vertices) {
            if (v == h->p[0] || v == h->p[1]) continue;
            int deg = 0;
            for (const Edge& e : h->edges)
                if (e.first == v || e.second == v) ++deg;
            if ((v == h->p_prime[0] || v == h->p_prime[1]) && deg < 2) continue;
            CHECK(inst.canvas.lists.at(v).size() == 3);
        }
    }
}
