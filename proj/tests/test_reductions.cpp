#include <doctest.h>

#include "harmonica/genfuzz.hpp"
#include "harmonica/reductions.hpp"

using namespace harmonica;

namespace {

// 4-cycle x(0) - q(1) - y(2) - z(3).
Canvas four_cycle_canvas() {
    std::map<VertexId, std::vector<VertexId>> rot;
    for (int i = 0; i < 4; ++i) rot[i] = {(i + 1) % 4, (i + 3) % 4};
    PlaneGraph g = PlaneGraph::build(rot, {0, 1, 2, 3});
    ListAssignment lists;
    lists[0] = {1, 2, 3};
    lists[1] = {1, 2, 3};
    lists[2] = {1, 2, 3};
    lists[3] = {1, 2, 3};
    auto check = validate_canvas(g, SubgraphRef{}, lists);
    REQUIRE(check.ok());
    return *check.canvas;
}

} // namespace

TEST_CASE("single-vertex reduction on a 4-cycle") {
    Canvas t = four_cycle_canvas();
    DemocraticReduction red = democratic_reduction(t, {1}, {1, 2}, 0);
    CHECK(red.boundary_y == 2);
    CHECK(red.reduced.graph.vertex_count() == 3);
    CHECK(red.reduced.lists.at(0) == ColorSet{3});
    CHECK(red.reduced.lists.at(2) == ColorSet{1, 2, 3}); // y is spared
    CHECK(red.reduced.lists.at(3) == ColorSet{1, 2, 3}); // not a neighbor of P
    CHECK(red.x_added_to_s);
    CHECK(red.reduced.s.vertices == std::set<VertexId>{0});
}

TEST_CASE("center with no color outside the pair is rejected") {
    Canvas t = four_cycle_canvas();
    t.lists[0] = {1, 2};
    SubgraphRef s;
    s.vertices = {0};
    auto check = validate_canvas(t.graph, s, t.lists);
    REQUIRE(check.ok());
    CHECK_THROWS_AS(democratic_reduction(*check.canvas, {1}, {1, 2}, 0), ReductionError);
    try {
        democratic_reduction(*check.canvas, {1}, {1, 2}, 0);
    } catch (const ReductionError& e) {
        CHECK(e.kind() == ReductionError::Kind::CenterListExhausted);
    }
}

TEST_CASE("interior neighbors lose the pair but keep three colors") {
    // 6-cycle 0..5 with an interior vertex 6 adjacent to 1, 2, 3;
    // reduce the path 1-2-3.
    std::map<VertexId, std::vector<VertexId>> rot;
    for (int i = 0; i < 6; ++i) rot[i] = {(i + 1) % 6, (i + 5) % 6};
    rot[1] = {2, 6, 0};
    rot[2] = {3, 6, 1};
    rot[3] = {4, 6, 2};
    rot[6] = {1, 2, 3};
    PlaneGraph g = PlaneGraph::build(rot, {0, 1, 2, 3, 4, 5});
    ListAssignment lists;
    for (int i = 0; i < 6; ++i) lists[i] = {1, 2, 3};
    lists[6] = {1, 2, 3, 4, 5};
    auto check = validate_canvas(g, SubgraphRef{}, lists);
    REQUIRE(check.ok());

    DemocraticReduction red = democratic_reduction(*check.canvas, {1, 2, 3}, {1, 2}, 0);
    CHECK(red.boundary_y == 4);
    CHECK(red.reduced.lists.at(6) == ColorSet{3, 4, 5});
    CHECK(red.reduced.lists.at(0) == ColorSet{3});
    CHECK(red.reduced.lists.at(4) == ColorSet{1, 2, 3});
    // The interior vertex is exposed by the deletion and counts as boundary.
    CHECK(red.reduced.graph.outer_vertices().count(6) == 1);
    CHECK(validate_canvas(red.reduced.graph, red.reduced.s, red.reduced.lists).ok());
}

TEST_CASE("reduction preconditions are named") {
    Canvas t = four_cycle_canvas();
    CHECK_THROWS_AS(democratic_reduction(t, {0, 1, 2, 3}, {1, 2}, 0), ReductionError);
    CHECK_THROWS_AS(democratic_reduction(t, {1}, {1, 1}, 0), ReductionError);
    CHECK_THROWS_AS(democratic_reduction(t, {1}, {1, 2}, 3), ReductionError); // 3 not adjacent
    Canvas bad = t;
    bad.lists[1] = {2, 3, 4};
    CHECK_THROWS_AS(democratic_reduction(bad, {1}, {1, 2}, 0), ReductionError); // L0 not inside
}

TEST_CASE("extension recolors the path against its boundary neighbors") {
    Canvas t = four_cycle_canvas();
    DemocraticReduction red = democratic_reduction(t, {1}, {1, 2}, 0);
    // y = 2; pick a reduced coloring and extend.
    Coloring phi{{0, 3}, {2, 1}, {3, 2}};
    Coloring full = extend_reduced_coloring(red, phi);
    CHECK(full.at(1) == 2); // avoids y's color 1
    for (const Edge& e : t.graph.edge_set()) CHECK(full.at(e.first) != full.at(e.second));

    // When y's color misses the pair, the smaller pair color wins.
    Coloring phi2{{0, 3}, {2, 3}, {3, 1}};
    CHECK(extend_reduced_coloring(red, phi2).at(1) == 1);
}

TEST_CASE("improper reduced colorings are rejected") {
    Canvas t = four_cycle_canvas();
    DemocraticReduction red = democratic_reduction(t, {1}, {1, 2}, 0);
    CHECK_THROWS_AS(extend_reduced_coloring(red, Coloring{{0, 3}}), ReductionError);
    CHECK_THROWS_AS(extend_reduced_coloring(red, Coloring{{0, 3}, {2, 2}, {3, 2}}),
                    ReductionError);
}

TEST_CASE("thomassen's reduction is the singleton special case") {
    // Path P = one vertex, x already precolored with a single color.
    std::map<VertexId, std::vector<VertexId>> rot;
    for (int i = 0; i < 4; ++i) rot[i] = {(i + 1) % 4, (i + 3) % 4};
    PlaneGraph g = PlaneGraph::build(rot, {0, 1, 2, 3});
    ListAssignment lists;
    lists[0] = {1};
    lists[1] = {1, 2, 3};
    lists[2] = {1, 2, 3};
    lists[3] = {1, 2, 3};
    SubgraphRef s;
    s.vertices = {0};
    auto check = validate_canvas(g, s, lists);
    REQUIRE(check.ok());
    DemocraticReduction red = democratic_reduction(*check.canvas, {1}, {2, 3}, 0);
    CHECK(red.reduced.lists.at(0) == ColorSet{1});
    CHECK(red.reduced.s.vertices == std::set<VertexId>{0});
    CHECK_FALSE(red.x_added_to_s); // x was already precolored
    CHECK(validate_canvas(red.reduced.graph, red.reduced.s, red.reduced.lists).ok());
}

TEST_CASE("the center and far neighbor may coincide") {
    // C5 minus a four-vertex path leaves just the center; x == y == 0.
    std::map<VertexId, std::vector<VertexId>> rot;
    for (int i = 0; i < 5; ++i) rot[i] = {(i + 1) % 5, (i + 4) % 5};
    PlaneGraph g = PlaneGraph::build(rot, {0, 1, 2, 3, 4});
    ListAssignment lists;
    for (int i = 0; i < 5; ++i) lists[i] = {1, 2, 3};
    auto check = validate_canvas(g, SubgraphRef{}, lists);
    REQUIRE(check.ok());
    DemocraticReduction red = democratic_reduction(*check.canvas, {1, 2, 3, 4}, {1, 2}, 0);
    CHECK(red.boundary_y == 0);
    CHECK(red.reduced.graph.vertex_count() == 1);
    CHECK(red.reduced.lists.at(0) == ColorSet{3}); // the w == x clause wins
    CHECK(red.x_added_to_s);
    Coloring full = extend_reduced_coloring(red, Coloring{{0, 3}});
    for (const Edge& e : g.edge_set()) CHECK(full.at(e.first) != full.at(e.second));
}

TEST_CASE("random reductions extend properly") {
    GeneratorProfile p = default_profile(GeneratorProfile::Id::Reduction, 4242);
    int extended = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        GeneratedInstance inst = random_canvas(p, t);
        DemocraticReduction red =
            democratic_reduction(inst.canvas, inst.reduction_path, inst.l0, inst.center);
        CHECK(validate_canvas(red.reduced.graph, red.reduced.s, red.reduced.lists).ok());
        int budget = 20;
        for_each_coloring(red.reduced.graph, red.reduced.lists, {}, [&](const Coloring& phi) {
            Coloring full = extend_reduced_coloring(red, phi);
            for (const Edge& e : inst.canvas.graph.edge_set())
                CHECK(full.at(e.first) != full.at(e.second));
            for (const auto& [v, c] : full) CHECK(inst.canvas.lists.at(v).count(c) == 1);
            for (const auto& [v, c] : phi) CHECK(full.at(v) == c);
            ++extended;
            return --budget > 0;
        });
    }
    CHECK(extended > 100);
}
