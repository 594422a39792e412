#include <doctest.h>

#include "harmonica/canvas.hpp"
#include "harmonica/genfuzz.hpp"

using namespace harmonica;

namespace {

PlaneGraph single_edge() { return PlaneGraph::build({{0, {1}}, {1, {0}}}, {0, 1}); }

PlaneGraph wheel5() {
    std::map<VertexId, std::vector<VertexId>> rot;
    for (int i = 0; i < 5; ++i) rot[i] = {(i + 1) % 5, 5, (i + 4) % 5};
    rot[5] = {0, 1, 2, 3, 4};
    return PlaneGraph::build(rot, {0, 1, 2, 3, 4});
}

} // namespace

TEST_CASE("edge with distinct singleton lists is a canvas") {
    ListAssignment lists;
    lists[0] = {1};
    lists[1] = {2};
    SubgraphRef s;
    s.vertices = {0, 1};
    s.edges = {edge_key(0, 1)};
    auto check = validate_canvas(single_edge(), s, lists);
    CHECK(check.ok());
}

TEST_CASE("equal singleton lists on a precolored edge cannot be colored") {
    ListAssignment lists;
    lists[0] = {1};
    lists[1] = {1};
    SubgraphRef s;
    s.vertices = {0, 1};
    s.edges = {edge_key(0, 1)};
    auto check = validate_canvas(single_edge(), s, lists);
    REQUIRE_FALSE(check.ok());
    CHECK(check.violations.size() == 1);
    CHECK(check.violations[0].clause == "s_not_colorable");
}

TEST_CASE("outer vertex below three colors is flagged") {
    PlaneGraph g = PlaneGraph::build({{0, {1, 2}}, {1, {2, 0}}, {2, {0, 1}}}, {0, 1, 2});
    ListAssignment lists;
    lists[0] = {1, 2};
    lists[1] = {1, 2, 3};
    lists[2] = {1, 2, 3};
    auto check = validate_canvas(g, SubgraphRef{}, lists);
    REQUIRE_FALSE(check.ok());
    CHECK(check.violations[0].clause == "outer_vertex_below_3");
    CHECK(check.violations[0].vertex == 0);
}

TEST_CASE("interior vertex below five colors is flagged") {
    ListAssignment lists;
    for (int i = 0; i < 5; ++i) lists[i] = {1, 2, 3};
    lists[5] = {1, 2, 3, 4};
    auto check = validate_canvas(wheel5(), SubgraphRef{}, lists);
    REQUIRE_FALSE(check.ok());
    CHECK(check.violations[0].clause == "interior_vertex_below_5");
    CHECK(check.violations[0].vertex == 5);
}

TEST_CASE("lists may cover a supergraph") {
    ListAssignment lists;
    lists[0] = {1};
    lists[1] = {2};
    lists[77] = {5}; // not a vertex; ignored
    SubgraphRef s;
    s.vertices = {0, 1};
    s.edges = {edge_key(0, 1)};
    CHECK(validate_canvas(single_edge(), s, lists).ok());
}

TEST_CASE("S must live on the outer boundary") {
    PlaneGraph g = wheel5();
    ListAssignment lists;
    for (int i = 0; i < 5; ++i) lists[i] = {1, 2, 3};
    lists[5] = {1, 2, 3, 4, 5};
    SubgraphRef s;
    s.vertices = {5};
    auto check = validate_canvas(g, s, lists);
    REQUIRE_FALSE(check.ok());
    CHECK(check.violations[0].clause == "s_vertex_not_on_boundary");

    SubgraphRef s2;
    s2.vertices = {0, 5};
    s2.edges = {edge_key(0, 5)}; // a spoke, not a boundary edge
    auto check2 = validate_canvas(g, s2, lists);
    REQUIRE_FALSE(check2.ok());
}

TEST_CASE("validation is total: canvas xor violation list") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GeneratorProfile p = default_profile(GeneratorProfile::Id::Thm2, seed);
        GeneratedInstance inst = random_canvas(p, seed);
        auto check = validate_canvas(inst.canvas.graph, inst.canvas.s, inst.canvas.lists);
        CHECK(check.ok());
        CHECK(check.violations.empty());
        // Shrink one outer list below the bound: must flip to violations.
        ListAssignment broken = inst.canvas.lists;
        for (VertexId v : inst.canvas.graph.outer_vertices()) {
            if (inst.canvas.s.vertices.count(v)) continue;
            broken[v] = {*broken.at(v).begin()};
            break;
        }
        auto check2 = validate_canvas(inst.canvas.graph, inst.canvas.s, broken);
        CHECK_FALSE(check2.ok());
        CHECK_FALSE(check2.violations.empty());
    }
}

TEST_CASE("canvas containment") {
    ListAssignment lists;
    lists[0] = {1};
    lists[1] = {2};
    SubgraphRef s;
    s.vertices = {0, 1};
    s.edges = {edge_key(0, 1)};
    PlaneGraph tri = PlaneGraph::build({{0, {1, 2}}, {1, {2, 0}}, {2, {0, 1}}}, {0, 1, 2});
    ListAssignment tri_lists = lists;
    tri_lists[2] = {1, 2, 3};
    auto big = validate_canvas(tri, s, tri_lists);
    REQUIRE(big.ok());

    CHECK(contains_canvas(*big.canvas, *big.canvas)); // contains itself

    auto small = validate_canvas(single_edge(), s, lists);
    REQUIRE(small.ok());
    CHECK(contains_canvas(*big.canvas, *small.canvas));
    CHECK_FALSE(contains_canvas(*small.canvas, *big.canvas));

    // Shrinking a shared list breaks containment.
    ListAssignment shrunk = lists;
    shrunk[1] = {2, 3};
    auto other = validate_canvas(single_edge(), s, shrunk);
    REQUIRE(other.ok());
    CHECK_FALSE(contains_canvas(*big.canvas, *other.canvas));
}
