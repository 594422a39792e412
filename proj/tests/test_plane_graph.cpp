#include <doctest.h>

#include <algorithm>
#include <random>

#include "harmonica/genfuzz.hpp"
#include "harmonica/plane_graph.hpp"
#include "oracles.hpp"

using namespace harmonica;

namespace {

PlaneGraph triangle() {
    return PlaneGraph::build({{0, {1, 2}}, {1, {2, 0}}, {2, {0, 1}}}, {0, 1, 2});
}

// Outer square 0-1-3-2 with the chord 1-2 inside.
PlaneGraph diamond() {
    return PlaneGraph::build(
        {{0, {1, 2}}, {1, {3, 2, 0}}, {2, {0, 1, 3}}, {3, {2, 1}}},
        {0, 1, 3, 2});
}

// Outer triangle 0-1-2 with vertex 3 joined to all of it.
PlaneGraph k4() {
    return PlaneGraph::build(
        {{0, {1, 3, 2}}, {1, {2, 3, 0}}, {2, {0, 3, 1}}, {3, {0, 1, 2}}},
        {0, 1, 2});
}

// 5-wheel: outer cycle 0..4, hub 5.
PlaneGraph wheel5() {
    std::map<VertexId, std::vector<VertexId>> rot;
    for (int i = 0; i < 5; ++i) rot[i] = {(i + 1) % 5, 5, (i + 4) % 5};
    rot[5] = {0, 1, 2, 3, 4};
    return PlaneGraph::build(rot, {0, 1, 2, 3, 4});
}

} // namespace

TEST_CASE("triangle embedding traces two faces") {
    PlaneGraph g = triangle();
    auto faces = g.trace_faces();
    CHECK(faces.size() == 2);
    CHECK(faces[0].size() == 3);
    CHECK(faces[1].size() == 3);
    CHECK(g.vertex_count() - g.edge_count() + faces.size() == 2);
}

TEST_CASE("single edge has one face of degree two") {
    PlaneGraph g = PlaneGraph::build({{0, {1}}, {1, {0}}}, {0, 1});
    auto faces = g.trace_faces();
    CHECK(faces.size() == 1);
    CHECK(faces[0].size() == 2);
}

TEST_CASE("outer walk must trace a face") {
    // Pick a cyclic vertex sequence of K4 that is no face of the fixed
    // embedding.
    PlaneGraph g = k4();
    auto faces = g.trace_faces();
    CHECK(faces.size() == 4);
    std::vector<VertexId> bogus{0, 1, 3, 2};
    CHECK_THROWS_AS(PlaneGraph::build(
                        {{0, {1, 3, 2}}, {1, {2, 3, 0}}, {2, {0, 3, 1}}, {3, {0, 1, 2}}},
                        bogus),
                    GraphError);
    try {
        PlaneGraph::build({{0, {1, 3, 2}}, {1, {2, 3, 0}}, {2, {0, 3, 1}}, {3, {0, 1, 2}}},
                          bogus);
    } catch (const GraphError& e) {
        CHECK(e.kind() == GraphError::Kind::OuterWalkNotAFace);
    }
}

TEST_CASE("loops and parallel edges are rejected") {
    CHECK_THROWS_AS(PlaneGraph::build({{0, {0}}}, {0}), GraphError);
    CHECK_THROWS_AS(PlaneGraph::build({{0, {1, 1}}, {1, {0, 0}}}, {0, 1}), GraphError);
}

TEST_CASE("a twisted rotation system fails the genus check") {
    // Reversing the hub rotation of the 5-wheel forces crossings.
    std::map<VertexId, std::vector<VertexId>> rot;
    for (int i = 0; i < 5; ++i) rot[i] = {(i + 1) % 5, 5, (i + 4) % 5};
    rot[5] = {4, 3, 2, 1, 0};
    CHECK_THROWS_AS(PlaneGraph::build(rot, {0, 1, 2, 3, 4}), GraphError);
}

TEST_CASE("diamond traces three faces and exactly one chord") {
    PlaneGraph g = diamond();
    CHECK(g.trace_faces().size() == 3);
    auto chords = g.chords_of_outer();
    REQUIRE(chords.size() == 1);
    CHECK(chords[0] == edge_key(1, 2));
}

TEST_CASE("face tracing partitions directed edges on random triangulations") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        PlaneGraph g = random_disk_triangulation(seed, 8, 4);
        auto faces = g.trace_faces();
        CHECK(faces.size() == g.edge_count() - g.vertex_count() + 2);
        std::set<std::pair<VertexId, VertexId>> seen;
        std::size_t total = 0;
        for (const auto& f : faces)
            for (std::size_t i = 0; i < f.size(); ++i) {
                CHECK(seen.insert({f[i], f[(i + 1) % f.size()]}).second);
                ++total;
            }
        CHECK(total == 2 * g.edge_count());
    }
}

TEST_CASE("chords match a brute-force edge scan") {
    for (std::uint64_t seed : {10u, 11u, 12u}) {
        PlaneGraph g = random_disk_triangulation(seed, 7, 3);
        std::set<Edge> expected;
        const auto& walk = g.outer_walk();
        std::set<Edge> on_walk;
        for (std::size_t i = 0; i < walk.size(); ++i)
            on_walk.insert(edge_key(walk[i], walk[(i + 1) % walk.size()]));
        std::set<VertexId> cyc(walk.begin(), walk.end());
        for (const Edge& e : g.edge_set())
            if (cyc.count(e.first) && cyc.count(e.second) && !on_walk.count(e))
                expected.insert(e);
        auto got = g.chords_of_outer();
        CHECK(std::set<Edge>(got.begin(), got.end()) == expected);
    }
}

TEST_CASE("chords demand an outer cycle") {
    PlaneGraph path = PlaneGraph::build({{0, {1}}, {1, {0, 2}}, {2, {1}}}, {0, 1, 2, 1});
    CHECK_THROWS_AS(path.chords_of_outer(), GraphError);
}

TEST_CASE("cutvertices: triangle has none, bowtie has one") {
    CHECK(triangle().cutvertices().empty());
    // Two triangles glued at vertex 2.
    PlaneGraph bowtie = PlaneGraph::build(
        {{0, {1, 2}}, {1, {2, 0}}, {2, {0, 1, 3, 4}}, {3, {4, 2}}, {4, {2, 3}}},
        {0, 1, 2, 3, 4, 2});
    CHECK(bowtie.cutvertices() == std::set<VertexId>{2});
}

TEST_CASE("cutvertices agree with the component-count oracle") {
    for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
        PlaneGraph g = random_disk_triangulation(seed, 6, 3);
        auto cuts = g.cutvertices();
        for (VertexId v : g.vertices()) {
            bool is_cut = oracles::components_after_removal(g, v) > 1;
            CHECK(cuts.count(v) == (is_cut ? 1u : 0u));
        }
    }
}

TEST_CASE("deleting a vertex of a triangle leaves the edge") {
    PlaneGraph g = triangle().delete_vertices({2});
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(0, 1));
}

TEST_CASE("deleting an outer vertex of the diamond leaves a triangle") {
    PlaneGraph g = diamond().delete_vertices({0});
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.outer_vertices() == std::set<VertexId>{1, 2, 3});
}

TEST_CASE("strip minus its singleton exposes the rung edge") {
    StripInstance strip = make_vertex_strip(1); // vertices u=0, x=1, y=2, w=3
    PlaneGraph g = strip.graph.delete_vertices({0});
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    // The rung x-y used to be a chord; now it bounds the outer face.
    CHECK(g.outer_edge_set().count(edge_key(1, 2)) == 1);
}

TEST_CASE("deletion exposes exactly what the embedding says") {
    // K4 minus the hub: the triangle survives with the hub gone.
    PlaneGraph g = k4().delete_vertices({3});
    CHECK(g.outer_vertices() == std::set<VertexId>{0, 1, 2});
    // Wheel minus one rim vertex: the hub reaches the outer face through the
    // gap.  Deleting a second rim vertex keeps it there.
    PlaneGraph w = wheel5().delete_vertices({0});
    CHECK(w.outer_vertices() == std::set<VertexId>{1, 2, 3, 4, 5});
    CHECK(w.outer_walk().size() >= 5);
    PlaneGraph w2 = wheel5().delete_vertices({0, 2});
    CHECK(w2.outer_vertices() == std::set<VertexId>{1, 3, 4, 5});
}

TEST_CASE("deletion may disconnect and then exposes stray components") {
    // 6-cycle with a degree-one interior spur hanging off vertex 1.
    std::map<VertexId, std::vector<VertexId>> rot;
    for (int i = 0; i < 6; ++i) rot[i] = {(i + 1) % 6, (i + 5) % 6};
    rot[1] = {2, 6, 0};
    rot[6] = {1};
    PlaneGraph g = PlaneGraph::build(rot, {0, 1, 2, 3, 4, 5});
    PlaneGraph h = g.delete_vertices({0, 1, 2});
    CHECK(h.component_count() == 2);
    auto outer = h.outer_vertices();
    CHECK(outer.count(6) == 1); // the spur now floats in the outer region
    CHECK(outer == std::set<VertexId>{3, 4, 5, 6});
}

TEST_CASE("every connected deletion result passes the euler identity") {
    for (std::uint64_t seed : {31u, 32u, 33u}) {
        PlaneGraph g = random_disk_triangulation(seed, 7, 4);
        auto verts = g.vertices();
        PlaneGraph h = g.delete_vertices({verts[0], verts[2]});
        auto faces = h.trace_faces();
        long lhs = static_cast<long>(h.vertex_count()) - static_cast<long>(h.edge_count()) +
                   static_cast<long>(faces.size());
        CHECK(lhs == 2L * h.component_count());
    }
}

TEST_CASE("deleting everything is an error") {
    CHECK_THROWS_AS(triangle().delete_vertices({0, 1, 2}), GraphError);
}

TEST_CASE("surviving boundary stays on the boundary after deletion") {
    // The outer region only grows when vertices disappear, so whatever part
    // of the old boundary survives must bound the new outer face too.
    std::mt19937_64 rng(1234);
    for (int round = 0; round < 40; ++round) {
        PlaneGraph g = random_disk_triangulation(round, 5 + round % 4, round % 4);
        auto verts = g.vertices();
        std::set<VertexId> gone;
        for (VertexId v : verts)
            if (rng() % 3 == 0) gone.insert(v);
        if (gone.empty() || gone.size() >= verts.size()) continue;
        PlaneGraph h = g.delete_vertices(gone);
        auto new_outer = h.outer_vertices();
        for (VertexId v : g.outer_walk())
            if (!gone.count(v)) CHECK(new_outer.count(v) == 1);
        auto new_outer_edges = h.outer_edge_set();
        const auto& walk = g.outer_walk();
        for (std::size_t i = 0; i < walk.size(); ++i) {
            VertexId a = walk[i], b = walk[(i + 1) % walk.size()];
            if (!gone.count(a) && !gone.count(b))
                CHECK(new_outer_edges.count(edge_key(a, b)) == 1);
        }
    }
}

TEST_CASE("subgraph restriction keeps the embedding consistent") {
    PlaneGraph g = k4();
    std::set<Edge> es;
    for (const Edge& e : g.edge_set())
        if (e != edge_key(0, 2)) es.insert(e);
    PlaneGraph sub = g.subgraph({0, 1, 2, 3}, es);
    CHECK(sub.edge_count() == 5);
    CHECK(sub.trace_faces().size() == 3);
    CHECK(sub.outer_vertices() == std::set<VertexId>{0, 1, 2, 3});
}
