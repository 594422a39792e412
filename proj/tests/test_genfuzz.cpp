#include <doctest.h>

#include "harmonica/genfuzz.hpp"
#include "harmonica/json_io.hpp"

using namespace harmonica;

TEST_CASE("smallest triangulation is the triangle") {
    PlaneGraph g = random_disk_triangulation(5, 3, 0);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.trace_faces().size() == 2);
}

TEST_CASE("square with one interior vertex") {
    PlaneGraph g = random_disk_triangulation(9, 4, 1);
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 8);
    CHECK(g.trace_faces().size() == 5);
}

TEST_CASE("triangulations satisfy the face audit") {
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
        PlaneGraph g = random_disk_triangulation(seed, 8, 4);
        CHECK(g.vertex_count() == 12);
        CHECK(g.outer_is_cycle());
        std::vector<VertexId> expect_outer{0, 1, 2, 3, 4, 5, 6, 7};
        CHECK(g.outer_walk() == expect_outer);
        auto faces = g.trace_faces();
        CHECK(faces.size() == g.edge_count() - g.vertex_count() + 2);
        // Every non-outer face is a triangle.
        int big = 0;
        for (const auto& f : faces)
            if (f.size() != 3) ++big;
        CHECK(big == 1);
        CHECK(g.cutvertices().empty());
    }
}

TEST_CASE("infeasible parameters are rejected") {
    CHECK_THROWS_AS(random_disk_triangulation(1, 2, 0), GraphError);
}

TEST_CASE("profiles generate hypothesis-respecting instances") {
    for (auto id : {GeneratorProfile::Id::Thm1, GeneratorProfile::Id::Thm2,
                    GeneratorProfile::Id::Thm3, GeneratorProfile::Id::Lemma5,
                    GeneratorProfile::Id::Prop2, GeneratorProfile::Id::Thm9,
                    GeneratorProfile::Id::Reduction}) {
        GeneratorProfile p = default_profile(id, 99, 0.3);
        for (std::uint64_t t = 0; t < 8; ++t) {
            GeneratedInstance inst = random_canvas(p, t);
            CHECK(validate_canvas(inst.canvas.graph, inst.canvas.s, inst.canvas.lists).ok());
        }
    }
}

TEST_CASE("lemma5 instances have chordless outer cycles and induced S") {
    GeneratorProfile p = default_profile(GeneratorProfile::Id::Lemma5, 123);
    for (std::uint64_t t = 0; t < 20; ++t) {
        GeneratedInstance inst = random_canvas(p, t);
        CHECK(inst.canvas.graph.chords_of_outer().empty());
        CHECK(inst.canvas.s.vertices.size() == 3);
        CHECK(inst.canvas.s.edges.size() == 2);
    }
}

TEST_CASE("thm1 instances carry unequal singletons on a boundary edge") {
    GeneratorProfile p = default_profile(GeneratorProfile::Id::Thm1, 321);
    for (std::uint64_t t = 0; t < 20; ++t) {
        GeneratedInstance inst = random_canvas(p, t);
        CHECK(inst.canvas.lists.at(inst.p1).size() == 1);
        CHECK(inst.canvas.lists.at(inst.p2).size() == 1);
        CHECK(inst.canvas.lists.at(inst.p1) != inst.canvas.lists.at(inst.p2));
        CHECK(inst.canvas.graph.has_edge(inst.p1, inst.p2));
    }
}

TEST_CASE("thm3 instances keep the profile list sizes") {
    GeneratorProfile p = default_profile(GeneratorProfile::Id::Thm3, 77, 0.5);
    for (std::uint64_t t = 0; t < 30; ++t) {
        GeneratedInstance inst = random_canvas(p, t);
        std::size_t s1 = inst.canvas.lists.at(inst.p1).size();
        CHECK(s1 >= 1);
        CHECK(s1 <= 2);
        CHECK(inst.canvas.lists.at(inst.p2).size() == 2);
        CHECK(inst.canvas.graph.vertex_count() <= 12);
    }
}

TEST_CASE("generation is deterministic in seed and trial") {
    GeneratorProfile p = default_profile(GeneratorProfile::Id::Thm3, 2024, 0.5);
    for (std::uint64_t t = 0; t < 6; ++t) {
        GeneratedInstance a = random_canvas(p, t);
        GeneratedInstance b = random_canvas(p, t);
        CHECK(canvas_to_json(a.canvas.graph, a.canvas.lists, a.canvas.s) ==
              canvas_to_json(b.canvas.graph, b.canvas.lists, b.canvas.s));
        CHECK(a.p1 == b.p1);
        CHECK(a.p2 == b.p2);
    }
}

TEST_CASE("suite reports are byte-identical across runs") {
    GeneratorProfile p = default_profile(GeneratorProfile::Id::Thm3, 4711, 0.5);
    SuiteReport a = run_property_suite(p, 25);
    SuiteReport b = run_property_suite(p, 25);
    CHECK(report_to_string(a) == report_to_string(b));
    CHECK(a.total_fail() == 0);
}

TEST_CASE("small suite runs pass for every profile") {
    for (auto id : {GeneratorProfile::Id::Thm1, GeneratorProfile::Id::Thm2,
                    GeneratorProfile::Id::Lemma5, GeneratorProfile::Id::Prop2,
                    GeneratorProfile::Id::Thm9, GeneratorProfile::Id::Reduction}) {
        GeneratorProfile p = default_profile(id, 31, 0.4);
        SuiteReport r = run_property_suite(p, 15);
        INFO(report_to_string(r));
        CHECK(r.total_fail() == 0);
    }
}

TEST_CASE("vertex strips are uncolorable snakes") {
    for (int rungs = 1; rungs <= 4; ++rungs) {
        StripInstance s = make_vertex_strip(rungs);
        CHECK(s.graph.vertex_count() == static_cast<std::size_t>(3 * rungs + 1));
        CHECK_FALSE(find_coloring(s.graph, s.lists).has_value());
        auto faces = s.graph.trace_faces();
        CHECK(faces.size() == s.graph.edge_count() - s.graph.vertex_count() + 2);
    }
}
