#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "harmonica/canvas.hpp"
#include "harmonica/governments.hpp"
#include "harmonica/plane_graph.hpp"
#include "harmonica/solver.hpp"

namespace harmonica {

// Instance generation under the hypotheses of one of the tested statements.
struct GeneratorProfile {
    enum class Id { Thm1, Thm2, Thm3, Lemma5, Prop2, Thm9, Reduction };

    Id id = Id::Thm3;
    int outer_min = 4;
    int outer_max = 8;
    int interior_min = 0;
    int interior_max = 3;
    int palette = 8;
    double bias = 0.0; // probability of planting an obstruction-friendly instance
    std::uint64_t seed = 0;
};

std::optional<GeneratorProfile::Id> profile_id_from_string(const std::string& name);
std::string profile_id_to_string(GeneratorProfile::Id id);
GeneratorProfile default_profile(GeneratorProfile::Id id, std::uint64_t seed, double bias = 0.0);

// A 2-connected near-triangulation of the disk: outer cycle of the given
// length, the given number of interior vertices, all interior faces
// triangles.  Deterministic in the seed.
PlaneGraph random_disk_triangulation(std::uint64_t seed, int outer_len, int interior_count);

struct GeneratedInstance {
    Canvas canvas;
    // Designated vertices/paths, set per profile.
    VertexId p1 = -1;
    VertexId p2 = -1;
    PathRef p{-1, -1};
    PathRef p_prime{-1, -1};
    PathRef chord{-1, -1};
    std::optional<EdgeColoringSet> coloring_set;
    std::vector<VertexId> reduction_path;
    std::pair<Color, Color> l0{-1, -1};
    VertexId center = -1;
    bool planted = false;
    bool is_confederacy = false; // thm9: whether coloring_set was built as one
};

// Emits the instance for the given trial index; the result always passes the
// profile's hypothesis audit.
GeneratedInstance random_canvas(const GeneratorProfile& profile, std::uint64_t trial);

struct PropertyCounts {
    int pass = 0;
    int fail = 0;
    int skip = 0;
};

struct SuiteReport {
    std::string profile;
    int trials = 0;
    std::uint64_t seed = 0;
    double bias = 0.0;
    std::map<std::string, PropertyCounts> properties;
    std::vector<std::string> counterexamples; // replayable canvas dumps
    long long wall_ms = 0;                    // informational, not serialized

    int total_fail() const {
        int n = 0;
        for (const auto& [_, c] : properties) n += c.fail;
        return n;
    }
};

// Deterministic serialization (excludes wall-clock): equal seeds give
// byte-identical strings.
std::string report_to_string(const SuiteReport& report);

SuiteReport run_property_suite(const GeneratorProfile& profile, int trials);

// Handmade obstruction ladder: a strip with `rungs` forcing triangles, lists
// sized so the chain pins every color; p1 carries the singleton, p2 the
// terminal pair.
struct StripInstance {
    PlaneGraph graph;
    ListAssignment lists;
    VertexId p1;
    VertexId p2;
};
StripInstance make_vertex_strip(int rungs);

} // namespace harmonica
