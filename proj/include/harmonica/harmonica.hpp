#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "harmonica/canvas.hpp"
#include "harmonica/governments.hpp"
#include "harmonica/plane_graph.hpp"
#include "harmonica/solver.hpp"

namespace harmonica {

// ---------------------------------------------------------------------------
// Coloring harmonicas: chains of triangles along which a singleton list (or a
// two-coloring of an edge) forces the colors forward until a terminal triangle
// runs out of colors.
// ---------------------------------------------------------------------------

struct HarmonicaStep {
    enum class Kind { Start, Step, Base };

    Kind kind;
    // start: {u, x, y}  - singleton u opens the pair (x, y)
    // step:  {u, v, z}  - pair (u, v) forces the singleton z
    // base:  {u, v, w}  - pair (u, v) meets the terminal w
    std::array<VertexId, 3> verts;
    std::set<VertexId> dropped; // step only: endpoints removed from the chain
    // The two-color set of the pair interface this step touches: the pair it
    // creates (start) or the pair it consumes (step/base).
    ColorSet residual;

    bool operator==(const HarmonicaStep&) const = default;
};

using HarmonicaOrigin = std::variant<VertexId, PathRef>;

struct HarmonicaCertificate {
    HarmonicaOrigin origin;
    VertexId terminal = -1;
    std::vector<HarmonicaStep> steps;

    bool operator==(const HarmonicaCertificate&) const = default;

    std::set<VertexId> chain_vertices() const;
    std::set<Edge> chain_edges() const;
};

struct VerifyResult {
    bool ok;
    std::string failing_clause; // empty when ok
};

// Checks the certificate against the recursive definition under containment
// semantics: list clauses use the host lists with the residual updates, all
// triangle edges must exist in the host, the chain may reuse a vertex only as
// the sanctioned interface, and every named vertex lies on the outer face of
// the recorded structure at its recursion level.
VerifyResult verify_coloring_harmonica(const PlaneGraph& graph, const ListAssignment& lists,
                                       const HarmonicaCertificate& cert,
                                       const HarmonicaOrigin& from, VertexId to);

// Complete search for a contained coloring harmonica from p1 to p2.  Depth
// first over (singleton, residual) and (pair, residual) states with the used
// vertex set threaded through; candidate chains are confirmed by the
// verifier before being returned.  Smaller vertex ids are preferred, so the
// certificate is deterministic.
std::optional<HarmonicaCertificate> find_coloring_harmonica(const PlaneGraph& graph,
                                                            const ListAssignment& lists,
                                                            VertexId p1, VertexId p2);

// Same search starting from an edge whose two host lists are equal pairs.
std::optional<HarmonicaCertificate> find_coloring_harmonica_from_edge(const PlaneGraph& graph,
                                                                      const ListAssignment& lists,
                                                                      const PathRef& uv,
                                                                      VertexId to);

// ---------------------------------------------------------------------------
// Government harmonicas: the canvas-level recursion along which a government
// on P propagates to P' without ever spawning a confederacy.
// ---------------------------------------------------------------------------

struct GovHarmonicaStep {
    enum class Rule {
        Terminal,        // G = P = P'
        SharedDictator,  // G = P u P', intersection is the dictator
        DictatorTriangle, // dictator z in P, triangle z-u1-u2, democracy continues on u1u2
        DemocracyApex,   // democracy on P, apex z above the edge, dictatorship continues
    };

    Rule rule;
    PathRef pair_before{-1, -1};      // P at this level
    std::array<VertexId, 2> new_pair{-1, -1}; // U the recursion continues on
    VertexId apex = -1;               // z of the triangle rules
    ColorSet l0;                      // the two-color set of the rule
    Color extra_color = -1;           // c
    std::set<VertexId> deleted;       // vertices removed entering the next level
};

struct GovernmentHarmonica {
    PathRef p{-1, -1};
    PathRef p_prime{-1, -1};
    Government government;
    std::vector<GovHarmonicaStep> steps;
    std::set<VertexId> vertices; // of the exact contained subcanvas
    std::set<Edge> edges;
};

// Complete search for a contained subcanvas realizing the recursion with
// government C from P to P'.  Found traces are replayed on the actual
// subgraph (with real vertex deletions) before being accepted.
std::optional<GovernmentHarmonica> find_government_harmonica(const Canvas& canvas,
                                                             const PathRef& p,
                                                             const PathRef& p_prime,
                                                             const Government& c);

// Structural replay used to accept search results; exposed for tests.
VerifyResult verify_government_harmonica(const Canvas& canvas, const GovernmentHarmonica& h);

// ---------------------------------------------------------------------------
// Lemma-level conversion and the decision pipeline.
// ---------------------------------------------------------------------------

class HypothesisViolated : public std::runtime_error {
public:
    HypothesisViolated(std::string clause, std::string message)
        : std::runtime_error(std::move(message)), clause_(std::move(clause)) {}
    const std::string& clause() const { return clause_; }

private:
    std::string clause_;
};

struct ColoringHarmonica {
    PlaneGraph graph;
    ListAssignment lists;
    HarmonicaCertificate certificate;
};

// Converts a government harmonica whose extension set on P' is a dictatorship
// with dictator w in color d into a coloring harmonica: w's list loses d,
// degree-one leftovers are dropped, and the rule trace maps onto start/step/
// base triangles.  Democracy governments need both P-lists of size two;
// dictatorships need a singleton list at the dictator.
ColoringHarmonica convert_harmonica(const Canvas& host, const GovernmentHarmonica& h,
                                    VertexId w, Color d);

// Raised when the solver and the harmonica detector disagree, which the
// equivalence theorem rules out; carries a reproduction dump.
class TheoremViolation : public std::runtime_error {
public:
    explicit TheoremViolation(std::string dump)
        : std::runtime_error("solver and harmonica detector disagree: " + dump),
          dump_(std::move(dump)) {}
    const std::string& dump() const { return dump_; }

private:
    std::string dump_;
};

struct DecideResult {
    bool colorable;
    std::optional<Coloring> coloring;               // set when colorable
    std::optional<HarmonicaCertificate> certificate; // set when obstructed
};

// The decision procedure: list-size hypotheses are audited, the exhaustive
// solver runs first, then the detector, and the two verdicts are required to
// agree (a disagreement aborts with a counterexample dump).
DecideResult decide_with_certificate(const PlaneGraph& graph, const ListAssignment& lists,
                                     VertexId p1, VertexId p2);

} // namespace harmonica
