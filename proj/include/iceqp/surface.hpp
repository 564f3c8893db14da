#ifndef ICEQP_SURFACE_HPP
#define ICEQP_SURFACE_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "iceqp/algebra.hpp"

namespace iceqp {

/// Marked-surface signature (g, b, c, p). Degenerate surfaces (monogon with
/// at most one puncture, unpunctured digon/triangle, nonpositive arc count)
/// are rejected.
struct SurfaceSignature {
    int genus = 0;
    std::vector<int> boundary_marked; // marked point count per boundary component
    int punctures = 0;

    int total_boundary_marked() const;
    void validate() const;
};

/// n = 6g + 3b + 3p + c - 6.
int arc_count(const SurfaceSignature& sig);

struct TriEdge {
    std::string id;
    std::array<std::string, 2> ends;
    bool is_boundary = false;
};

/// Combinatorial triangulation: marked points, edges, and triangles given as
/// edge-id triples listed clockwise around the triangle interior.
struct Triangulation {
    SurfaceSignature signature;
    std::vector<std::vector<std::string>> boundary_points; // per component, anticlockwise
    std::vector<std::string> punctures;
    std::vector<TriEdge> edges;
    std::vector<std::array<std::string, 3>> triangles;

    const TriEdge& edge(const std::string& id) const;
    bool has_edge(const std::string& id) const;
    std::vector<std::string> arc_ids() const;
    std::vector<std::string> boundary_ids() const;
};

struct TriDiagnostic {
    std::string location;
    std::string message;
};

std::vector<TriDiagnostic> validate_triangulation(const Triangulation& t);

/// Corner c of triangle t: the wedge between consecutive clockwise sides
/// in_side, out_side at marked point `point`; its internal arrow goes
/// in_side -> out_side.
struct Corner {
    int triangle;
    int corner; // 0..2
    std::string point;
    std::string in_side;
    std::string out_side;
};

/// Derives the three corner points of a triangle from side endpoints; throws
/// when the system has no solution (invalid) or several (unsupported gluing).
std::array<std::string, 3> solve_triangle_corners(const Triangulation& t, int triangle);

enum class ExternalVariant { all_external, incident_only };

ExternalVariant external_variant_from_string(const std::string& s);

/// The ice QP together with the construction tables the witness machinery
/// needs: per-triangle corner arrows, the anticlockwise corner-arrow chain at
/// every boundary point, puncture cycles, and the external arrows.
struct QpBuild {
    IceQP qp;
    std::vector<std::array<std::string, 3>> corner_arrow; // [triangle][corner] -> arrow id
    std::vector<std::array<Corner, 3>> corners;
    std::map<std::string, std::vector<std::string>> boundary_chain; // point -> arrow ids
    std::map<std::string, std::string> external_arrow;              // point -> Y id
    std::map<std::string, std::vector<std::string>> puncture_cycle; // puncture -> arrow ids
    std::map<std::string, std::pair<std::string, std::string>> segs_at; // point -> (before, after)
    std::vector<std::vector<std::string>> segment_components; // boundary segments, cyclic per component
};

QpBuild build_ice_qp_full(const Triangulation& t,
                          ExternalVariant variant = ExternalVariant::all_external);
IceQP build_ice_qp(const Triangulation& t,
                   ExternalVariant variant = ExternalVariant::all_external);

/// Arrow weights making every potential cycle weight-homogeneous of one total
/// degree, with external arrows weighing 2. This is the grading under which
/// the flip isomorphisms of boundary algebras are degree-preserving, so
/// boundary profiles of different triangulations of one surface become
/// comparable. Throws when no such positive integral weighting exists (for
/// example on the annulus, whose external loops obstruct it).
std::vector<int> homogeneous_arrow_weights(const QpBuild& b);

/// Quadrilateral of a flippable arc: corners Q1..Q4 with the arc joining Q1
/// and Q3, sides s1 = Q1Q2, s2 = Q2Q3, s3 = Q3Q4, s4 = Q4Q1.
struct FlipQuad {
    int tri_a; // triangle [k, s2, s1] after rotation
    int tri_b; // triangle [k, s4, s3]
    std::string s1, s2, s3, s4;
    std::string q1, q2, q3, q4;
};

FlipQuad flip_quad(const Triangulation& t, const std::string& arc);

/// Replaces the arc by the other diagonal of its quadrilateral.
Triangulation flip(const Triangulation& t, const std::string& arc);

/// Relabel-invariant key: boundary edges keep their ids, arcs are anonymized
/// by a canonical breadth-first traversal.
std::string triangulation_key(const Triangulation& t);

/// Corner-arrow and external-arrow bijection between two triangulations with
/// the same canonical key, read off their canonical traversals. Throws when
/// the keys differ.
std::map<std::string, std::string> quiver_arrow_matching(const Triangulation& a,
                                                         const Triangulation& b);

struct FlipOrbit {
    std::vector<Triangulation> elements;
    std::vector<std::tuple<int, std::string, int>> flip_edges; // (from, arc, to)
    bool overflowed = false;
};

/// BFS closure under all legal flips, deduplicated by triangulation_key.
FlipOrbit flip_orbit(const Triangulation& t, std::size_t max_size);

enum class StandardKind { fan, star, annulus_11 };

/// fan(m): the (m)-gon triangulated from P1; star(m): the once-punctured
/// m-gon with every boundary point joined to the puncture; annulus_11: the
/// annulus with one marked point per boundary circle.
Triangulation standard_triangulation(StandardKind kind, int m = 0);

std::string triangulation_to_json(const Triangulation& t);
Triangulation triangulation_from_json(const std::string& text);

} // namespace iceqp

#endif
