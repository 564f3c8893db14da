#ifndef ICEQP_BOUNDARY_HPP
#define ICEQP_BOUNDARY_HPP

#include <map>
#include <string>
#include <vector>

#include "iceqp/rewrite.hpp"
#include "iceqp/surface.hpp"

namespace iceqp {

/// Graded dimension table of the boundary algebra e.Gamma.e: dims[(i,j)][d] =
/// number of normal-form words from frozen i to frozen j of weighted degree d,
/// certified up to certificate_degree.
struct BoundaryProfile {
    std::vector<std::string> frozen;
    // cyclic boundary structure used when searching for bijections; one entry
    // per boundary component, in cyclic order
    std::vector<std::vector<std::string>> components;
    int certificate_degree = 0;
    IdealVariant variant = IdealVariant::exclude_y_only;
    std::map<std::pair<int, int>, std::vector<long long>> dims;

    const std::vector<long long>& at(int i, int j) const { return dims.at({i, j}); }
};

RewriteSystem boundary_system(const IceQP& qp, int degree,
                              IdealVariant variant = IdealVariant::exclude_y_only,
                              const std::vector<int>& weights = {});

BoundaryProfile boundary_profile(const IceQP& qp, int degree,
                                 IdealVariant variant = IdealVariant::exclude_y_only,
                                 const std::vector<std::vector<std::string>>& components = {},
                                 const std::vector<int>& weights = {});

/// Profile of a built surface QP, graded by the homogeneous weighting when
/// one exists (falling back to unit weights otherwise).
BoundaryProfile boundary_profile(const QpBuild& b, int degree,
                                 IdealVariant variant = IdealVariant::exclude_y_only);

/// Extracts a profile from an already completed system.
BoundaryProfile profile_from_system(const RewriteSystem& rs, const IceQP& qp, int degree,
                                    IdealVariant variant,
                                    const std::vector<std::vector<std::string>>& components);

struct CompareVerdict {
    bool equal = false;
    int degree_used = 0;
    std::vector<std::pair<std::string, std::string>> bijection;
    std::string discrepancy;
};

/// Searches the boundary-structure-preserving bijections (component matching,
/// rotations, global reversal) for one equating the two dimension tables.
CompareVerdict compare_profiles(const BoundaryProfile& a, const BoundaryProfile& b);

/// Explicit boundary-generator correspondence induced by one flip. Everything
/// is stored by arrow id so a witness stays valid independently of any
/// particular IceQP instance.
struct IsoWitness {
    std::string flipped_arc; // arc of the source (flipped) triangulation
    std::string source_arc;  // the arc of dst that was flipped
    std::string provenance = "explicit-flip";
    std::vector<std::pair<std::string, std::string>> vertex_bijection; // frozen ids
    // src word (one or two arrows) -> dst word
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> generator_map;
    // the eight quadrilateral relations: label, src element, expected dst
    // element, expected dst label
    struct RelPair {
        std::string src_label;
        std::string dst_label;
        std::vector<std::pair<Rational, std::vector<std::string>>> src_terms;
        std::vector<std::pair<Rational, std::vector<std::string>>> dst_terms;
    };
    std::vector<RelPair> relation_pairs;
};

/// Witness from build_ice_qp(flip(t, arc)) to build_ice_qp(t), per the local
/// quadrilateral picture: new corner arrows map to the through-arc paths
/// u_i v_j, composites through the new arc map to the wedge arrows and the
/// complementary cycle paths.
IsoWitness flip_witness(const Triangulation& t, const std::string& arc,
                        ExternalVariant variant = ExternalVariant::all_external);

/// Applies the generator map to a path of the source QP.
Path apply_witness(const IsoWitness& w, const Quiver& src, const Quiver& dst, const Path& p);

struct WitnessVerdict {
    bool pass = false;
    int degree = 0;
    std::string failure; // empty on success
};

/// Checks (i) every source relation maps into the target ideal and the eight
/// quadrilateral relations land on their counterparts, (ii) the mapped
/// generators generate the target boundary slice, (iii) the graded dimension
/// tables agree under the homogeneous grading.
WitnessVerdict verify_witness(const IsoWitness& w, const QpBuild& src, const QpBuild& dst,
                              int degree, IdealVariant variant = IdealVariant::exclude_y_only);
WitnessVerdict verify_witness(const IsoWitness& w, const IceQP& src, const IceQP& dst, int degree,
                              IdealVariant variant = IdealVariant::exclude_y_only);

/// Corrupts a witness (swaps two generator images) for negative controls.
IsoWitness corrupt_witness(IsoWitness w);

/// Doubled-cycle presentation of the boundary algebra of the (n+3)-gon with
/// p punctures: arrows x_i (weight 2) and y_i (weight 1) on n+3 frozen
/// vertices with the commutation and product relations; p <= 2.
struct PolygonOracle {
    Quiver quiver;
    std::vector<Relation> relations;
    MonomialOrder order;
};

PolygonOracle polygon_oracle_presentation(int n, int p);
BoundaryProfile polygon_oracle(int n, int p, int degree);

struct OrbitCheckReport {
    int orbit_size = 0;
    bool overflowed = false;
    int profile_pairs = 0;
    int witnesses = 0;
    bool all_profiles_equal = false;
    bool all_witnesses_pass = false;
    std::string first_failure;
};

/// Sweeps the flip orbit: all pairwise profile comparisons plus witness
/// verification along every recorded flip edge.
OrbitCheckReport orbit_check(const Triangulation& t, int degree, std::size_t max_size,
                             IdealVariant variant = IdealVariant::exclude_y_only);

std::string profile_to_json(const BoundaryProfile& p);
BoundaryProfile profile_from_json(const std::string& text);

} // namespace iceqp

#endif
