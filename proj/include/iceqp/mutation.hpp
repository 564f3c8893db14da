#ifndef ICEQP_MUTATION_HPP
#define ICEQP_MUTATION_HPP

#include <string>
#include <utility>
#include <vector>

#include "iceqp/algebra.hpp"

namespace iceqp {

/// One recorded reduction substitution, by arrow ids so the record survives
/// the arrow deletions that follow it.
struct Substitution {
    std::string arrow;
    // replacement element: list of (coeff, arrow-id word)
    std::vector<std::pair<Rational, std::vector<std::string>>> terms;
};

struct MutationReport {
    // ([alpha.beta] id, alpha, beta) with alpha -> k -> beta
    std::vector<std::tuple<std::string, std::string, std::string>> added_composite_arrows;
    // (alpha, alpha*)
    std::vector<std::pair<std::string, std::string>> reversed_arrows;
    // trivial pairs deleted during reduction
    std::vector<std::pair<std::string, std::string>> removed_trivial_pairs;
    std::vector<Substitution> substitutions;

    void append(MutationReport other);
};

std::string mutation_report_to_json(const MutationReport& r);

/// Premutation at a mutable vertex k: composite arrows [alpha.beta] for
/// each path through k, incident arrows reversed, potential [W] + Delta_k.
std::pair<IceQP, MutationReport> premutate(const IceQP& qp, const std::string& k,
                                           int degree_bound = 16);

/// Splits off the trivial part: repeatedly eliminates a degree-2 term c*ab,
/// substituting the solved expressions throughout W. Terms involving an
/// external arrow are kept; the external arrows carry the boundary structure
/// (the degenerate one-corner cycles of the surface QPs live there).
std::pair<IceQP, MutationReport> reduce(const IceQP& qp, int degree_bound = 16);

/// reduce after premutate.
std::pair<IceQP, MutationReport> mutate(const IceQP& qp, const std::string& k,
                                        int degree_bound = 16);

} // namespace iceqp

#endif
