#ifndef ICEQP_REWRITE_HPP
#define ICEQP_REWRITE_HPP

#include <map>
#include <string>
#include <vector>

#include "iceqp/algebra.hpp"

namespace iceqp {

enum class IdealVariant { not_both_frozen, exclude_y_only };

IdealVariant ideal_variant_from_string(const std::string& s);
std::string to_string(IdealVariant v);

/// One generator d/d(alpha) W of the frozen Jacobian ideal. All terms run
/// target(alpha) -> source(alpha).
struct Relation {
    AlgebraElement element;
    std::string source_arrow;
};

/// Jacobian ideal generators for the chosen variant: "not-both-frozen" keeps
/// d/d(alpha) for arrows whose endpoints are not both frozen, "exclude-Y-only"
/// keeps every arrow except the marked external ones. Zero derivatives are
/// dropped.
std::vector<Relation> frozen_relations(const IceQP& qp, IdealVariant variant);

/// Word order: per-arrow positive weights (default 1), compared by weighted
/// degree, then left-lexicographically by arrow precedence.
class MonomialOrder {
public:
    MonomialOrder() = default;
    explicit MonomialOrder(const Quiver& q, std::vector<int> weights = {},
                           std::vector<int> precedence_rank = {});

    int weight(int arrow) const { return weights_[arrow]; }
    int weighted_degree(const Path& p) const;
    /// true iff a < b.
    bool less(const Path& a, const Path& b) const;

    const std::vector<int>& weights() const { return weights_; }

private:
    std::vector<int> weights_;
    std::vector<int> rank_;
};

/// How a rule's element decomposes over the input relations:
/// element = sum of coeff * left * input[index] * right.
struct DerivationTerm {
    Rational coeff;
    Path left;
    int input;
    Path right;
};
using Derivation = std::vector<DerivationTerm>;

struct Rule {
    Path lhs;
    AlgebraElement rhs;
    Derivation derivation;
    bool active = true;
};

/// Oriented, inter-reduced rule set completed up to a weighted-degree bound.
class RewriteSystem {
public:
    const Quiver& quiver() const { return *quiver_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<Relation>& inputs() const { return inputs_; }
    int degree_bound() const { return degree_bound_; }
    int confluent_up_to() const { return confluent_up_to_; }
    bool saturated() const { return saturated_; }

    std::vector<const Rule*> active_rules() const;

    friend RewriteSystem complete(const std::vector<Relation>& relations, const MonomialOrder& ord,
                                  int degree_bound, std::size_t max_rules);

private:
    const Quiver* quiver_ = nullptr;
    MonomialOrder order_;
    std::vector<Rule> rules_;
    std::vector<Relation> inputs_;
    int degree_bound_ = 0;
    int confluent_up_to_ = 0;
    bool saturated_ = false;
};

/// Bounded Knuth-Bendix / diamond-lemma completion. Orients each relation,
/// inter-reduces, then resolves every overlap ambiguity of weighted degree
/// <= degree_bound, recording a derivation for each rule. Exceeding max_rules
/// returns the partial system with saturated() == false.
RewriteSystem complete(const std::vector<Relation>& relations, const MonomialOrder& ord,
                       int degree_bound, std::size_t max_rules = 200000);

/// Exhaustive leftmost reduction; unique when the system is saturated and the
/// degrees touched stay within the certificate.
AlgebraElement normal_form(const AlgebraElement& x, const RewriteSystem& rs);

/// Counts irreducible words from i to j, bucketed by weighted degree 0..n.
/// Requires the system saturated to at least n.
std::vector<long long> graded_dimensions(const RewriteSystem& rs, const std::string& i,
                                         const std::string& j, int n);

/// Same counts for a fixed source and every target vertex at once.
std::map<int, std::vector<long long>> graded_dimensions_from(const RewriteSystem& rs, int i,
                                                             int n);

/// All irreducible words starting at vertex i with weighted degree <= n.
std::vector<Path> irreducible_words_from(const RewriteSystem& rs, int i, int n);

/// Expands a rule's derivation over the inputs and compares with lhs - rhs.
bool check_rule_derivation(const RewriteSystem& rs, const Rule& rule);

/// Re-verifies, independently of the completion run, that every overlap of
/// weighted degree <= n between active rules reduces to zero.
bool verify_confluence(const RewriteSystem& rs, int n);

std::string rewrite_system_to_json(const RewriteSystem& rs);

} // namespace iceqp

#endif
