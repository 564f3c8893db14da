#ifndef ICEQP_ALGEBRA_HPP
#define ICEQP_ALGEBRA_HPP

#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "iceqp/quiver.hpp"
#include "iceqp/rational.hpp"

namespace iceqp {

/// Degree bound meaning "no truncation".
inline constexpr int kUnbounded = std::numeric_limits<int>::max();

/// Finite rational linear combination of paths; the finite-degree window of
/// the complete path algebra. Zero coefficients are never stored. If a
/// product ever discarded terms beyond the bound, truncated() reports it.
class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(const Quiver& q, int truncation_degree = kUnbounded)
        : quiver_(&q), degree_bound_(truncation_degree) {}

    static AlgebraElement zero(const Quiver& q, int bound = kUnbounded) {
        return AlgebraElement(q, bound);
    }
    static AlgebraElement of_path(const Quiver& q, const Path& p, Rational c = Rational(1),
                                  int bound = kUnbounded);

    const Quiver& quiver() const { return *quiver_; }
    const std::map<Path, Rational>& terms() const { return terms_; }
    int truncation_degree() const { return degree_bound_; }
    bool truncated() const { return truncated_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Max path length among terms; -1 for the zero element.
    int degree() const;

    void add_term(const Path& p, const Rational& c);
    Rational coeff(const Path& p) const;
    bool contains_arrow(int arrow) const;

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    AlgebraElement scaled(const Rational& c) const;

    /// Drops terms of length > bound, setting the truncated flag if any go.
    AlgebraElement truncated_to(int bound) const;

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.terms_ == b.terms_;
    }

    std::string str() const;

    void mark_truncated() { truncated_ = true; }

    /// Repoints the element at an identical quiver object (same arrows in the
    /// same order); used when the owning quiver is moved.
    void rebind(const Quiver& q) { quiver_ = &q; }

private:
    const Quiver* quiver_ = nullptr;
    std::map<Path, Rational> terms_;
    int degree_bound_ = kUnbounded;
    bool truncated_ = false;
};

/// Bilinear extension of path composition; non-composable pairs contribute
/// zero, terms beyond the bound are dropped.
AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, int bound);

/// Left/right multiplication by a single path.
AlgebraElement path_times(const Path& p, const AlgebraElement& x, int bound);
AlgebraElement times_path(const AlgebraElement& x, const Path& p, int bound);

/// Lexicographically least rotation of a cycle under the arrow precedence
/// (declaration order). Idempotent.
Path canonicalize_cycle(const Path& p, const Quiver& q);

/// Linear combination of cycles held with every cycle in canonical rotation;
/// cyclically equivalent terms are merged at construction.
class Potential {
public:
    Potential() = default;
    explicit Potential(const Quiver& q) : element_(q) {}

    static Potential from_terms(const Quiver& q,
                                const std::vector<std::pair<Path, Rational>>& cycles);

    const AlgebraElement& element() const { return element_; }
    const Quiver& quiver() const { return element_.quiver(); }
    bool is_zero() const { return element_.is_zero(); }

    void add_cycle(const Path& cycle, const Rational& c);

    std::string str() const { return element_.str(); }

    void rebind(const Quiver& q) { element_.rebind(q); }

private:
    AlgebraElement element_;
};

/// d/d(alpha) as the sum over occurrences of alpha of the rotated tail
/// alpha_{i+1}..alpha_k alpha_1..alpha_{i-1}. Result paths run
/// target(alpha) -> source(alpha).
AlgebraElement cyclic_derivative(const Potential& w, const std::string& arrow_id);
AlgebraElement cyclic_derivative(const Potential& w, int arrow);

bool cyclically_equivalent(const Potential& a, const Potential& b);

/// Ice quiver with potential. Loops are tolerated only at frozen vertices
/// (external arrows of one-marked-point boundary components are loops);
/// a loop at a mutable vertex is rejected.
class IceQP {
public:
    IceQP() = default;
    IceQP(Quiver q, Potential w, std::set<std::string> external_arrows = {});

    // The potential's element points at the owned quiver, so every copy and
    // move has to rebind it.
    IceQP(const IceQP& o)
        : quiver_(o.quiver_), potential_(o.potential_), external_(o.external_) {
        potential_.rebind(quiver_);
    }
    IceQP(IceQP&& o) noexcept
        : quiver_(std::move(o.quiver_)), potential_(std::move(o.potential_)),
          external_(std::move(o.external_)) {
        potential_.rebind(quiver_);
    }
    IceQP& operator=(const IceQP& o) {
        if (this != &o) {
            quiver_ = o.quiver_;
            potential_ = o.potential_;
            external_ = o.external_;
            potential_.rebind(quiver_);
        }
        return *this;
    }
    IceQP& operator=(IceQP&& o) noexcept {
        quiver_ = std::move(o.quiver_);
        potential_ = std::move(o.potential_);
        external_ = std::move(o.external_);
        potential_.rebind(quiver_);
        return *this;
    }

    const Quiver& quiver() const { return quiver_; }
    const Potential& potential() const { return potential_; }
    const std::set<std::string>& external_arrows() const { return external_; }
    bool is_external(const std::string& arrow_id) const { return external_.count(arrow_id) > 0; }

private:
    Quiver quiver_;
    Potential potential_;
    std::set<std::string> external_;
};

std::string potential_to_json(const Potential& w);
Potential potential_from_json(const std::string& text, const Quiver& q);
std::string iceqp_to_json(const IceQP& qp);
IceQP iceqp_from_json(const std::string& text);

std::string element_to_json(const AlgebraElement& x);
AlgebraElement element_from_json(const std::string& text, const Quiver& q);

} // namespace iceqp

#endif
