#ifndef ICEQP_QUIVER_HPP
#define ICEQP_QUIVER_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace iceqp {

/// Error kinds used across the library. Tests assert on the kind, messages
/// are for humans.
enum class ErrorKind {
    composition_mismatch,
    unknown_vertex,
    unknown_arrow,
    quiver_mismatch,
    not_a_cycle,
    frozen_vertex,
    two_cycle_at_vertex,
    loop_at_vertex,
    nontermination_at_bound,
    degenerate_surface,
    unsupported_kind,
    not_an_arc,
    not_flippable,
    unsupported_configuration,
    validation,
    unorientable_relation,
    bound_exceeded,
    unsaturated_system,
    out_of_range,
    parse,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct Arrow {
    std::string id;
    std::string src;
    std::string tgt;
};

/// Finite quiver with a distinguished frozen vertex subset. Vertex and arrow
/// order is the declaration order of the input; the arrow order doubles as
/// the global precedence used for canonical forms and rewrite orientation.
class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
           std::vector<std::string> frozen);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<std::string>& frozen() const { return frozen_; }

    int vertex_index(const std::string& id) const;
    int arrow_index(const std::string& id) const;
    bool has_vertex(const std::string& id) const;
    bool has_arrow(const std::string& id) const;
    bool is_frozen(const std::string& vertex) const;
    bool is_frozen_index(int v) const { return frozen_mask_[v]; }

    int src_of(int arrow) const { return arrow_src_[arrow]; }
    int tgt_of(int arrow) const { return arrow_tgt_[arrow]; }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }

    /// Structural fingerprint: equal ids, order and frozen set.
    bool same_as(const Quiver& other) const;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::string> frozen_;
    std::vector<int> arrow_src_;
    std::vector<int> arrow_tgt_;
    std::vector<bool> frozen_mask_;
};

/// Composable arrow sequence, stored left-to-right: the path ab first
/// traverses a, then b, so tgt(a) = src(b). A trivial path carries only its
/// base vertex.
class Path {
public:
    Path() = default;
    static Path trivial(int vertex) {
        Path p;
        p.base_ = vertex;
        return p;
    }
    static Path of_arrow(int arrow) {
        Path p;
        p.arrows_.push_back(arrow);
        return p;
    }
    static Path of_arrows(std::vector<std::int32_t> arrows, const Quiver& q);

    bool is_trivial() const { return arrows_.empty(); }
    std::size_t length() const { return arrows_.size(); }
    const std::vector<std::int32_t>& arrows() const { return arrows_; }
    std::int32_t base() const { return base_; }

    int source(const Quiver& q) const { return arrows_.empty() ? base_ : q.src_of(arrows_.front()); }
    int target(const Quiver& q) const { return arrows_.empty() ? base_ : q.tgt_of(arrows_.back()); }
    bool is_cycle(const Quiver& q) const { return source(q) == target(q); }

    /// Ordering for container keys: by length, then arrow indices, then base.
    friend bool operator<(const Path& a, const Path& b) {
        if (a.arrows_.size() != b.arrows_.size())
            return a.arrows_.size() < b.arrows_.size();
        if (a.arrows_ != b.arrows_)
            return a.arrows_ < b.arrows_;
        return a.base_ < b.base_;
    }
    friend bool operator==(const Path& a, const Path& b) {
        return a.base_ == b.base_ && a.arrows_ == b.arrows_;
    }
    friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }

    std::string str(const Quiver& q) const;

private:
    std::int32_t base_ = -1;
    std::vector<std::int32_t> arrows_;
};

/// Concatenation; trivial paths act as identities.
Path compose(const Path& p, const Path& q, const Quiver& quiver);

struct Diagnostic {
    enum class Kind { duplicate_vertex, duplicate_arrow, dangling_endpoint, loop, two_cycle };
    Kind kind;
    std::string location;
    std::string message;
};

/// Reports duplicate ids, dangling endpoints, loops and 2-cycles. An empty
/// report means the quiver is well-formed.
std::vector<Diagnostic> validate(const std::vector<std::string>& vertices,
                                 const std::vector<Arrow>& arrows,
                                 const std::vector<std::string>& frozen);
std::vector<Diagnostic> validate(const Quiver& q);

/// True iff some pair alpha: i->k, beta: k->i exists.
bool has_two_cycle_at(const Quiver& q, const std::string& vertex);
bool has_loop_at(const Quiver& q, const std::string& vertex);

std::string to_dot(const Quiver& q);

std::string quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const std::string& text);

} // namespace iceqp

#endif
