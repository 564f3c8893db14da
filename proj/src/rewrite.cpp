#include "iceqp/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include <json.hpp>

namespace iceqp {

IdealVariant ideal_variant_from_string(const std::string& s) {
    if (s == "not-both-frozen")
        return IdealVariant::not_both_frozen;
    if (s == "exclude-Y-only")
        return IdealVariant::exclude_y_only;
    throw Error(ErrorKind::parse, "unknown ideal variant: " + s);
}

std::string to_string(IdealVariant v) {
    return v == IdealVariant::not_both_frozen ? "not-both-frozen" : "exclude-Y-only";
}

std::vector<Relation> frozen_relations(const IceQP& qp, IdealVariant variant) {
    const Quiver& q = qp.quiver();
    std::vector<Relation> out;
    for (std::size_t i = 0; i < q.num_arrows(); ++i) {
        int a = static_cast<int>(i);
        const Arrow& arr = q.arrows()[i];
        if (variant == IdealVariant::not_both_frozen) {
            if (q.is_frozen_index(q.src_of(a)) && q.is_frozen_index(q.tgt_of(a)))
                continue;
        } else {
            if (qp.is_external(arr.id))
                continue;
        }
        AlgebraElement d = cyclic_derivative(qp.potential(), a);
        if (d.is_zero())
            continue;
        out.push_back({std::move(d), arr.id});
    }
    return out;
}

MonomialOrder::MonomialOrder(const Quiver& q, std::vector<int> weights,
                             std::vector<int> precedence_rank)
    : weights_(std::move(weights)), rank_(std::move(precedence_rank)) {
    if (weights_.empty())
        weights_.assign(q.num_arrows(), 1);
    if (rank_.empty()) {
        rank_.resize(q.num_arrows());
        for (std::size_t i = 0; i < q.num_arrows(); ++i)
            rank_[i] = static_cast<int>(i);
    }
    if (weights_.size() != q.num_arrows() || rank_.size() != q.num_arrows())
        throw Error(ErrorKind::validation, "order tables must cover every arrow");
    for (int w : weights_)
        if (w < 1)
            throw Error(ErrorKind::validation, "arrow weights must be positive");
}

int MonomialOrder::weighted_degree(const Path& p) const {
    int d = 0;
    for (std::int32_t a : p.arrows())
        d += weights_[a];
    return d;
}

bool MonomialOrder::less(const Path& a, const Path& b) const {
    int da = weighted_degree(a);
    int db = weighted_degree(b);
    if (da != db)
        return da < db;
    std::size_t n = std::min(a.length(), b.length());
    for (std::size_t i = 0; i < n; ++i) {
        int ra = rank_[a.arrows()[i]];
        int rb = rank_[b.arrows()[i]];
        if (ra != rb)
            return ra < rb;
    }
    if (a.length() != b.length())
        return a.length() < b.length();
    return a.base() < b.base();
}

namespace {

Derivation compose_derivation(const Path& left, const Derivation& d, const Path& right,
                              const Rational& scale, const Quiver& q) {
    Derivation out;
    out.reserve(d.size());
    for (const auto& t : d)
        out.push_back({t.coeff * scale, compose(left, t.left, q), t.input,
                       compose(t.right, right, q)});
    return out;
}

void append_derivation(Derivation& dst, Derivation src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

int find_subword(const std::vector<std::int32_t>& hay, const std::vector<std::int32_t>& word) {
    if (word.empty() || word.size() > hay.size())
        return -1;
    for (std::size_t i = 0; i + word.size() <= hay.size(); ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < word.size(); ++j)
            if (hay[i + j] != word[j]) {
                ok = false;
                break;
            }
        if (ok)
            return static_cast<int>(i);
    }
    return -1;
}

struct Reducer {
    const Quiver& q;
    const MonomialOrder& order;
    const std::vector<Rule>& rules;
    int length_cap;

    bool find_redex(const Path& p, int& rule_idx, int& pos) const {
        const auto& w = p.arrows();
        for (std::size_t at = 0; at < w.size(); ++at) {
            for (std::size_t r = 0; r < rules.size(); ++r) {
                if (!rules[r].active)
                    continue;
                const auto& lhs = rules[r].lhs.arrows();
                if (lhs.size() > w.size() - at)
                    continue;
                bool ok = true;
                for (std::size_t j = 0; j < lhs.size(); ++j)
                    if (w[at + j] != lhs[j]) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    rule_idx = static_cast<int>(r);
                    pos = static_cast<int>(at);
                    return true;
                }
            }
        }
        return false;
    }

    /// Exhaustive reduction, largest reducible term first, leftmost and then
    /// lowest rule index within a term. When deriv is given, the applied rule
    /// multiples are subtracted from it so it keeps expanding to the returned
    /// element.
    AlgebraElement reduce(AlgebraElement x, Derivation* deriv) const {
        AlgebraElement result(x.quiver(), x.truncation_degree());
        if (x.truncated())
            result.mark_truncated();
        while (!x.is_zero()) {
            const Path* best = nullptr;
            for (const auto& [p, c] : x.terms())
                if (!best || order.less(*best, p))
                    best = &p;
            Path p = *best;
            Rational c = x.coeff(p);
            int r = -1, at = -1;
            if (!find_redex(p, r, at)) {
                result.add_term(p, c);
                x.add_term(p, -c);
                continue;
            }
            const Rule& rule = rules[r];
            const auto& w = p.arrows();
            std::vector<std::int32_t> la(w.begin(), w.begin() + at);
            std::vector<std::int32_t> ra(w.begin() + at + rule.lhs.length(), w.end());
            Path left = la.empty() ? Path::trivial(p.source(q)) : Path::of_arrows(std::move(la), q);
            Path right =
                ra.empty() ? Path::trivial(rule.lhs.target(q)) : Path::of_arrows(std::move(ra), q);
            x.add_term(p, -c);
            AlgebraElement repl =
                times_path(path_times(left, rule.rhs, length_cap), right, length_cap);
            if (repl.truncated())
                result.mark_truncated();
            x += repl.scaled(c);
            if (deriv)
                append_derivation(*deriv, compose_derivation(left, rule.derivation, right, -c, q));
        }
        return result;
    }
};

struct OverlapKey {
    int degree;
    int i;
    int j;
    int shift;
    friend bool operator<(const OverlapKey& a, const OverlapKey& b) {
        return std::tie(a.degree, a.i, a.j, a.shift) < std::tie(b.degree, b.i, b.j, b.shift);
    }
};

} // namespace

std::vector<const Rule*> RewriteSystem::active_rules() const {
    std::vector<const Rule*> out;
    for (const auto& r : rules_)
        if (r.active)
            out.push_back(&r);
    return out;
}

RewriteSystem complete(const std::vector<Relation>& relations, const MonomialOrder& ord,
                       int degree_bound, std::size_t max_rules) {
    if (relations.empty())
        throw Error(ErrorKind::validation, "complete: no relations");
    const Quiver& q = relations.front().element.quiver();
    RewriteSystem rs;
    rs.quiver_ = &q;
    rs.order_ = ord;
    rs.inputs_ = relations;
    rs.degree_bound_ = degree_bound;

    Reducer red{q, ord, rs.rules_, degree_bound};

    struct Pending {
        AlgebraElement elem;
        Derivation deriv;
    };
    std::deque<Pending> pending;
    for (std::size_t i = 0; i < relations.size(); ++i) {
        const AlgebraElement& e = relations[i].element;
        if (e.is_zero())
            continue;
        const Path& any = e.terms().begin()->first;
        Derivation d = {{Rational(1), Path::trivial(any.source(q)), static_cast<int>(i),
                         Path::trivial(any.target(q))}};
        pending.push_back({e, std::move(d)});
    }

    std::set<OverlapKey> overlaps;

    // proper overlaps: a suffix of lhs(i) equals a prefix of lhs(j)
    auto enqueue_pair = [&](int i, int j) {
        const auto& u = rs.rules_[i].lhs.arrows();
        const auto& v = rs.rules_[j].lhs.arrows();
        for (std::size_t len = 1; len < u.size() && len < v.size(); ++len) {
            bool match = true;
            for (std::size_t t = 0; t < len; ++t)
                if (u[u.size() - len + t] != v[t]) {
                    match = false;
                    break;
                }
            if (!match)
                continue;
            int deg = ord.weighted_degree(rs.rules_[i].lhs) +
                      ord.weighted_degree(rs.rules_[j].lhs);
            for (std::size_t t = 0; t < len; ++t)
                deg -= ord.weight(v[t]);
            if (deg <= degree_bound)
                overlaps.insert({deg, i, j, static_cast<int>(len)});
        }
    };

    bool exceeded = false;
    while (!pending.empty() || !overlaps.empty()) {
        if (rs.rules_.size() > max_rules) {
            exceeded = true;
            break;
        }
        if (!pending.empty()) {
            Pending p = std::move(pending.front());
            pending.pop_front();
            Derivation deriv = std::move(p.deriv);
            AlgebraElement nf = red.reduce(p.elem.truncated_to(degree_bound), &deriv);
            if (nf.is_zero())
                continue;
            const Path* lead = nullptr;
            for (const auto& [pa, c] : nf.terms())
                if (!lead || ord.less(*lead, pa))
                    lead = &pa;
            if (lead->is_trivial())
                throw Error(ErrorKind::unorientable_relation, "relation with trivial leading term");
            Rational lc = nf.coeff(*lead);
            AlgebraElement monic = nf.scaled(lc.inverse());
            Rule rule;
            rule.lhs = *lead;
            rule.rhs = AlgebraElement::of_path(q, *lead) - monic; // element = lhs - rhs
            rule.derivation = compose_derivation(Path::trivial(lead->source(q)), deriv,
                                                 Path::trivial(lead->target(q)), lc.inverse(), q);
            int idx = static_cast<int>(rs.rules_.size());
            rs.rules_.push_back(std::move(rule));
            for (int r = 0; r < idx; ++r) {
                Rule& other = rs.rules_[r];
                if (!other.active)
                    continue;
                if (find_subword(other.lhs.arrows(), rs.rules_[idx].lhs.arrows()) >= 0) {
                    other.active = false;
                    AlgebraElement elem = AlgebraElement::of_path(q, other.lhs) - other.rhs;
                    pending.push_back({std::move(elem), other.derivation});
                }
            }
            for (int r = 0; r <= idx; ++r) {
                if (!rs.rules_[r].active)
                    continue;
                enqueue_pair(idx, r);
                if (r != idx)
                    enqueue_pair(r, idx);
            }
            continue;
        }
        OverlapKey key = *overlaps.begin();
        overlaps.erase(overlaps.begin());
        if (!rs.rules_[key.i].active || !rs.rules_[key.j].active)
            continue;
        const auto& u = rs.rules_[key.i].lhs.arrows();
        const auto& v = rs.rules_[key.j].lhs.arrows();
        std::size_t len = static_cast<std::size_t>(key.shift);
        std::vector<std::int32_t> A(u.begin(), u.end() - len);
        std::vector<std::int32_t> C(v.begin() + len, v.end());
        Path pa = A.empty() ? Path::trivial(rs.rules_[key.i].lhs.source(q)) : Path::of_arrows(A, q);
        Path pc = C.empty() ? Path::trivial(rs.rules_[key.j].lhs.target(q)) : Path::of_arrows(C, q);
        // w = A.B.C reduces as rhs_i.C and A.rhs_j; their difference is
        // A.elem_j - elem_i.C as an ideal combination.
        AlgebraElement s =
            times_path(rs.rules_[key.i].rhs, pc, degree_bound) -
            path_times(pa, rs.rules_[key.j].rhs, degree_bound);
        Derivation sd = compose_derivation(pa, rs.rules_[key.j].derivation,
                                           Path::trivial(rs.rules_[key.j].lhs.target(q)),
                                           Rational(1), q);
        append_derivation(sd, compose_derivation(Path::trivial(rs.rules_[key.i].lhs.source(q)),
                                                 rs.rules_[key.i].derivation, pc, Rational(-1), q));
        pending.push_back({std::move(s), std::move(sd)});
    }

    if (!exceeded) {
        rs.saturated_ = true;
        rs.confluent_up_to_ = degree_bound;
        // normalize remainders against the finished system; the remainder can
        // never contain the rule's own left-hand side, so reducing it (and not
        // the full element) avoids the trivial self-rewrite
        for (auto& rule : rs.rules_) {
            if (!rule.active)
                continue;
            Derivation d;
            AlgebraElement nf_rhs = red.reduce(rule.rhs, &d); // expansion(d) = nf - rhs
            if (!(nf_rhs == rule.rhs)) {
                for (auto& t : d)
                    t.coeff = -t.coeff;
                append_derivation(rule.derivation, std::move(d));
                rule.rhs = std::move(nf_rhs);
            }
        }
    } else {
        rs.saturated_ = false;
        rs.confluent_up_to_ = 0;
    }
    return rs;
}

AlgebraElement normal_form(const AlgebraElement& x, const RewriteSystem& rs) {
    Reducer red{rs.quiver(), rs.order(), rs.rules(), rs.degree_bound()};
    return red.reduce(x, nullptr);
}

namespace {

/// Aho-Corasick automaton over the arrow alphabet; a word dies as soon as it
/// contains some rule's left-hand side.
struct WordAutomaton {
    struct Node {
        std::map<std::int32_t, int> next;
        int fail = 0;
        bool terminal = false;
    };
    std::vector<Node> nodes;

    explicit WordAutomaton(const std::vector<const Rule*>& rules) {
        nodes.emplace_back();
        for (const Rule* r : rules) {
            int cur = 0;
            for (std::int32_t a : r->lhs.arrows()) {
                auto it = nodes[cur].next.find(a);
                if (it == nodes[cur].next.end()) {
                    nodes.emplace_back();
                    int id = static_cast<int>(nodes.size()) - 1;
                    nodes[cur].next.emplace(a, id);
                    cur = id;
                } else {
                    cur = it->second;
                }
            }
            nodes[cur].terminal = true;
        }
        std::deque<int> bfs;
        for (auto& [a, child] : nodes[0].next) {
            (void)a;
            nodes[child].fail = 0;
            bfs.push_back(child);
        }
        while (!bfs.empty()) {
            int n = bfs.front();
            bfs.pop_front();
            for (auto& [a, child] : nodes[n].next) {
                int f = nodes[n].fail;
                while (f != 0 && !nodes[f].next.count(a))
                    f = nodes[f].fail;
                auto it = nodes[f].next.find(a);
                nodes[child].fail = it != nodes[f].next.end() ? it->second : 0;
                if (nodes[child].fail == child)
                    nodes[child].fail = 0;
                nodes[child].terminal = nodes[child].terminal || nodes[nodes[child].fail].terminal;
                bfs.push_back(child);
            }
        }
    }

    /// Longest-suffix transition; -1 when a forbidden word completes.
    int step(int node, std::int32_t a) const {
        int n = node;
        for (;;) {
            auto it = nodes[n].next.find(a);
            if (it != nodes[n].next.end()) {
                n = it->second;
                break;
            }
            if (n == 0)
                return nodes[0].terminal ? -1 : 0;
            n = nodes[n].fail;
        }
        return nodes[n].terminal ? -1 : n;
    }
};

} // namespace

std::map<int, std::vector<long long>> graded_dimensions_from(const RewriteSystem& rs, int i,
                                                             int n) {
    if (!rs.saturated() || rs.confluent_up_to() < n)
        throw Error(ErrorKind::unsaturated_system,
                    "graded_dimensions: system not saturated to degree " + std::to_string(n));
    const Quiver& q = rs.quiver();
    WordAutomaton aut(rs.active_rules());

    std::map<int, std::vector<long long>> out;
    for (std::size_t v = 0; v < q.num_vertices(); ++v)
        out[static_cast<int>(v)].assign(static_cast<std::size_t>(n) + 1, 0);
    out[i][0] = 1;
    std::map<std::tuple<int, int, int>, long long> layer; // (node, vertex, wdeg)
    layer[{0, i, 0}] = 1;
    while (!layer.empty()) {
        std::map<std::tuple<int, int, int>, long long> next;
        for (const auto& [state, cnt] : layer) {
            auto [node, v, wd] = state;
            for (std::size_t ai = 0; ai < q.num_arrows(); ++ai) {
                int a = static_cast<int>(ai);
                if (q.src_of(a) != v)
                    continue;
                int nwd = wd + rs.order().weight(a);
                if (nwd > n)
                    continue;
                int nn = aut.step(node, a);
                if (nn < 0)
                    continue;
                next[{nn, q.tgt_of(a), nwd}] += cnt;
            }
        }
        for (const auto& [state, cnt] : next) {
            auto [node, v, wd] = state;
            (void)node;
            out[v][wd] += cnt;
        }
        layer = std::move(next);
    }
    return out;
}

std::vector<long long> graded_dimensions(const RewriteSystem& rs, const std::string& i,
                                         const std::string& j, int n) {
    const Quiver& q = rs.quiver();
    int vi = q.vertex_index(i);
    int vj = q.vertex_index(j);
    return graded_dimensions_from(rs, vi, n).at(vj);
}

std::vector<Path> irreducible_words_from(const RewriteSystem& rs, int i, int n) {
    const Quiver& q = rs.quiver();
    WordAutomaton aut(rs.active_rules());
    std::vector<Path> out;
    out.push_back(Path::trivial(i));
    std::vector<std::tuple<std::vector<std::int32_t>, int, int, int>> stack;
    stack.push_back({{}, 0, i, 0});
    while (!stack.empty()) {
        auto [word, node, v, wd] = std::move(stack.back());
        stack.pop_back();
        for (std::size_t ai = 0; ai < q.num_arrows(); ++ai) {
            int a = static_cast<int>(ai);
            if (q.src_of(a) != v)
                continue;
            int nwd = wd + rs.order().weight(a);
            if (nwd > n)
                continue;
            int nn = aut.step(node, a);
            if (nn < 0)
                continue;
            std::vector<std::int32_t> nw = word;
            nw.push_back(a);
            out.push_back(Path::of_arrows(nw, q));
            stack.push_back({std::move(nw), nn, q.tgt_of(a), nwd});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool check_rule_derivation(const RewriteSystem& rs, const Rule& rule) {
    const Quiver& q = rs.quiver();
    AlgebraElement acc(q);
    for (const auto& t : rule.derivation) {
        AlgebraElement piece = path_times(t.left, rs.inputs()[t.input].element, kUnbounded);
        piece = times_path(piece, t.right, kUnbounded);
        acc += piece.scaled(t.coeff);
    }
    AlgebraElement elem = AlgebraElement::of_path(q, rule.lhs) - rule.rhs;
    return acc == elem;
}

bool verify_confluence(const RewriteSystem& rs, int n) {
    const Quiver& q = rs.quiver();
    auto active = rs.active_rules();
    for (const Rule* ru : active) {
        for (const Rule* rv : active) {
            const auto& u = ru->lhs.arrows();
            const auto& v = rv->lhs.arrows();
            for (std::size_t len = 1; len < u.size() && len < v.size(); ++len) {
                bool match = true;
                for (std::size_t t = 0; t < len; ++t)
                    if (u[u.size() - len + t] != v[t]) {
                        match = false;
                        break;
                    }
                if (!match)
                    continue;
                int deg = rs.order().weighted_degree(ru->lhs) + rs.order().weighted_degree(rv->lhs);
                for (std::size_t t = 0; t < len; ++t)
                    deg -= rs.order().weight(v[t]);
                if (deg > n)
                    continue;
                std::vector<std::int32_t> A(u.begin(), u.end() - len);
                std::vector<std::int32_t> C(v.begin() + len, v.end());
                Path pa = A.empty() ? Path::trivial(ru->lhs.source(q)) : Path::of_arrows(A, q);
                Path pc = C.empty() ? Path::trivial(rv->lhs.target(q)) : Path::of_arrows(C, q);
                AlgebraElement s = times_path(ru->rhs, pc, rs.degree_bound()) -
                                   path_times(pa, rv->rhs, rs.degree_bound());
                if (!normal_form(s, rs).is_zero())
                    return false;
            }
        }
    }
    return true;
}

std::string rewrite_system_to_json(const RewriteSystem& rs) {
    const Quiver& q = rs.quiver();
    nlohmann::json j;
    j["degree_bound"] = rs.degree_bound();
    j["confluent_up_to"] = rs.confluent_up_to();
    j["saturated"] = rs.saturated();
    j["rules"] = nlohmann::json::array();
    for (const auto& r : rs.rules()) {
        if (!r.active)
            continue;
        nlohmann::json rule;
        nlohmann::json lhs = nlohmann::json::array();
        for (std::int32_t a : r.lhs.arrows())
            lhs.push_back(q.arrows()[a].id);
        rule["lhs"] = lhs;
        rule["rhs"] = nlohmann::json::parse(element_to_json(r.rhs));
        rule["derivation_terms"] = r.derivation.size();
        j["rules"].push_back(rule);
    }
    return j.dump(2);
}

} // namespace iceqp
