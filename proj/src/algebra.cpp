#include "iceqp/algebra.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace iceqp {

AlgebraElement AlgebraElement::of_path(const Quiver& q, const Path& p, Rational c, int bound) {
    AlgebraElement e(q, bound);
    if (static_cast<int>(p.length()) > bound)
        e.truncated_ = true;
    else
        e.add_term(p, c);
    return e;
}

int AlgebraElement::degree() const {
    int d = -1;
    for (const auto& [p, c] : terms_)
        d = std::max(d, static_cast<int>(p.length()));
    return d;
}

void AlgebraElement::add_term(const Path& p, const Rational& c) {
    if (c.is_zero())
        return;
    if (static_cast<int>(p.length()) > degree_bound_) {
        truncated_ = true;
        return;
    }
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

Rational AlgebraElement::coeff(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool AlgebraElement::contains_arrow(int arrow) const {
    for (const auto& [p, c] : terms_)
        for (std::int32_t a : p.arrows())
            if (a == arrow)
                return true;
    return false;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    if (quiver_ == nullptr) {
        *this = o;
        return *this;
    }
    if (!quiver_->same_as(o.quiver()))
        throw Error(ErrorKind::quiver_mismatch, "elements over different quivers");
    for (const auto& [p, c] : o.terms_)
        add_term(p, c);
    truncated_ = truncated_ || o.truncated_;
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    return *this += o.scaled(Rational(-1));
}

AlgebraElement AlgebraElement::scaled(const Rational& c) const {
    AlgebraElement r(*quiver_, degree_bound_);
    r.truncated_ = truncated_;
    if (c.is_zero())
        return r;
    for (const auto& [p, k] : terms_)
        r.terms_.emplace(p, k * c);
    return r;
}

AlgebraElement AlgebraElement::truncated_to(int bound) const {
    AlgebraElement r(*quiver_, bound);
    r.truncated_ = truncated_;
    for (const auto& [p, c] : terms_) {
        if (static_cast<int>(p.length()) <= bound)
            r.terms_.emplace(p, c);
        else
            r.truncated_ = true;
    }
    return r;
}

std::string AlgebraElement::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        if (!c.is_one())
            os << c.str() << "*";
        os << p.str(*quiver_);
    }
    return os.str();
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, int bound) {
    if (!x.quiver().same_as(y.quiver()))
        throw Error(ErrorKind::quiver_mismatch, "multiply: elements over different quivers");
    const Quiver& q = x.quiver();
    AlgebraElement r(q, bound);
    if (x.truncated() || y.truncated())
        r.mark_truncated();
    for (const auto& [p, a] : x.terms()) {
        for (const auto& [s, b] : y.terms()) {
            if (p.target(q) != s.source(q))
                continue;
            if (static_cast<int>(p.length() + s.length()) > bound) {
                r.mark_truncated();
                continue;
            }
            r.add_term(compose(p, s, q), a * b);
        }
    }
    return r;
}

AlgebraElement path_times(const Path& p, const AlgebraElement& x, int bound) {
    AlgebraElement lhs = AlgebraElement::of_path(x.quiver(), p, Rational(1), kUnbounded);
    return multiply(lhs, x, bound);
}

AlgebraElement times_path(const AlgebraElement& x, const Path& p, int bound) {
    AlgebraElement rhs = AlgebraElement::of_path(x.quiver(), p, Rational(1), kUnbounded);
    return multiply(x, rhs, bound);
}

Path canonicalize_cycle(const Path& p, const Quiver& q) {
    if (p.is_trivial() || !p.is_cycle(q))
        throw Error(ErrorKind::not_a_cycle, "canonicalize_cycle: not a cycle of length >= 1");
    const auto& a = p.arrows();
    std::size_t n = a.size();
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            std::int32_t lhs = a[(r + i) % n];
            std::int32_t rhs = a[(best + i) % n];
            if (lhs != rhs) {
                if (lhs < rhs)
                    best = r;
                break;
            }
        }
    }
    if (best == 0)
        return p;
    std::vector<std::int32_t> rot;
    rot.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        rot.push_back(a[(best + i) % n]);
    return Path::of_arrows(std::move(rot), q);
}

Potential Potential::from_terms(const Quiver& q,
                                const std::vector<std::pair<Path, Rational>>& cycles) {
    Potential w(q);
    for (const auto& [p, c] : cycles)
        w.add_cycle(p, c);
    return w;
}

void Potential::add_cycle(const Path& cycle, const Rational& c) {
    element_.add_term(canonicalize_cycle(cycle, element_.quiver()), c);
}

AlgebraElement cyclic_derivative(const Potential& w, const std::string& arrow_id) {
    return cyclic_derivative(w, w.quiver().arrow_index(arrow_id));
}

AlgebraElement cyclic_derivative(const Potential& w, int arrow) {
    const Quiver& q = w.quiver();
    if (arrow < 0 || arrow >= static_cast<int>(q.num_arrows()))
        throw Error(ErrorKind::unknown_arrow, "cyclic_derivative: arrow out of range");
    AlgebraElement r(q);
    for (const auto& [cycle, c] : w.element().terms()) {
        const auto& a = cycle.arrows();
        std::size_t n = a.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] != arrow)
                continue;
            std::vector<std::int32_t> tail;
            tail.reserve(n - 1);
            for (std::size_t j = 1; j < n; ++j)
                tail.push_back(a[(i + j) % n]);
            Path t = tail.empty() ? Path::trivial(q.tgt_of(arrow))
                                  : Path::of_arrows(std::move(tail), q);
            r.add_term(t, c);
        }
    }
    return r;
}

bool cyclically_equivalent(const Potential& a, const Potential& b) {
    if (!a.quiver().same_as(b.quiver()))
        throw Error(ErrorKind::quiver_mismatch, "potentials over different quivers");
    return a.element() == b.element();
}

IceQP::IceQP(Quiver q, Potential w, std::set<std::string> external_arrows)
    : quiver_(std::move(q)), potential_(std::move(w)), external_(std::move(external_arrows)) {
    potential_.rebind(quiver_);
    for (std::size_t i = 0; i < quiver_.num_arrows(); ++i) {
        int a = static_cast<int>(i);
        if (quiver_.src_of(a) == quiver_.tgt_of(a) && !quiver_.is_frozen_index(quiver_.src_of(a)))
            throw Error(ErrorKind::loop_at_vertex,
                        "loop at mutable vertex " + quiver_.vertices()[quiver_.src_of(a)]);
    }
    for (const std::string& e : external_)
        quiver_.arrow_index(e);
}

namespace {

nlohmann::json element_terms_json(const AlgebraElement& x, bool cycles) {
    nlohmann::json arr = nlohmann::json::array();
    const Quiver& q = x.quiver();
    for (const auto& [p, c] : x.terms()) {
        nlohmann::json term;
        term["coeff"] = c.str();
        nlohmann::json ids = nlohmann::json::array();
        for (std::int32_t a : p.arrows())
            ids.push_back(q.arrows()[a].id);
        term[cycles ? "cycle" : "path"] = ids;
        if (p.is_trivial())
            term["base"] = q.vertices()[p.base()];
        arr.push_back(term);
    }
    return arr;
}

Path path_from_json(const nlohmann::json& term, const Quiver& q, const char* key) {
    std::vector<std::int32_t> arrows;
    for (const auto& id : term.at(key))
        arrows.push_back(q.arrow_index(id.get<std::string>()));
    if (arrows.empty()) {
        if (!term.contains("base"))
            throw Error(ErrorKind::parse, "trivial path term without base vertex");
        return Path::trivial(q.vertex_index(term.at("base").get<std::string>()));
    }
    return Path::of_arrows(std::move(arrows), q);
}

} // namespace

std::string potential_to_json(const Potential& w) {
    return element_terms_json(w.element(), true).dump(2);
}

Potential potential_from_json(const std::string& text, const Quiver& q) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::parse, std::string("potential json: ") + e.what());
    }
    Potential w(q);
    for (const auto& term : j)
        w.add_cycle(path_from_json(term, q, "cycle"), Rational::parse(term.at("coeff")));
    return w;
}

std::string element_to_json(const AlgebraElement& x) {
    return element_terms_json(x, false).dump(2);
}

AlgebraElement element_from_json(const std::string& text, const Quiver& q) {
    nlohmann::json j = nlohmann::json::parse(text);
    AlgebraElement x(q);
    for (const auto& term : j)
        x.add_term(path_from_json(term, q, "path"), Rational::parse(term.at("coeff")));
    return x;
}

std::string iceqp_to_json(const IceQP& qp) {
    nlohmann::json j = nlohmann::json::parse(quiver_to_json(qp.quiver()));
    j["potential"] = nlohmann::json::parse(potential_to_json(qp.potential()));
    j["external"] = qp.external_arrows();
    return j.dump(2);
}

IceQP iceqp_from_json(const std::string& text) {
    Quiver q = quiver_from_json(text);
    nlohmann::json j = nlohmann::json::parse(text);
    Potential w(q);
    if (j.contains("potential"))
        for (const auto& term : j.at("potential"))
            w.add_cycle(path_from_json(term, q, "cycle"), Rational::parse(term.at("coeff")));
    std::set<std::string> external;
    if (j.contains("external"))
        for (const auto& e : j.at("external"))
            external.insert(e.get<std::string>());
    return IceQP(std::move(q), std::move(w), std::move(external));
}

} // namespace iceqp
