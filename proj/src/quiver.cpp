#include "iceqp/quiver.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace iceqp {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
               std::vector<std::string> frozen)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)), frozen_(std::move(frozen)) {
    std::map<std::string, int> vidx;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vidx.emplace(vertices_[i], static_cast<int>(i)).second)
            throw Error(ErrorKind::validation, "duplicate vertex id: " + vertices_[i]);
    }
    std::set<std::string> aids;
    arrow_src_.reserve(arrows_.size());
    arrow_tgt_.reserve(arrows_.size());
    for (const Arrow& a : arrows_) {
        if (!aids.insert(a.id).second)
            throw Error(ErrorKind::validation, "duplicate arrow id: " + a.id);
        auto s = vidx.find(a.src);
        auto t = vidx.find(a.tgt);
        if (s == vidx.end() || t == vidx.end())
            throw Error(ErrorKind::validation, "arrow " + a.id + " has undeclared endpoint");
        arrow_src_.push_back(s->second);
        arrow_tgt_.push_back(t->second);
    }
    frozen_mask_.assign(vertices_.size(), false);
    for (const std::string& f : frozen_) {
        auto it = vidx.find(f);
        if (it == vidx.end())
            throw Error(ErrorKind::validation, "frozen vertex not declared: " + f);
        frozen_mask_[it->second] = true;
    }
}

int Quiver::vertex_index(const std::string& id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i] == id)
            return static_cast<int>(i);
    throw Error(ErrorKind::unknown_vertex, "unknown vertex: " + id);
}

int Quiver::arrow_index(const std::string& id) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i)
        if (arrows_[i].id == id)
            return static_cast<int>(i);
    throw Error(ErrorKind::unknown_arrow, "unknown arrow: " + id);
}

bool Quiver::has_vertex(const std::string& id) const {
    return std::any_of(vertices_.begin(), vertices_.end(),
                       [&](const std::string& v) { return v == id; });
}

bool Quiver::has_arrow(const std::string& id) const {
    return std::any_of(arrows_.begin(), arrows_.end(),
                       [&](const Arrow& a) { return a.id == id; });
}

bool Quiver::is_frozen(const std::string& vertex) const {
    return frozen_mask_[vertex_index(vertex)];
}

bool Quiver::same_as(const Quiver& other) const {
    if (vertices_ != other.vertices_ || frozen_ != other.frozen_)
        return false;
    if (arrows_.size() != other.arrows_.size())
        return false;
    for (std::size_t i = 0; i < arrows_.size(); ++i)
        if (arrows_[i].id != other.arrows_[i].id || arrows_[i].src != other.arrows_[i].src ||
            arrows_[i].tgt != other.arrows_[i].tgt)
            return false;
    return true;
}

Path Path::of_arrows(std::vector<std::int32_t> arrows, const Quiver& q) {
    Path p;
    p.arrows_ = std::move(arrows);
    for (std::size_t i = 0; i + 1 < p.arrows_.size(); ++i)
        if (q.tgt_of(p.arrows_[i]) != q.src_of(p.arrows_[i + 1]))
            throw Error(ErrorKind::composition_mismatch, "arrow sequence does not compose");
    return p;
}

std::string Path::str(const Quiver& q) const {
    if (arrows_.empty())
        return "e_" + (base_ >= 0 ? q.vertices()[base_] : std::string("?"));
    std::string s;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        if (i)
            s += ".";
        s += q.arrows()[arrows_[i]].id;
    }
    return s;
}

Path compose(const Path& p, const Path& q, const Quiver& quiver) {
    if (p.target(quiver) != q.source(quiver))
        throw Error(ErrorKind::composition_mismatch,
                    "cannot compose: target " + quiver.vertices()[p.target(quiver)] +
                        " != source " + quiver.vertices()[q.source(quiver)]);
    if (p.is_trivial())
        return q;
    if (q.is_trivial())
        return p;
    std::vector<std::int32_t> arrows = p.arrows();
    arrows.insert(arrows.end(), q.arrows().begin(), q.arrows().end());
    return Path::of_arrows(std::move(arrows), quiver);
}

std::vector<Diagnostic> validate(const std::vector<std::string>& vertices,
                                 const std::vector<Arrow>& arrows,
                                 const std::vector<std::string>& frozen) {
    std::vector<Diagnostic> out;
    std::set<std::string> vseen, aseen;
    for (const auto& v : vertices)
        if (!vseen.insert(v).second)
            out.push_back({Diagnostic::Kind::duplicate_vertex, v, "duplicate vertex id"});
    for (const auto& a : arrows) {
        if (!aseen.insert(a.id).second)
            out.push_back({Diagnostic::Kind::duplicate_arrow, a.id, "duplicate arrow id"});
        if (!vseen.count(a.src) || !vseen.count(a.tgt))
            out.push_back({Diagnostic::Kind::dangling_endpoint, a.id, "endpoint not declared"});
        else if (a.src == a.tgt)
            out.push_back({Diagnostic::Kind::loop, a.id, "loop at vertex " + a.src});
    }
    for (const auto& f : frozen)
        if (!vseen.count(f))
            out.push_back({Diagnostic::Kind::dangling_endpoint, f, "frozen vertex not declared"});
    // 2-cycles, reported once per unordered vertex pair
    std::set<std::pair<std::string, std::string>> reported;
    for (const auto& a : arrows)
        for (const auto& b : arrows)
            if (a.src == b.tgt && a.tgt == b.src && a.src != a.tgt) {
                auto key = std::minmax(a.src, a.tgt);
                if (reported.insert({key.first, key.second}).second)
                    out.push_back({Diagnostic::Kind::two_cycle, a.src + "," + a.tgt,
                                   "2-cycle between " + a.src + " and " + a.tgt});
            }
    return out;
}

std::vector<Diagnostic> validate(const Quiver& q) {
    return validate(q.vertices(), q.arrows(), q.frozen());
}

bool has_two_cycle_at(const Quiver& q, const std::string& vertex) {
    int k = q.vertex_index(vertex);
    for (std::size_t a = 0; a < q.num_arrows(); ++a)
        if (q.tgt_of(static_cast<int>(a)) == k)
            for (std::size_t b = 0; b < q.num_arrows(); ++b)
                if (q.src_of(static_cast<int>(b)) == k &&
                    q.tgt_of(static_cast<int>(b)) == q.src_of(static_cast<int>(a)) &&
                    q.src_of(static_cast<int>(a)) != k)
                    return true;
    return false;
}

bool has_loop_at(const Quiver& q, const std::string& vertex) {
    int k = q.vertex_index(vertex);
    for (std::size_t a = 0; a < q.num_arrows(); ++a)
        if (q.src_of(static_cast<int>(a)) == k && q.tgt_of(static_cast<int>(a)) == k)
            return true;
    return false;
}

std::string to_dot(const Quiver& q) {
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (const auto& v : q.vertices()) {
        os << "  \"" << v << "\"";
        if (q.is_frozen(v))
            os << " [shape=box]";
        os << ";\n";
    }
    for (const auto& a : q.arrows())
        os << "  \"" << a.src << "\" -> \"" << a.tgt << "\" [label=\"" << a.id << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string quiver_to_json(const Quiver& q) {
    nlohmann::json j;
    j["vertices"] = q.vertices();
    j["frozen"] = q.frozen();
    j["arrows"] = nlohmann::json::array();
    for (const auto& a : q.arrows())
        j["arrows"].push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
    return j.dump(2);
}

Quiver quiver_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::parse, std::string("quiver json: ") + e.what());
    }
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<std::string> frozen;
    if (j.contains("frozen"))
        frozen = j.at("frozen").get<std::vector<std::string>>();
    std::vector<Arrow> arrows;
    for (const auto& a : j.at("arrows"))
        arrows.push_back({a.at("id").get<std::string>(), a.at("src").get<std::string>(),
                          a.at("tgt").get<std::string>()});
    return Quiver(std::move(vertices), std::move(arrows), std::move(frozen));
}

} // namespace iceqp
