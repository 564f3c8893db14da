#include "iceqp/mutation.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace iceqp {

void MutationReport::append(MutationReport other) {
    auto mv = [](auto& dst, auto& src) {
        dst.insert(dst.end(), std::make_move_iterator(src.begin()),
                   std::make_move_iterator(src.end()));
    };
    mv(added_composite_arrows, other.added_composite_arrows);
    mv(reversed_arrows, other.reversed_arrows);
    mv(removed_trivial_pairs, other.removed_trivial_pairs);
    mv(substitutions, other.substitutions);
}

std::string mutation_report_to_json(const MutationReport& r) {
    nlohmann::json j;
    j["added_composite_arrows"] = nlohmann::json::array();
    for (const auto& [id, a, b] : r.added_composite_arrows)
        j["added_composite_arrows"].push_back({{"id", id}, {"alpha", a}, {"beta", b}});
    j["reversed_arrows"] = nlohmann::json::array();
    for (const auto& [a, ar] : r.reversed_arrows)
        j["reversed_arrows"].push_back({{"arrow", a}, {"reversed", ar}});
    j["removed_trivial_pairs"] = nlohmann::json::array();
    for (const auto& [a, b] : r.removed_trivial_pairs)
        j["removed_trivial_pairs"].push_back({{"alpha", a}, {"beta", b}});
    j["substitutions"] = nlohmann::json::array();
    for (const auto& s : r.substitutions) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [c, word] : s.terms)
            terms.push_back({{"coeff", c.str()}, {"path", word}});
        j["substitutions"].push_back({{"arrow", s.arrow}, {"terms", terms}});
    }
    return j.dump(2);
}

namespace {

Substitution record_substitution(const std::string& arrow, const AlgebraElement& repl) {
    Substitution s;
    s.arrow = arrow;
    const Quiver& q = repl.quiver();
    for (const auto& [p, c] : repl.terms()) {
        std::vector<std::string> word;
        for (std::int32_t a : p.arrows())
            word.push_back(q.arrows()[a].id);
        s.terms.push_back({c, word});
    }
    return s;
}

/// Rebuilds a potential over a new quiver by transporting arrow ids.
Potential transport_potential(const Potential& w, const Quiver& from, const Quiver& to) {
    Potential out(to);
    for (const auto& [cycle, c] : w.element().terms()) {
        std::vector<std::int32_t> arrows;
        for (std::int32_t a : cycle.arrows())
            arrows.push_back(to.arrow_index(from.arrows()[a].id));
        out.add_cycle(Path::of_arrows(std::move(arrows), to), c);
    }
    return out;
}

/// Substitutes arrows by elements inside a single cyclic word, multiplying
/// out with truncation. The replacements preserve endpoints, so every
/// resulting term is again a cycle.
AlgebraElement substitute_in_cycle(const Path& cycle, const Rational& coeff,
                                   const std::map<int, AlgebraElement>& repl, const Quiver& q,
                                   int bound) {
    AlgebraElement acc = AlgebraElement::of_path(q, Path::trivial(cycle.source(q)), coeff, bound);
    for (std::int32_t a : cycle.arrows()) {
        auto it = repl.find(a);
        if (it == repl.end())
            acc = times_path(acc, Path::of_arrow(a), bound);
        else
            acc = multiply(acc, it->second, bound);
        if (acc.is_zero())
            break;
    }
    return acc;
}

bool element_mentions(const AlgebraElement& x, int a, int b) {
    return x.contains_arrow(a) || x.contains_arrow(b);
}

} // namespace

std::pair<IceQP, MutationReport> premutate(const IceQP& qp, const std::string& k,
                                           int degree_bound) {
    const Quiver& q = qp.quiver();
    int kv = q.vertex_index(k);
    if (q.is_frozen(k))
        throw Error(ErrorKind::frozen_vertex, "mutation at frozen vertex " + k);
    if (has_loop_at(q, k))
        throw Error(ErrorKind::loop_at_vertex, "mutation at vertex with loop " + k);
    if (has_two_cycle_at(q, k))
        throw Error(ErrorKind::two_cycle_at_vertex, "mutation at vertex with 2-cycle " + k);

    std::vector<int> incoming, outgoing;
    for (std::size_t i = 0; i < q.num_arrows(); ++i) {
        int a = static_cast<int>(i);
        if (q.tgt_of(a) == kv)
            incoming.push_back(a);
        if (q.src_of(a) == kv)
            outgoing.push_back(a);
    }

    MutationReport report;
    std::vector<Arrow> arrows;
    for (std::size_t i = 0; i < q.num_arrows(); ++i) {
        int a = static_cast<int>(i);
        if (q.tgt_of(a) != kv && q.src_of(a) != kv)
            arrows.push_back(q.arrows()[a]);
    }
    // composite arrows [alpha.beta], one per path alpha then beta through k
    std::map<std::pair<int, int>, std::string> composite_id;
    for (int a : incoming)
        for (int b : outgoing) {
            std::string id = "[" + q.arrows()[a].id + "." + q.arrows()[b].id + "]";
            arrows.push_back({id, q.vertices()[q.src_of(a)], q.vertices()[q.tgt_of(b)]});
            composite_id[{a, b}] = id;
            report.added_composite_arrows.emplace_back(id, q.arrows()[a].id, q.arrows()[b].id);
        }
    // reversed arrows
    std::map<int, std::string> reversed_id;
    for (std::size_t i = 0; i < q.num_arrows(); ++i) {
        int a = static_cast<int>(i);
        if (q.tgt_of(a) == kv || q.src_of(a) == kv) {
            std::string id = q.arrows()[a].id + "*";
            arrows.push_back({id, q.arrows()[a].tgt, q.arrows()[a].src});
            reversed_id[a] = id;
            report.reversed_arrows.emplace_back(q.arrows()[a].id, id);
        }
    }

    Quiver nq(q.vertices(), arrows, q.frozen());

    // [W]: rotate each cycle off k, then collapse every through-k pair.
    Potential nw(nq);
    for (const auto& [cycle, c] : qp.potential().element().terms()) {
        const auto& arr = cycle.arrows();
        std::size_t n = arr.size();
        std::size_t rot = n;
        for (std::size_t r = 0; r < n; ++r)
            if (q.src_of(arr[r]) != kv) {
                rot = r;
                break;
            }
        if (rot == n)
            throw Error(ErrorKind::loop_at_vertex,
                        "potential cycle cannot be rotated off vertex " + k);
        std::vector<std::int32_t> out;
        for (std::size_t i = 0; i < n; ++i) {
            std::int32_t a = arr[(rot + i) % n];
            if (q.tgt_of(a) == kv) {
                std::int32_t b = arr[(rot + i + 1) % n];
                out.push_back(nq.arrow_index(composite_id.at({a, b})));
                ++i;
            } else {
                out.push_back(nq.arrow_index(q.arrows()[a].id));
            }
        }
        nw.add_cycle(Path::of_arrows(std::move(out), nq), c);
    }
    // Delta_k = sum [alpha beta] beta* alpha*
    for (int a : incoming)
        for (int b : outgoing) {
            std::vector<std::int32_t> cyc = {nq.arrow_index(composite_id.at({a, b})),
                                             nq.arrow_index(reversed_id.at(b)),
                                             nq.arrow_index(reversed_id.at(a))};
            nw.add_cycle(Path::of_arrows(std::move(cyc), nq), Rational(1));
        }

    Potential truncated(nq);
    for (const auto& [cycle, c] : nw.element().terms()) {
        if (static_cast<int>(cycle.length()) <= degree_bound)
            truncated.add_cycle(cycle, c);
    }
    return {IceQP(std::move(nq), std::move(truncated), qp.external_arrows()), std::move(report)};
}

std::pair<IceQP, MutationReport> reduce(const IceQP& qp, int degree_bound) {
    MutationReport report;
    IceQP cur = qp;

    for (;;) {
        const Quiver& q = cur.quiver();
        const Potential& w = cur.potential();
        // least canonical degree-2 term avoiding the external arrows; the
        // external arrows carry the boundary algebra and are never split off
        int alpha = -1, beta = -1;
        Rational c;
        for (const auto& [cycle, coeff] : w.element().terms()) {
            if (cycle.length() != 2)
                continue;
            int a = cycle.arrows()[0];
            int b = cycle.arrows()[1];
            if (a == b || cur.is_external(q.arrows()[a].id) || cur.is_external(q.arrows()[b].id))
                continue;
            alpha = a;
            beta = b;
            c = coeff;
            break;
        }
        if (alpha < 0)
            break;

        AlgebraElement da = cyclic_derivative(w, alpha); // c*beta + higher
        AlgebraElement db = cyclic_derivative(w, beta);  // c*alpha + higher
        Rational minv = -c.inverse();
        AlgebraElement repl_alpha =
            (db - AlgebraElement::of_path(q, Path::of_arrow(alpha), c)).scaled(minv);
        AlgebraElement repl_beta =
            (da - AlgebraElement::of_path(q, Path::of_arrow(beta), c)).scaled(minv);

        // Self-substitute until the replacements avoid both deleted arrows.
        int guard = 0;
        while (element_mentions(repl_alpha, alpha, beta) ||
               element_mentions(repl_beta, alpha, beta)) {
            if (++guard > degree_bound + 2)
                throw Error(ErrorKind::nontermination_at_bound,
                            "reduction substitution did not stabilize below degree bound " +
                                std::to_string(degree_bound));
            std::map<int, AlgebraElement> step = {{alpha, repl_alpha}, {beta, repl_beta}};
            AlgebraElement na(q, degree_bound), nb(q, degree_bound);
            for (const auto& [p, k2] : repl_alpha.terms())
                na += substitute_in_cycle(p, k2, step, q, degree_bound);
            for (const auto& [p, k2] : repl_beta.terms())
                nb += substitute_in_cycle(p, k2, step, q, degree_bound);
            repl_alpha = na;
            repl_beta = nb;
        }

        std::map<int, AlgebraElement> subst = {{alpha, repl_alpha}, {beta, repl_beta}};
        Potential nw(q);
        for (const auto& [cycle, coeff] : w.element().terms()) {
            AlgebraElement expanded = substitute_in_cycle(cycle, coeff, subst, q, degree_bound);
            for (const auto& [p, k2] : expanded.terms())
                nw.add_cycle(p, k2);
        }

        report.removed_trivial_pairs.emplace_back(q.arrows()[alpha].id, q.arrows()[beta].id);
        report.substitutions.push_back(record_substitution(q.arrows()[alpha].id, repl_alpha));
        report.substitutions.push_back(record_substitution(q.arrows()[beta].id, repl_beta));

        std::vector<Arrow> arrows;
        for (std::size_t i = 0; i < q.num_arrows(); ++i)
            if (static_cast<int>(i) != alpha && static_cast<int>(i) != beta)
                arrows.push_back(q.arrows()[i]);
        Quiver nq(q.vertices(), arrows, q.frozen());
        Potential transported = transport_potential(nw, q, nq);
        std::set<std::string> ext = cur.external_arrows();
        cur = IceQP(std::move(nq), std::move(transported), std::move(ext));
    }

    return {std::move(cur), std::move(report)};
}

std::pair<IceQP, MutationReport> mutate(const IceQP& qp, const std::string& k, int degree_bound) {
    auto [pre, report] = premutate(qp, k, degree_bound);
    auto [red, report2] = reduce(pre, degree_bound);
    report.append(std::move(report2));
    return {std::move(red), std::move(report)};
}

} // namespace iceqp
