#include "iceqp/boundary.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace iceqp {

RewriteSystem boundary_system(const IceQP& qp, int degree, IdealVariant variant,
                              const std::vector<int>& weights) {
    std::vector<Relation> rels = frozen_relations(qp, variant);
    MonomialOrder order(qp.quiver(), weights);
    return complete(rels, order, degree);
}

namespace {

std::vector<int> profile_weights(const QpBuild& b) {
    try {
        return homogeneous_arrow_weights(b);
    } catch (const Error&) {
        return {};
    }
}

} // namespace

BoundaryProfile profile_from_system(const RewriteSystem& rs, const IceQP& qp, int degree,
                                    IdealVariant variant,
                                    const std::vector<std::vector<std::string>>& components) {
    const Quiver& q = qp.quiver();
    BoundaryProfile p;
    p.frozen = q.frozen();
    if (p.frozen.empty())
        throw Error(ErrorKind::validation, "boundary profile needs a nonempty frozen set");
    p.components = components.empty() ? std::vector<std::vector<std::string>>{p.frozen}
                                      : components;
    p.certificate_degree = degree;
    p.variant = variant;
    std::vector<int> fidx;
    for (const auto& f : p.frozen)
        fidx.push_back(q.vertex_index(f));
    for (std::size_t i = 0; i < fidx.size(); ++i) {
        auto from = graded_dimensions_from(rs, fidx[i], degree);
        for (std::size_t j = 0; j < fidx.size(); ++j)
            p.dims[{static_cast<int>(i), static_cast<int>(j)}] = from.at(fidx[j]);
    }
    return p;
}

BoundaryProfile boundary_profile(const IceQP& qp, int degree, IdealVariant variant,
                                 const std::vector<std::vector<std::string>>& components,
                                 const std::vector<int>& weights) {
    RewriteSystem rs = boundary_system(qp, degree, variant, weights);
    return profile_from_system(rs, qp, degree, variant, components);
}

BoundaryProfile boundary_profile(const QpBuild& b, int degree, IdealVariant variant) {
    return boundary_profile(b.qp, degree, variant, b.segment_components, profile_weights(b));
}

namespace {

std::vector<long long> truncated_dims(const std::vector<long long>& v, int n) {
    std::vector<long long> out(v.begin(), v.begin() + std::min<std::size_t>(v.size(), n + 1));
    out.resize(n + 1, 0);
    return out;
}

} // namespace

CompareVerdict compare_profiles(const BoundaryProfile& a, const BoundaryProfile& b) {
    CompareVerdict verdict;
    verdict.degree_used = std::min(a.certificate_degree, b.certificate_degree);
    if (a.frozen.size() != b.frozen.size()) {
        verdict.discrepancy = "frozen vertex counts differ";
        return verdict;
    }
    std::map<std::string, int> aidx, bidx;
    for (std::size_t i = 0; i < a.frozen.size(); ++i)
        aidx[a.frozen[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < b.frozen.size(); ++i)
        bidx[b.frozen[i]] = static_cast<int>(i);

    // candidate component assignments preserving sizes
    std::vector<int> perm(a.components.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::string first_discrepancy;

    auto check_map = [&](const std::vector<int>& vmap) -> bool {
        for (const auto& [key, av] : a.dims) {
            auto [i, j] = key;
            const auto& bv = b.dims.at({vmap[i], vmap[j]});
            auto ad = truncated_dims(av, verdict.degree_used);
            auto bd = truncated_dims(bv, verdict.degree_used);
            if (ad != bd) {
                if (first_discrepancy.empty()) {
                    for (int d = 0; d <= verdict.degree_used; ++d)
                        if (ad[d] != bd[d]) {
                            first_discrepancy = "(" + a.frozen[i] + "," + a.frozen[j] + "," +
                                                std::to_string(d) + "): " +
                                                std::to_string(ad[d]) + " vs " +
                                                std::to_string(bd[d]);
                            break;
                        }
                }
                return false;
            }
        }
        return true;
    };

    do {
        bool sizes_ok = true;
        for (std::size_t k = 0; k < a.components.size(); ++k)
            if (a.components.size() != b.components.size() ||
                a.components[k].size() != b.components[perm[k]].size()) {
                sizes_ok = false;
                break;
            }
        if (!sizes_ok)
            continue;
        // rotations per component, with optional global reversal
        std::vector<std::size_t> sizes;
        for (const auto& c : a.components)
            sizes.push_back(c.size());
        std::vector<std::size_t> rot(sizes.size(), 0);
        for (int reversed = 0; reversed < 2; ++reversed) {
            for (;;) {
                std::vector<int> vmap(a.frozen.size(), -1);
                bool ok = true;
                for (std::size_t k = 0; k < a.components.size() && ok; ++k) {
                    const auto& ac = a.components[k];
                    const auto& bc = b.components[perm[k]];
                    for (std::size_t m = 0; m < ac.size(); ++m) {
                        std::size_t target =
                            reversed ? (rot[k] + ac.size() - m) % ac.size()
                                     : (rot[k] + m) % ac.size();
                        auto ita = aidx.find(ac[m]);
                        auto itb = bidx.find(bc[target]);
                        if (ita == aidx.end() || itb == bidx.end()) {
                            ok = false;
                            break;
                        }
                        vmap[ita->second] = itb->second;
                    }
                }
                if (ok && std::find(vmap.begin(), vmap.end(), -1) == vmap.end() &&
                    check_map(vmap)) {
                    verdict.equal = true;
                    for (std::size_t i = 0; i < a.frozen.size(); ++i)
                        verdict.bijection.push_back({a.frozen[i], b.frozen[vmap[i]]});
                    return verdict;
                }
                // next rotation vector
                std::size_t k = 0;
                while (k < rot.size()) {
                    if (++rot[k] < sizes[k])
                        break;
                    rot[k] = 0;
                    ++k;
                }
                if (k == rot.size())
                    break;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    verdict.discrepancy = first_discrepancy.empty() ? "no structure-preserving bijection"
                                                    : first_discrepancy;
    return verdict;
}

namespace {

std::vector<std::pair<Rational, std::vector<std::string>>> element_to_ids(
    const AlgebraElement& x) {
    std::vector<std::pair<Rational, std::vector<std::string>>> out;
    const Quiver& q = x.quiver();
    for (const auto& [p, c] : x.terms()) {
        std::vector<std::string> word;
        for (std::int32_t a : p.arrows())
            word.push_back(q.arrows()[a].id);
        out.push_back({c, std::move(word)});
    }
    return out;
}

AlgebraElement ids_to_element(const std::vector<std::pair<Rational, std::vector<std::string>>>& terms,
                              const Quiver& q) {
    AlgebraElement x(q);
    for (const auto& [c, word] : terms) {
        std::vector<std::int32_t> arrows;
        for (const auto& id : word)
            arrows.push_back(q.arrow_index(id));
        x.add_term(Path::of_arrows(std::move(arrows), q), c);
    }
    return x;
}

/// Complement of the consecutive pair (first, second) inside the cyclic word:
/// the arrows strictly after the pair, wrapping around to just before it.
std::vector<std::string> cycle_complement(const std::vector<std::string>& word,
                                          const std::string& first, const std::string& second) {
    std::size_t n = word.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (word[i] == first && word[(i + 1) % n] == second) {
            std::vector<std::string> out;
            for (std::size_t k = 2; k < n; ++k)
                out.push_back(word[(i + k) % n]);
            return out;
        }
    }
    throw Error(ErrorKind::unsupported_configuration,
                "pair " + first + "," + second + " is not consecutive in its cycle");
}

} // namespace

IsoWitness flip_witness(const Triangulation& t, const std::string& arc, ExternalVariant variant) {
    FlipQuad fq = flip_quad(t, arc);
    Triangulation ft = flip(t, arc);
    std::string nid = ft.triangles[fq.tri_a][0];

    QpBuild dst = build_ice_qp_full(t, variant);
    QpBuild src = build_ice_qp_full(ft, variant);

    auto rot_of = [&](const Triangulation& tt, int tri, const std::string& k) {
        const auto& sides = tt.triangles[tri];
        return sides[0] == k ? 0 : sides[1] == k ? 1 : 2;
    };
    int at_a = rot_of(t, fq.tri_a, arc);
    int at_b = rot_of(t, fq.tri_b, arc);
    std::string v3 = dst.corner_arrow[fq.tri_a][at_a];
    std::string w2 = dst.corner_arrow[fq.tri_a][(at_a + 1) % 3];
    std::string u1 = dst.corner_arrow[fq.tri_a][(at_a + 2) % 3];
    std::string v1 = dst.corner_arrow[fq.tri_b][at_b];
    std::string w4 = dst.corner_arrow[fq.tri_b][(at_b + 1) % 3];
    std::string u3 = dst.corner_arrow[fq.tri_b][(at_b + 2) % 3];

    std::string q2a = src.corner_arrow[fq.tri_a][0]; // k' -> s1
    std::string x1 = src.corner_arrow[fq.tri_a][1];  // s1 -> s4
    std::string p4 = src.corner_arrow[fq.tri_a][2];  // s4 -> k'
    std::string q4a = src.corner_arrow[fq.tri_b][0]; // k' -> s3
    std::string x3 = src.corner_arrow[fq.tri_b][1];  // s3 -> s2
    std::string p2 = src.corner_arrow[fq.tri_b][2];  // s2 -> k'

    // complements of u.v inside the cycle at the diagonal ends
    auto cycle_at = [&](const std::string& point) {
        auto pit = dst.puncture_cycle.find(point);
        if (pit != dst.puncture_cycle.end())
            return pit->second;
        auto word = dst.boundary_chain.at(point);
        auto yit = dst.external_arrow.find(point);
        if (yit == dst.external_arrow.end())
            throw Error(ErrorKind::unsupported_configuration,
                        "no closing cycle at marked point " + point);
        word.push_back(yit->second);
        return word;
    };
    std::vector<std::string> comp1 = cycle_complement(cycle_at(fq.q1), u1, v1);
    std::vector<std::string> comp3 = cycle_complement(cycle_at(fq.q3), u3, v3);

    IsoWitness w;
    w.flipped_arc = nid;
    w.source_arc = arc;
    for (const auto& f : dst.qp.quiver().frozen())
        w.vertex_bijection.push_back({f, f});

    std::set<std::string> special = {q2a, x1, p4, q4a, x3, p2};
    for (const auto& a : src.qp.quiver().arrows())
        if (!special.count(a.id))
            w.generator_map.push_back({{a.id}, {a.id}});
    w.generator_map.push_back({{x1}, {u1, v1}});
    w.generator_map.push_back({{x3}, {u3, v3}});
    w.generator_map.push_back({{p2, q2a}, {w2}});
    w.generator_map.push_back({{p4, q4a}, {w4}});
    w.generator_map.push_back({{p2, q4a}, comp3});
    w.generator_map.push_back({{p4, q2a}, comp1});

    // the eight quadrilateral relations and the proof's labelling
    const Quiver& sq = src.qp.quiver();
    const Quiver& dq = dst.qp.quiver();
    auto spath = [&](const std::string& id) { return Path::of_arrow(sq.arrow_index(id)); };
    auto dpath = [&](const std::string& id) { return Path::of_arrow(dq.arrow_index(id)); };
    AlgebraElement d_q2 = cyclic_derivative(src.qp.potential(), q2a);
    AlgebraElement d_p2 = cyclic_derivative(src.qp.potential(), p2);
    AlgebraElement d_q4 = cyclic_derivative(src.qp.potential(), q4a);
    AlgebraElement d_p4 = cyclic_derivative(src.qp.potential(), p4);
    AlgebraElement a_u1 = cyclic_derivative(dst.qp.potential(), u1);
    AlgebraElement a_v1 = cyclic_derivative(dst.qp.potential(), v1);
    AlgebraElement a_u3 = cyclic_derivative(dst.qp.potential(), u3);
    AlgebraElement a_v3 = cyclic_derivative(dst.qp.potential(), v3);

    auto pair = [&](const std::string& sl, AlgebraElement srel, const std::string& dl,
                    AlgebraElement drel) {
        IsoWitness::RelPair rp;
        rp.src_label = sl;
        rp.dst_label = dl;
        rp.src_terms = element_to_ids(srel);
        rp.dst_terms = element_to_ids(drel);
        w.relation_pairs.push_back(std::move(rp));
    };
    pair("e", times_path(d_q2, spath(q4a), kUnbounded), "c",
         path_times(dpath(u1), a_u3, kUnbounded));
    pair("e'", times_path(d_q2, spath(q2a), kUnbounded), "a'",
         path_times(dpath(u1), a_u1, kUnbounded));
    pair("f", path_times(spath(p2), d_p4, kUnbounded), "d",
         times_path(a_v3, dpath(v1), kUnbounded));
    pair("f'", path_times(spath(p4), d_p4, kUnbounded), "b'",
         times_path(a_v1, dpath(v1), kUnbounded));
    pair("g", times_path(d_q4, spath(q2a), kUnbounded), "a",
         path_times(dpath(u3), a_u1, kUnbounded));
    pair("g'", times_path(d_q4, spath(q4a), kUnbounded), "c'",
         path_times(dpath(u3), a_u3, kUnbounded));
    pair("h", path_times(spath(p4), d_p2, kUnbounded), "b",
         times_path(a_v1, dpath(v3), kUnbounded));
    pair("h'", path_times(spath(p2), d_p2, kUnbounded), "d'",
         times_path(a_v3, dpath(v3), kUnbounded));
    return w;
}

Path apply_witness(const IsoWitness& w, const Quiver& src, const Quiver& dst, const Path& p) {
    // index the map by first arrow id
    std::map<std::string, const std::pair<std::vector<std::string>, std::vector<std::string>>*>
        singles;
    std::map<std::pair<std::string, std::string>,
             const std::pair<std::vector<std::string>, std::vector<std::string>>*>
        pairs;
    for (const auto& entry : w.generator_map) {
        if (entry.first.size() == 1)
            singles[entry.first[0]] = &entry;
        else if (entry.first.size() == 2)
            pairs[{entry.first[0], entry.first[1]}] = &entry;
    }
    std::vector<std::int32_t> out;
    const auto& arr = p.arrows();
    for (std::size_t i = 0; i < arr.size();) {
        const std::string& id = src.arrows()[arr[i]].id;
        auto sit = singles.find(id);
        if (sit != singles.end()) {
            for (const auto& did : sit->second->second)
                out.push_back(dst.arrow_index(did));
            ++i;
            continue;
        }
        if (i + 1 < arr.size()) {
            const std::string& id2 = src.arrows()[arr[i + 1]].id;
            auto pit = pairs.find({id, id2});
            if (pit != pairs.end()) {
                for (const auto& did : pit->second->second)
                    out.push_back(dst.arrow_index(did));
                i += 2;
                continue;
            }
        }
        throw Error(ErrorKind::unsupported_configuration,
                    "witness cannot map arrow " + id + " at position " + std::to_string(i));
    }
    if (out.empty()) {
        // all pieces collapsed; anchor at the image of the source vertex
        int sv = p.source(src);
        return Path::trivial(dst.vertex_index(src.vertices()[sv]));
    }
    return Path::of_arrows(std::move(out), dst);
}

namespace {

AlgebraElement apply_witness_element(const IsoWitness& w, const Quiver& src, const Quiver& dst,
                                     const AlgebraElement& x) {
    AlgebraElement out(dst);
    for (const auto& [p, c] : x.terms())
        out.add_term(apply_witness(w, src, dst, p), c);
    return out;
}

/// Sparse row space over normal-form words, Gaussian-style under the given
/// order. Rows are kept with distinct leading words.
struct RowSpace {
    const MonomialOrder& order;
    std::vector<AlgebraElement> rows; // each with a unique leading path

    const Path* lead(const AlgebraElement& x) const {
        const Path* best = nullptr;
        for (const auto& [p, c] : x.terms())
            if (!best || order.less(*best, p))
                best = &p;
        return best;
    }

    /// Reduces x against the rows; returns the residue.
    AlgebraElement residue(AlgebraElement x) const {
        for (;;) {
            const Path* l = lead(x);
            if (!l)
                return x;
            bool hit = false;
            for (const auto& row : rows) {
                const Path* rl = lead(row);
                if (*rl == *l) {
                    Rational factor = x.coeff(*l) / row.coeff(*rl);
                    x -= row.scaled(factor);
                    hit = true;
                    break;
                }
            }
            if (!hit)
                return x;
        }
    }

    bool insert(AlgebraElement x) {
        AlgebraElement r = residue(std::move(x));
        if (r.is_zero())
            return false;
        rows.push_back(std::move(r));
        return true;
    }
};

} // namespace

namespace {

WitnessVerdict verify_witness_weighted(const IsoWitness& w, const IceQP& src, const IceQP& dst,
                                       int degree, IdealVariant variant,
                                       const std::vector<int>& src_weights,
                                       const std::vector<int>& dst_weights) {
    WitnessVerdict verdict;
    verdict.degree = degree;
    const Quiver& sq = src.quiver();
    const Quiver& dq = dst.quiver();
    RewriteSystem drs = boundary_system(dst, degree, variant, dst_weights);
    RewriteSystem srs = boundary_system(src, degree, variant, src_weights);
    // ideal-membership checks are grading-independent; run them against a
    // unit-weight system so no image outgrows the certificate window
    RewriteSystem drs_unit = boundary_system(dst, degree, variant, {});

    // (i) the eight quadrilateral relations map into the ideal and onto their
    // counterparts
    try {
        for (const auto& rp : w.relation_pairs) {
            AlgebraElement srel = ids_to_element(rp.src_terms, sq);
            AlgebraElement drel = ids_to_element(rp.dst_terms, dq);
            AlgebraElement image = apply_witness_element(w, sq, dq, srel);
            if (!normal_form(image, drs_unit).is_zero()) {
                verdict.failure =
                    "(i) relation (" + rp.src_label + ") does not map into the ideal";
                return verdict;
            }
            if (!normal_form(image - drel, drs_unit).is_zero()) {
                verdict.failure = "(i) relation (" + rp.src_label + ") does not match (" +
                                  rp.dst_label + ")";
                return verdict;
            }
        }
        // and every source relation away from the new arc maps into the ideal
        int kv = -1;
        if (sq.has_vertex(w.flipped_arc))
            kv = sq.vertex_index(w.flipped_arc);
        for (const auto& rel : frozen_relations(src, variant)) {
            int a = sq.arrow_index(rel.source_arrow);
            if (kv >= 0 && (sq.src_of(a) == kv || sq.tgt_of(a) == kv))
                continue; // covered by the quadrilateral pairs
            AlgebraElement image = apply_witness_element(w, sq, dq, rel.element);
            if (!normal_form(image, drs_unit).is_zero()) {
                verdict.failure =
                    "(i) relation d/d(" + rel.source_arrow + ") does not map into ideal";
                return verdict;
            }
        }
    } catch (const Error& e) {
        verdict.failure = std::string("(i) generator map is ill-formed: ") + e.what();
        return verdict;
    }

    // (iii) graded dimensions agree under the frozen-identity bijection
    BoundaryProfile sp = profile_from_system(srs, src, degree, variant, {});
    BoundaryProfile dp = profile_from_system(drs, dst, degree, variant, {});
    if (sp.frozen != dp.frozen) {
        verdict.failure = "(iii) frozen sets differ";
        return verdict;
    }
    for (const auto& [key, sv] : sp.dims)
        if (sv != dp.dims.at(key)) {
            verdict.failure = "(iii) graded dimensions differ at (" + sp.frozen[key.first] + "," +
                              sp.frozen[key.second] + ")";
            return verdict;
        }

    // (ii) mapped generators generate the target boundary slice
    std::vector<int> dst_frozen, src_frozen;
    for (const auto& f : dq.frozen())
        dst_frozen.push_back(dq.vertex_index(f));
    for (const auto& f : sq.frozen())
        src_frozen.push_back(sq.vertex_index(f));
    auto is_frozen_target = [](const Quiver& q, const Path& p) {
        return q.is_frozen_index(p.target(q));
    };

    std::vector<AlgebraElement> generators;
    int seed_degree = std::min(degree, 8);
    try {
        for (int i : src_frozen)
            for (const Path& word : irreducible_words_from(srs, i, seed_degree)) {
                if (word.is_trivial() || !is_frozen_target(sq, word))
                    continue;
                Path img = apply_witness(w, sq, dq, word);
                AlgebraElement nf =
                    normal_form(AlgebraElement::of_path(dq, img), drs).truncated_to(degree);
                if (!nf.is_zero())
                    generators.push_back(std::move(nf));
            }
    } catch (const Error& e) {
        verdict.failure = std::string("(ii) generator map is ill-formed: ") + e.what();
        return verdict;
    }

    RowSpace space{drs.order(), {}};
    std::vector<AlgebraElement> worklist;
    for (int i : dst_frozen) {
        AlgebraElement e = AlgebraElement::of_path(dq, Path::trivial(i));
        space.insert(e);
        worklist.push_back(std::move(e));
    }
    while (!worklist.empty()) {
        AlgebraElement el = std::move(worklist.back());
        worklist.pop_back();
        for (const auto& g : generators) {
            AlgebraElement prod = normal_form(multiply(el, g, degree), drs).truncated_to(degree);
            if (prod.is_zero())
                continue;
            AlgebraElement res = space.residue(prod);
            if (!res.is_zero()) {
                space.rows.push_back(res);
                worklist.push_back(res);
            }
        }
    }
    for (int i : dst_frozen)
        for (const Path& word : irreducible_words_from(drs, i, degree)) {
            if (!is_frozen_target(dq, word))
                continue;
            AlgebraElement probe = AlgebraElement::of_path(dq, word);
            if (!space.residue(probe).is_zero()) {
                verdict.failure = "(ii) normal-form word " + word.str(dq) +
                                  " is not generated by the mapped generators";
                return verdict;
            }
        }

    verdict.pass = true;
    return verdict;
}

} // namespace

WitnessVerdict verify_witness(const IsoWitness& w, const QpBuild& src, const QpBuild& dst,
                              int degree, IdealVariant variant) {
    return verify_witness_weighted(w, src.qp, dst.qp, degree, variant, profile_weights(src),
                                   profile_weights(dst));
}

WitnessVerdict verify_witness(const IsoWitness& w, const IceQP& src, const IceQP& dst, int degree,
                              IdealVariant variant) {
    return verify_witness_weighted(w, src, dst, degree, variant, {}, {});
}

IsoWitness corrupt_witness(IsoWitness w) {
    // swap the images of the two u.v generators
    std::vector<std::size_t> two_to_long;
    for (std::size_t i = 0; i < w.generator_map.size(); ++i)
        if (w.generator_map[i].first.size() == 1 && w.generator_map[i].second.size() == 2)
            two_to_long.push_back(i);
    if (two_to_long.size() >= 2)
        std::swap(w.generator_map[two_to_long[0]].second,
                  w.generator_map[two_to_long[1]].second);
    return w;
}

PolygonOracle polygon_oracle_presentation(int n, int p) {
    if (n < 1)
        throw Error(ErrorKind::out_of_range, "polygon oracle needs n >= 1");
    if (p < 0 || p > 2)
        throw Error(ErrorKind::out_of_range,
                    "polygon oracle implemented for p in {0,1,2}, got " + std::to_string(p));
    int m = n + 3;
    auto v_id = [&](int i) { return "v" + std::to_string((i - 1 + 10 * m) % m + 1); };
    std::vector<std::string> vertices;
    for (int i = 1; i <= m; ++i)
        vertices.push_back(v_id(i));
    std::vector<Arrow> arrows;
    for (int i = 1; i <= m; ++i)
        arrows.push_back({"y" + std::to_string(i), v_id(i), v_id(i + 1)});
    for (int i = 1; i <= m; ++i)
        arrows.push_back({"x" + std::to_string(i), v_id(i + 1), v_id(i)});

    PolygonOracle oracle;
    oracle.quiver = Quiver(vertices, arrows, vertices);
    const Quiver& q = oracle.quiver;
    // The singularity grading: y has degree 2 and x the degree that makes the
    // defining relation homogeneous (x^2 = y^{n+1} forces deg x = n+1, while
    // x^2 = x y^{n+2} forces deg x = 2(n+2)). It matches the homogeneous
    // grading of the surface-side quivers. No positive grading exists for
    // p = 2, where the oracle profile is left in unit weights.
    std::vector<int> weights(q.num_arrows(), 2);
    int xw = p == 0 ? n + 1 : p == 1 ? 2 * (n + 2) : 1;
    if (p == 2)
        weights.assign(q.num_arrows(), 1);
    for (int i = 1; i <= m; ++i)
        weights[q.arrow_index("x" + std::to_string(i))] = xw;
    oracle.order = MonomialOrder(q, weights);

    auto x = [&](int i) { return q.arrow_index("x" + std::to_string((i - 1 + 10 * m) % m + 1)); };
    auto y = [&](int i) { return q.arrow_index("y" + std::to_string((i - 1 + 10 * m) % m + 1)); };
    for (int i = 1; i <= m; ++i) {
        // x_i y_i - y_{i+1} x_{i+1}
        AlgebraElement rel(q);
        rel.add_term(Path::of_arrows({x(i), y(i)}, q), Rational(1));
        rel.add_term(Path::of_arrows({y(i + 1), x(i + 1)}, q), Rational(-1));
        oracle.relations.push_back({rel, "comm" + std::to_string(i)});
    }
    for (int i = 1; i <= m; ++i) {
        // x_i x_{i-1} - prod_{k=1}^{p} x_{i+1-k} . prod_{k=1}^{n+p+1} y_{i-p+k}
        AlgebraElement rel(q);
        rel.add_term(Path::of_arrows({x(i), x(i - 1)}, q), Rational(1));
        std::vector<std::int32_t> word;
        for (int k = 1; k <= p; ++k)
            word.push_back(x(i + 1 - k));
        for (int k = 1; k <= n + p + 1; ++k)
            word.push_back(y(i - p + k));
        rel.add_term(Path::of_arrows(std::move(word), q), Rational(-1));
        oracle.relations.push_back({rel, "prod" + std::to_string(i)});
    }
    return oracle;
}

BoundaryProfile polygon_oracle(int n, int p, int degree) {
    PolygonOracle oracle = polygon_oracle_presentation(n, p);
    const Quiver& q = oracle.quiver;
    RewriteSystem rs = complete(oracle.relations, oracle.order, degree);
    BoundaryProfile prof;
    prof.frozen = q.vertices();
    prof.components = {q.vertices()};
    prof.certificate_degree = degree;
    prof.variant = IdealVariant::exclude_y_only;
    for (std::size_t i = 0; i < q.num_vertices(); ++i) {
        auto from = graded_dimensions_from(rs, static_cast<int>(i), degree);
        for (std::size_t j = 0; j < q.num_vertices(); ++j)
            prof.dims[{static_cast<int>(i), static_cast<int>(j)}] = from.at(static_cast<int>(j));
    }
    return prof;
}

OrbitCheckReport orbit_check(const Triangulation& t, int degree, std::size_t max_size,
                             IdealVariant variant) {
    OrbitCheckReport report;
    FlipOrbit orbit = flip_orbit(t, max_size);
    report.orbit_size = static_cast<int>(orbit.elements.size());
    report.overflowed = orbit.overflowed;
    if (orbit.overflowed) {
        report.first_failure = "orbit exceeded max size";
        return report;
    }
    std::vector<std::unique_ptr<QpBuild>> builds;
    std::vector<BoundaryProfile> profiles;
    for (const auto& tri : orbit.elements) {
        builds.push_back(std::make_unique<QpBuild>(build_ice_qp_full(tri)));
        profiles.push_back(boundary_profile(*builds.back(), degree, variant));
    }
    report.all_profiles_equal = true;
    for (std::size_t i = 0; i < profiles.size(); ++i)
        for (std::size_t j = i + 1; j < profiles.size(); ++j) {
            ++report.profile_pairs;
            CompareVerdict v = compare_profiles(profiles[i], profiles[j]);
            if (!v.equal) {
                report.all_profiles_equal = false;
                if (report.first_failure.empty())
                    report.first_failure = "profiles " + std::to_string(i) + "," +
                                           std::to_string(j) + " differ: " + v.discrepancy;
            }
        }
    report.all_witnesses_pass = true;
    for (const auto& [from, arc, to] : orbit.flip_edges) {
        (void)to;
        ++report.witnesses;
        IsoWitness w = flip_witness(orbit.elements[from], arc);
        QpBuild src = build_ice_qp_full(flip(orbit.elements[from], arc));
        WitnessVerdict v = verify_witness(w, src, *builds[from], degree, variant);
        if (!v.pass) {
            report.all_witnesses_pass = false;
            if (report.first_failure.empty())
                report.first_failure = "witness at triangulation " + std::to_string(from) +
                                       " arc " + arc + ": " + v.failure;
        }
    }
    return report;
}

std::string profile_to_json(const BoundaryProfile& p) {
    nlohmann::json j;
    j["frozen"] = p.frozen;
    j["components"] = p.components;
    j["certificate_degree"] = p.certificate_degree;
    j["variant"] = to_string(p.variant);
    nlohmann::json dims = nlohmann::json::object();
    for (const auto& [key, v] : p.dims)
        dims[p.frozen[key.first] + "|" + p.frozen[key.second]] = v;
    j["dims"] = dims;
    return j.dump(2);
}

BoundaryProfile profile_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::parse, std::string("profile json: ") + e.what());
    }
    BoundaryProfile p;
    p.frozen = j.at("frozen").get<std::vector<std::string>>();
    p.components = j.at("components").get<std::vector<std::vector<std::string>>>();
    p.certificate_degree = j.at("certificate_degree").get<int>();
    p.variant = ideal_variant_from_string(j.at("variant").get<std::string>());
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < p.frozen.size(); ++i)
        idx[p.frozen[i]] = static_cast<int>(i);
    for (const auto& [key, v] : j.at("dims").items()) {
        auto bar = key.find('|');
        p.dims[{idx.at(key.substr(0, bar)), idx.at(key.substr(bar + 1))}] =
            v.get<std::vector<long long>>();
    }
    return p;
}

} // namespace iceqp
