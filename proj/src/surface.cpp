#include "iceqp/surface.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include <json.hpp>

namespace iceqp {

int SurfaceSignature::total_boundary_marked() const {
    int c = 0;
    for (int k : boundary_marked)
        c += k;
    return c;
}

void SurfaceSignature::validate() const {
    if (genus < 0 || punctures < 0)
        throw Error(ErrorKind::degenerate_surface, "negative genus or puncture count");
    for (int k : boundary_marked)
        if (k < 1)
            throw Error(ErrorKind::degenerate_surface,
                        "every boundary component needs a marked point");
    if (boundary_marked.empty())
        throw Error(ErrorKind::degenerate_surface, "at least one boundary component required");
    int b = static_cast<int>(boundary_marked.size());
    int c = total_boundary_marked();
    int n = 6 * genus + 3 * b + 3 * punctures + c - 6;
    if (genus == 0 && b == 1) {
        if (c == 1 && punctures <= 1)
            throw Error(ErrorKind::degenerate_surface, "monogon with at most one puncture");
        if ((c == 2 || c == 3) && punctures == 0)
            throw Error(ErrorKind::degenerate_surface, "unpunctured digon or triangle");
    }
    if (n <= 0)
        throw Error(ErrorKind::degenerate_surface,
                    "arc count 6g+3b+3p+c-6 = " + std::to_string(n) + " is not positive");
}

int arc_count(const SurfaceSignature& sig) {
    sig.validate();
    int b = static_cast<int>(sig.boundary_marked.size());
    return 6 * sig.genus + 3 * b + 3 * sig.punctures + sig.total_boundary_marked() - 6;
}

const TriEdge& Triangulation::edge(const std::string& id) const {
    for (const auto& e : edges)
        if (e.id == id)
            return e;
    throw Error(ErrorKind::not_an_arc, "unknown edge: " + id);
}

bool Triangulation::has_edge(const std::string& id) const {
    return std::any_of(edges.begin(), edges.end(), [&](const TriEdge& e) { return e.id == id; });
}

std::vector<std::string> Triangulation::arc_ids() const {
    std::vector<std::string> out;
    for (const auto& e : edges)
        if (!e.is_boundary)
            out.push_back(e.id);
    return out;
}

std::vector<std::string> Triangulation::boundary_ids() const {
    std::vector<std::string> out;
    for (const auto& e : edges)
        if (e.is_boundary)
            out.push_back(e.id);
    return out;
}

namespace {

/// Boundary segment layout of one component: segment j runs from point j to
/// point j+1; component segments must appear in the edge list in this cyclic
/// order.
struct BoundaryLayout {
    // per component: ordered segment ids, seg[j] = (p_j, p_{j+1})
    std::vector<std::vector<std::string>> segments;
    // point -> (before segment, after segment)
    std::map<std::string, std::pair<std::string, std::string>> segs_at;
};

BoundaryLayout boundary_layout(const Triangulation& t) {
    BoundaryLayout out;
    std::vector<const TriEdge*> bedges;
    for (const auto& e : t.edges)
        if (e.is_boundary)
            bedges.push_back(&e);
    std::size_t cursor = 0;
    for (std::size_t comp = 0; comp < t.boundary_points.size(); ++comp) {
        const auto& pts = t.boundary_points[comp];
        std::vector<std::string> segs;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (cursor >= bedges.size())
                throw Error(ErrorKind::validation, "missing boundary segments");
            const TriEdge* e = bedges[cursor++];
            const std::string& a = pts[j];
            const std::string& b = pts[(j + 1) % pts.size()];
            bool ok = (e->ends[0] == a && e->ends[1] == b) || (e->ends[0] == b && e->ends[1] == a);
            if (!ok)
                throw Error(ErrorKind::validation,
                            "boundary segment " + e->id + " does not join " + a + "," + b);
            segs.push_back(e->id);
        }
        for (std::size_t j = 0; j < pts.size(); ++j) {
            std::size_t before = (j + pts.size() - 1) % pts.size();
            out.segs_at[pts[j]] = {segs[before], segs[j]};
        }
        out.segments.push_back(std::move(segs));
    }
    if (cursor != bedges.size())
        throw Error(ErrorKind::validation, "extra boundary segments beyond components");
    return out;
}

} // namespace

std::array<std::string, 3> solve_triangle_corners(const Triangulation& t, int triangle) {
    const auto& tri = t.triangles[triangle];
    const TriEdge& e1 = t.edge(tri[0]);
    const TriEdge& e2 = t.edge(tri[1]);
    const TriEdge& e3 = t.edge(tri[2]);
    auto multiset_eq = [](const std::string& a, const std::string& b,
                          const std::array<std::string, 2>& ends) {
        return (ends[0] == a && ends[1] == b) || (ends[0] == b && ends[1] == a);
    };
    std::set<std::array<std::string, 3>> solutions;
    // corners: c12 between e1,e2; c23 between e2,e3; c31 between e3,e1.
    // side j runs between its two flanking corners.
    for (int pick = 0; pick < 2; ++pick) {
        std::string c12 = e2.ends[pick];
        std::string c23 = e2.ends[1 - pick];
        for (int pick3 = 0; pick3 < 2; ++pick3) {
            if (e3.ends[pick3] != c23)
                continue;
            std::string c31 = e3.ends[1 - pick3];
            if (!multiset_eq(c31, c12, e1.ends))
                continue;
            solutions.insert({c12, c23, c31});
        }
    }
    if (solutions.empty())
        throw Error(ErrorKind::validation,
                    "triangle " + std::to_string(triangle + 1) + " has no consistent corners");
    if (solutions.size() > 1)
        throw Error(ErrorKind::unsupported_configuration,
                    "triangle " + std::to_string(triangle + 1) + " has ambiguous corners");
    return *solutions.begin();
}

std::vector<TriDiagnostic> validate_triangulation(const Triangulation& t) {
    std::vector<TriDiagnostic> out;
    try {
        t.signature.validate();
    } catch (const Error& e) {
        out.push_back({"signature", e.what()});
        return out;
    }
    std::set<std::string> points;
    for (const auto& comp : t.boundary_points)
        for (const auto& p : comp)
            if (!points.insert(p).second)
                out.push_back({p, "duplicate marked point"});
    for (const auto& p : t.punctures)
        if (!points.insert(p).second)
            out.push_back({p, "duplicate puncture"});
    if (static_cast<int>(t.punctures.size()) != t.signature.punctures)
        out.push_back({"punctures", "puncture list does not match signature"});
    if (t.boundary_points.size() != t.signature.boundary_marked.size())
        out.push_back({"boundary", "component count does not match signature"});
    else
        for (std::size_t k = 0; k < t.boundary_points.size(); ++k)
            if (static_cast<int>(t.boundary_points[k].size()) != t.signature.boundary_marked[k])
                out.push_back({"boundary", "component " + std::to_string(k + 1) +
                                               " marked count does not match signature"});

    std::set<std::string> eids;
    int arcs = 0, bnd = 0;
    for (const auto& e : t.edges) {
        if (!eids.insert(e.id).second)
            out.push_back({e.id, "duplicate edge id"});
        if (!points.count(e.ends[0]) || !points.count(e.ends[1]))
            out.push_back({e.id, "edge endpoint is not a marked point"});
        (e.is_boundary ? bnd : arcs)++;
    }
    int expected_arcs = 0;
    try {
        expected_arcs = arc_count(t.signature);
    } catch (const Error&) {
        expected_arcs = -1;
    }
    if (arcs != expected_arcs)
        out.push_back({"edges", "arc count " + std::to_string(arcs) + " != expected " +
                                    std::to_string(expected_arcs)});
    if (bnd != t.signature.total_boundary_marked())
        out.push_back({"edges", "boundary segment count does not match marked points"});

    if ((2 * arcs + bnd) % 3 != 0 ||
        static_cast<int>(t.triangles.size()) != (2 * arcs + bnd) / 3)
        out.push_back({"triangles", "triangle count != (2*arcs + boundary)/3"});

    std::map<std::string, int> slots;
    for (const auto& tri : t.triangles)
        for (const auto& s : tri) {
            if (!eids.count(s)) {
                out.push_back({s, "triangle side is not a declared edge"});
                continue;
            }
            slots[s]++;
        }
    for (const auto& e : t.edges) {
        int want = e.is_boundary ? 1 : 2;
        int got = slots.count(e.id) ? slots[e.id] : 0;
        if (got != want)
            out.push_back({e.id, "edge fills " + std::to_string(got) + " slots, expected " +
                                     std::to_string(want)});
    }

    try {
        boundary_layout(t);
    } catch (const Error& e) {
        out.push_back({"boundary", e.what()});
    }
    if (out.empty()) {
        for (std::size_t i = 0; i < t.triangles.size(); ++i) {
            try {
                solve_triangle_corners(t, static_cast<int>(i));
            } catch (const Error& e) {
                out.push_back({"triangle " + std::to_string(i + 1), e.what()});
            }
        }
    }
    return out;
}

ExternalVariant external_variant_from_string(const std::string& s) {
    if (s == "all-external")
        return ExternalVariant::all_external;
    if (s == "incident-only")
        return ExternalVariant::incident_only;
    throw Error(ErrorKind::parse, "unknown external-arrow variant: " + s);
}

namespace {

std::string point_suffix(const std::string& label) {
    if (!label.empty() && label[0] == 'P')
        return label.substr(1);
    return "_" + label;
}

struct SlotTable {
    // edge id -> list of (triangle, position)
    std::map<std::string, std::vector<std::pair<int, int>>> slots;
};

SlotTable slot_table(const Triangulation& t) {
    SlotTable st;
    for (std::size_t i = 0; i < t.triangles.size(); ++i)
        for (int c = 0; c < 3; ++c)
            st.slots[t.triangles[i][c]].push_back({static_cast<int>(i), c});
    return st;
}

} // namespace

QpBuild build_ice_qp_full(const Triangulation& t, ExternalVariant variant) {
    auto diags = validate_triangulation(t);
    if (!diags.empty())
        throw Error(ErrorKind::validation,
                    "invalid triangulation: " + diags.front().location + ": " +
                        diags.front().message);
    for (const auto& tri : t.triangles)
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw Error(ErrorKind::unsupported_configuration,
                        "self-folded triangle (repeated side) is not supported");
    for (const auto& e : t.edges)
        if (!e.is_boundary && e.ends[0] == e.ends[1])
            for (const auto& p : t.punctures)
                if (e.ends[0] == p)
                    throw Error(ErrorKind::unsupported_configuration,
                                "loop arc at a puncture is not supported");

    QpBuild out;
    BoundaryLayout layout = boundary_layout(t);
    out.segs_at = layout.segs_at;
    out.segment_components = layout.segments;
    SlotTable st = slot_table(t);

    // corners and their arrows
    std::vector<std::string> vertices;
    for (const auto& e : t.edges)
        vertices.push_back(e.id);
    std::vector<std::string> frozen;
    for (const auto& e : t.edges)
        if (e.is_boundary)
            frozen.push_back(e.id);

    std::vector<Arrow> arrows;
    out.corners.resize(t.triangles.size());
    out.corner_arrow.resize(t.triangles.size());
    std::map<std::string, std::vector<std::pair<int, int>>> corners_at;
    for (std::size_t i = 0; i < t.triangles.size(); ++i) {
        auto pts = solve_triangle_corners(t, static_cast<int>(i));
        for (int c = 0; c < 3; ++c) {
            Corner corner;
            corner.triangle = static_cast<int>(i);
            corner.corner = c;
            corner.point = pts[c];
            corner.in_side = t.triangles[i][c];
            corner.out_side = t.triangles[i][(c + 1) % 3];
            std::string id = "t" + std::to_string(i + 1) + "_" + std::to_string(c + 1);
            arrows.push_back({id, corner.in_side, corner.out_side});
            out.corners[i][c] = corner;
            out.corner_arrow[i][c] = id;
            corners_at[corner.point].push_back({static_cast<int>(i), c});
        }
    }

    // external arrows
    std::set<std::string> arc_endpoints;
    for (const auto& e : t.edges)
        if (!e.is_boundary) {
            arc_endpoints.insert(e.ends[0]);
            arc_endpoints.insert(e.ends[1]);
        }
    std::set<std::string> external;
    for (const auto& comp : t.boundary_points)
        for (const auto& p : comp) {
            if (variant == ExternalVariant::incident_only && !arc_endpoints.count(p))
                continue;
            std::string id = "Y" + point_suffix(p);
            arrows.push_back({id, layout.segs_at[p].first, layout.segs_at[p].second});
            out.external_arrow[p] = id;
            external.insert(id);
        }

    Quiver quiver(vertices, arrows, frozen);

    // walk helper: next corner after (i,c) around its out-side edge
    auto next_corner = [&](int i, int c) -> std::pair<int, int> {
        const Corner& cur = out.corners[i][c];
        const std::string& y = cur.out_side;
        const auto& sl = st.slots.at(y);
        // the out-side occupies slot (i, c+1); continue at the other slot
        std::pair<int, int> here{i, (c + 1) % 3};
        for (const auto& s : sl)
            if (s != here)
                return s; // corner with in_side == y is (tri, pos) itself
        throw Error(ErrorKind::unsupported_configuration, "no continuation across " + y);
    };

    // puncture cycles
    for (const auto& p : t.punctures) {
        auto it = corners_at.find(p);
        if (it == corners_at.end() || it->second.empty())
            throw Error(ErrorKind::unsupported_configuration,
                        "puncture " + p + " has no incident corner");
        std::set<std::pair<int, int>> remaining(it->second.begin(), it->second.end());
        auto start = *remaining.begin();
        std::vector<std::string> cycle;
        auto cur = start;
        do {
            if (!remaining.erase(cur))
                throw Error(ErrorKind::unsupported_configuration,
                            "corner chain at puncture " + p + " does not close simply");
            cycle.push_back(out.corner_arrow[cur.first][cur.second]);
            cur = next_corner(cur.first, cur.second);
            if (out.corners[cur.first][cur.second].point != p)
                throw Error(ErrorKind::unsupported_configuration,
                            "corner chain leaves puncture " + p);
        } while (cur != start);
        if (!remaining.empty())
            throw Error(ErrorKind::unsupported_configuration,
                        "multiple corner cycles around puncture " + p);
        out.puncture_cycle[p] = std::move(cycle);
    }

    // boundary chains: from the segment after p to the segment before p
    for (const auto& comp : t.boundary_points)
        for (const auto& p : comp) {
            const auto& [before, after] = layout.segs_at[p];
            const auto& sl = st.slots.at(after);
            std::pair<int, int> cur = sl.front(); // the unique slot; in_side == after
            if (out.corners[cur.first][cur.second].point != p)
                throw Error(ErrorKind::unsupported_configuration,
                            "chain start at " + p + " is misoriented");
            std::vector<std::string> chain;
            std::set<std::pair<int, int>> seen;
            for (;;) {
                if (!seen.insert(cur).second)
                    throw Error(ErrorKind::unsupported_configuration,
                                "corner chain at " + p + " loops");
                chain.push_back(out.corner_arrow[cur.first][cur.second]);
                const Corner& corner = out.corners[cur.first][cur.second];
                if (corner.out_side == before)
                    break;
                if (t.edge(corner.out_side).is_boundary)
                    throw Error(ErrorKind::unsupported_configuration,
                                "corner chain at " + p + " hits a foreign boundary edge");
                cur = next_corner(cur.first, cur.second);
                if (out.corners[cur.first][cur.second].point != p)
                    throw Error(ErrorKind::unsupported_configuration,
                                "corner chain leaves point " + p);
            }
            std::size_t at_p = corners_at.count(p) ? corners_at[p].size() : 0;
            if (seen.size() != at_p)
                throw Error(ErrorKind::unsupported_configuration,
                            "corner chain at " + p + " misses corners");
            out.boundary_chain[p] = std::move(chain);
        }

    // potential: triangle cycles - puncture cycles - big cycles
    Potential w(quiver);
    auto cycle_path = [&](const std::vector<std::string>& ids) {
        std::vector<std::int32_t> arr;
        for (const auto& id : ids)
            arr.push_back(quiver.arrow_index(id));
        return Path::of_arrows(std::move(arr), quiver);
    };
    for (std::size_t i = 0; i < t.triangles.size(); ++i)
        w.add_cycle(cycle_path({out.corner_arrow[i][0], out.corner_arrow[i][1],
                                out.corner_arrow[i][2]}),
                    Rational(1));
    for (const auto& [p, cyc] : out.puncture_cycle)
        w.add_cycle(cycle_path(cyc), Rational(-1));
    for (const auto& [p, y] : out.external_arrow) {
        std::vector<std::string> big = out.boundary_chain.at(p);
        big.push_back(y);
        w.add_cycle(cycle_path(big), Rational(-1));
    }

    out.qp = IceQP(std::move(quiver), std::move(w), std::move(external));
    return out;
}

IceQP build_ice_qp(const Triangulation& t, ExternalVariant variant) {
    return build_ice_qp_full(t, variant).qp;
}

std::vector<int> homogeneous_arrow_weights(const QpBuild& b) {
    const Quiver& q = b.qp.quiver();
    const int h = 2;
    int n_y = static_cast<int>(b.external_arrow.size());
    int cycles = n_y + static_cast<int>(b.puncture_cycle.size());
    int faces = static_cast<int>(b.corner_arrow.size());
    int denom = cycles - faces;
    if (denom <= 0 || (n_y * h) % denom != 0)
        throw Error(ErrorKind::unsupported_configuration,
                    "no homogeneous grading for this surface");
    int total = n_y * h / denom;

    // unknowns: internal (corner) arrows; externals are fixed at h
    std::vector<int> internal; // arrow indices
    std::map<int, int> col;
    for (std::size_t i = 0; i < q.num_arrows(); ++i) {
        const std::string& id = q.arrows()[i].id;
        if (!b.qp.is_external(id)) {
            col[static_cast<int>(i)] = static_cast<int>(internal.size());
            internal.push_back(static_cast<int>(i));
        }
    }
    // rows: [coefficients | rhs]
    std::vector<std::vector<Rational>> rows;
    auto add_row = [&](const std::vector<std::string>& ids, int rhs) {
        std::vector<Rational> row(internal.size() + 1, Rational(0));
        for (const auto& id : ids)
            row[col.at(q.arrow_index(id))] += Rational(1);
        row.back() = Rational(rhs);
        rows.push_back(std::move(row));
    };
    for (const auto& tri : b.corner_arrow)
        add_row({tri[0], tri[1], tri[2]}, total);
    for (const auto& [p, y] : b.external_arrow) {
        (void)y;
        add_row(b.boundary_chain.at(p), total - h);
    }
    for (const auto& [p, cyc] : b.puncture_cycle)
        add_row(cyc, total);

    // Gaussian elimination to reduced row echelon form
    std::size_t ncols = internal.size();
    std::size_t r = 0;
    std::vector<int> pivot_of(ncols, -1);
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c].is_zero())
            ++sel;
        if (sel == rows.size())
            continue;
        std::swap(rows[r], rows[sel]);
        Rational inv = rows[r][c].inverse();
        for (auto& x : rows[r])
            x *= inv;
        for (std::size_t rr = 0; rr < rows.size(); ++rr) {
            if (rr == r || rows[rr][c].is_zero())
                continue;
            Rational f = rows[rr][c];
            for (std::size_t cc = 0; cc <= ncols; ++cc)
                rows[rr][cc] -= rows[r][cc] * f;
        }
        pivot_of[c] = static_cast<int>(r);
        ++r;
    }
    for (std::size_t rr = r; rr < rows.size(); ++rr)
        if (!rows[rr].back().is_zero())
            throw Error(ErrorKind::unsupported_configuration,
                        "homogeneous grading system is inconsistent");

    // particular solution with the free variables at zero
    std::vector<Rational> x0(ncols, Rational(0));
    for (std::size_t c = 0; c < ncols; ++c)
        if (pivot_of[c] >= 0)
            x0[c] = rows[pivot_of[c]].back();
    std::int64_t scale = 1;
    for (const Rational& v : x0)
        scale = std::lcm(scale, v.den());
    if (scale != 1)
        throw Error(ErrorKind::unsupported_configuration,
                    "homogeneous grading is not integral at scale 2");

    // The remaining freedom is a potential shift g on the triangulation's
    // edges (constant across each external arrow). Positivity of
    // x0 + g(tgt) - g(src) is a difference-constraint system; solve it by
    // Bellman-Ford over the vertex set.
    std::size_t nv = q.num_vertices();
    struct CEdge {
        int from, to;
        long long cost;
    };
    std::vector<CEdge> cedges;
    for (std::size_t c = 0; c < ncols; ++c) {
        int a = internal[c];
        cedges.push_back({q.tgt_of(a), q.src_of(a), x0[c].num() - 1});
    }
    for (std::size_t i = 0; i < q.num_arrows(); ++i) {
        int a = static_cast<int>(i);
        if (!b.qp.is_external(q.arrows()[i].id))
            continue;
        cedges.push_back({q.tgt_of(a), q.src_of(a), 0});
        cedges.push_back({q.src_of(a), q.tgt_of(a), 0});
    }
    std::vector<long long> g(nv, 0);
    for (std::size_t pass = 0; pass <= nv; ++pass) {
        bool changed = false;
        for (const CEdge& e : cedges)
            if (g[e.from] + e.cost < g[e.to]) {
                g[e.to] = g[e.from] + e.cost;
                changed = true;
            }
        if (!changed)
            break;
        if (pass == nv)
            throw Error(ErrorKind::unsupported_configuration,
                        "no positive homogeneous grading exists");
    }

    std::vector<int> weights(q.num_arrows(), h);
    for (std::size_t c = 0; c < ncols; ++c) {
        int a = internal[c];
        long long w = x0[c].num() + g[q.tgt_of(a)] - g[q.src_of(a)];
        if (w < 1)
            throw Error(ErrorKind::unsupported_configuration,
                        "no positive homogeneous grading exists");
        weights[a] = static_cast<int>(w);
    }
    return weights;
}

FlipQuad flip_quad(const Triangulation& t, const std::string& arc) {
    const TriEdge& e = t.edge(arc);
    if (e.is_boundary)
        throw Error(ErrorKind::not_an_arc, arc + " is a boundary segment");
    SlotTable st = slot_table(t);
    const auto& sl = st.slots.at(arc);
    if (sl.size() != 2 || sl[0].first == sl[1].first)
        throw Error(ErrorKind::not_flippable, arc + " does not separate two distinct triangles");
    FlipQuad q;
    q.tri_a = sl[0].first;
    q.tri_b = sl[1].first;
    auto rotated = [&](int tri) {
        const auto& sides = t.triangles[tri];
        int at = sides[0] == arc ? 0 : sides[1] == arc ? 1 : 2;
        return std::array<std::string, 3>{sides[at], sides[(at + 1) % 3], sides[(at + 2) % 3]};
    };
    auto a = rotated(q.tri_a); // [k, s2, s1]
    auto b = rotated(q.tri_b); // [k, s4, s3]
    q.s2 = a[1];
    q.s1 = a[2];
    q.s4 = b[1];
    q.s3 = b[2];
    std::set<std::string> sides = {q.s1, q.s2, q.s3, q.s4};
    if (sides.size() != 4 || sides.count(arc))
        throw Error(ErrorKind::not_flippable,
                    "quadrilateral of " + arc + " does not have four distinct sides");
    auto ca = solve_triangle_corners(t, q.tri_a);
    auto cb = solve_triangle_corners(t, q.tri_b);
    // rotate corner arrays in step with the side rotation
    auto rot_corners = [&](int tri, const std::array<std::string, 3>& pts) {
        const auto& sides3 = t.triangles[tri];
        int at = sides3[0] == arc ? 0 : sides3[1] == arc ? 1 : 2;
        // pts[c] sits between side c and side c+1
        return std::array<std::string, 3>{pts[at % 3], pts[(at + 1) % 3], pts[(at + 2) % 3]};
    };
    auto pa = rot_corners(q.tri_a, ca); // corners of [k,s2,s1]: (k,s2), (s2,s1), (s1,k)
    auto pb = rot_corners(q.tri_b, cb); // corners of [k,s4,s3]: (k,s4), (s4,s3), (s3,k)
    // Q1 = corner (s1,k) in A = corner (k,s4) in B; Q3 = corner (k,s2) in A = (s3,k) in B
    if (pa[2] != pb[0] || pa[0] != pb[2])
        throw Error(ErrorKind::not_flippable, "incoherent quadrilateral around " + arc);
    q.q1 = pa[2];
    q.q3 = pa[0];
    q.q2 = pa[1];
    q.q4 = pb[1];
    if (q.q2 == q.q4)
        throw Error(ErrorKind::not_flippable, "flip of " + arc + " would create a loop arc");
    return q;
}

namespace {

std::string flip_arc_id(const Triangulation& t, const std::string& p, const std::string& r) {
    auto norm = [](const std::string& label) {
        return label[0] == 'P' ? label.substr(1) : label;
    };
    std::string a = norm(p), b = norm(r);
    bool anum = a.find_first_not_of("0123456789") == std::string::npos;
    bool bnum = b.find_first_not_of("0123456789") == std::string::npos;
    if ((anum && bnum && std::stol(a) > std::stol(b)) || (!anum && bnum) ||
        (anum == bnum && !anum && a > b))
        std::swap(a, b);
    std::string base = "d" + a + "_" + b;
    std::string id = base;
    char suffix = 'b';
    while (t.has_edge(id))
        id = base + "_" + std::string(1, suffix++);
    return id;
}

} // namespace

Triangulation flip(const Triangulation& t, const std::string& arc) {
    FlipQuad q = flip_quad(t, arc);
    Triangulation out = t;
    std::string nid = flip_arc_id(t, q.q2, q.q4);
    for (auto& e : out.edges)
        if (e.id == arc) {
            e.id = nid;
            e.ends = {q.q2, q.q4};
        }
    out.triangles[q.tri_a] = {nid, q.s1, q.s4};
    out.triangles[q.tri_b] = {nid, q.s3, q.s2};
    auto diags = validate_triangulation(out);
    if (!diags.empty())
        throw Error(ErrorKind::not_flippable,
                    "flip result invalid: " + diags.front().message);
    return out;
}

namespace {

struct CanonicalTraversal {
    std::string key;
    std::vector<int> order;    // triangle indices in visit order
    std::vector<int> rotation; // chosen side rotation per visited triangle
};

CanonicalTraversal traverse_from(const Triangulation& t, const SlotTable& st, int seed, int rot) {
    CanonicalTraversal out;
    out.rotation.assign(t.triangles.size(), -1);
    std::map<std::string, std::string> arc_name;
    std::vector<bool> visited(t.triangles.size(), false);
    std::deque<std::pair<int, int>> queue;
    queue.push_back({seed, rot});
    visited[seed] = true;
    std::ostringstream os;
    while (!queue.empty()) {
        auto [tri, r] = queue.front();
        queue.pop_front();
        out.order.push_back(tri);
        out.rotation[tri] = r;
        for (int c = 0; c < 3; ++c) {
            const std::string& side = t.triangles[tri][(r + c) % 3];
            const TriEdge& e = t.edge(side);
            std::string name;
            if (e.is_boundary) {
                name = "B:" + side;
            } else {
                auto it = arc_name.find(side);
                if (it == arc_name.end()) {
                    std::string lo = std::min(e.ends[0], e.ends[1]);
                    std::string hi = std::max(e.ends[0], e.ends[1]);
                    name = "A" + std::to_string(arc_name.size()) + "(" + lo + "," + hi + ")";
                    arc_name.emplace(side, name);
                } else {
                    name = it->second;
                }
                for (const auto& s : st.slots.at(side))
                    if (!visited[s.first]) {
                        visited[s.first] = true;
                        queue.push_back({s.first, s.second});
                    }
            }
            os << name << "|";
        }
        os << ";";
    }
    out.key = os.str();
    return out;
}

CanonicalTraversal best_traversal(const Triangulation& t) {
    SlotTable st = slot_table(t);
    CanonicalTraversal best;
    for (std::size_t seed = 0; seed < t.triangles.size(); ++seed)
        for (int rot = 0; rot < 3; ++rot) {
            CanonicalTraversal cur = traverse_from(t, st, static_cast<int>(seed), rot);
            if (best.key.empty() || cur.key < best.key)
                best = std::move(cur);
        }
    return best;
}

} // namespace

std::string triangulation_key(const Triangulation& t) {
    return best_traversal(t).key;
}

std::map<std::string, std::string> quiver_arrow_matching(const Triangulation& a,
                                                         const Triangulation& b) {
    CanonicalTraversal ta = best_traversal(a);
    CanonicalTraversal tb = best_traversal(b);
    if (ta.key != tb.key)
        throw Error(ErrorKind::validation, "triangulations are not equivalent");
    std::map<std::string, std::string> out;
    for (std::size_t k = 0; k < ta.order.size(); ++k) {
        int t1 = ta.order[k], r1 = ta.rotation[t1];
        int t2 = tb.order[k], r2 = tb.rotation[t2];
        for (int c = 0; c < 3; ++c) {
            std::string from = "t" + std::to_string(t1 + 1) + "_" +
                               std::to_string((r1 + c) % 3 + 1);
            std::string to = "t" + std::to_string(t2 + 1) + "_" +
                             std::to_string((r2 + c) % 3 + 1);
            out[from] = to;
        }
    }
    // external arrows keep their point-derived names
    return out;
}

FlipOrbit flip_orbit(const Triangulation& t, std::size_t max_size) {
    FlipOrbit out;
    std::map<std::string, int> index;
    std::deque<int> queue;
    out.elements.push_back(t);
    index[triangulation_key(t)] = 0;
    queue.push_back(0);
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        Triangulation base = out.elements[cur];
        for (const auto& arc : base.arc_ids()) {
            Triangulation next;
            try {
                next = flip(base, arc);
            } catch (const Error&) {
                continue; // not flippable
            }
            std::string key = triangulation_key(next);
            auto it = index.find(key);
            int to;
            if (it == index.end()) {
                if (out.elements.size() >= max_size) {
                    out.overflowed = true;
                    return out;
                }
                to = static_cast<int>(out.elements.size());
                out.elements.push_back(next);
                index.emplace(key, to);
                queue.push_back(to);
            } else {
                to = it->second;
            }
            out.flip_edges.emplace_back(cur, arc, to);
        }
    }
    return out;
}

Triangulation standard_triangulation(StandardKind kind, int m) {
    Triangulation t;
    auto b_id = [](int j) { return "b" + std::to_string(j); };
    auto p_id = [](int j) { return "P" + std::to_string(j); };
    switch (kind) {
    case StandardKind::fan: {
        if (m < 4)
            throw Error(ErrorKind::unsupported_kind, "fan requires at least 4 marked points");
        t.signature = {0, {m}, 0};
        std::vector<std::string> pts;
        for (int j = 1; j <= m; ++j)
            pts.push_back(p_id(j));
        t.boundary_points = {pts};
        for (int j = 1; j <= m; ++j)
            t.edges.push_back({b_id(j), {p_id(j), p_id(j % m + 1)}, true});
        for (int i = 3; i <= m - 1; ++i)
            t.edges.push_back({"d1_" + std::to_string(i), {p_id(1), p_id(i)}, false});
        auto chord = [&](int i) {
            if (i == 2)
                return b_id(1);
            if (i == m)
                return b_id(m);
            return "d1_" + std::to_string(i);
        };
        for (int i = 2; i <= m - 1; ++i)
            t.triangles.push_back({chord(i + 1), b_id(i), chord(i)});
        break;
    }
    case StandardKind::star: {
        if (m < 2)
            throw Error(ErrorKind::unsupported_kind, "star requires at least 2 marked points");
        t.signature = {0, {m}, 1};
        std::vector<std::string> pts;
        for (int j = 1; j <= m; ++j)
            pts.push_back(p_id(j));
        t.boundary_points = {pts};
        t.punctures = {"q1"};
        for (int j = 1; j <= m; ++j)
            t.edges.push_back({b_id(j), {p_id(j), p_id(j % m + 1)}, true});
        auto s_id = [](int j) { return "d" + std::to_string(j) + "_q"; };
        for (int j = 1; j <= m; ++j)
            t.edges.push_back({s_id(j), {p_id(j), "q1"}, false});
        for (int j = 1; j <= m; ++j)
            t.triangles.push_back({s_id(j), s_id(j % m + 1), b_id(j)});
        break;
    }
    case StandardKind::annulus_11: {
        t.signature = {0, {1, 1}, 0};
        t.boundary_points = {{"P1_1"}, {"P2_1"}};
        t.edges.push_back({"b1_1", {"P1_1", "P1_1"}, true});
        t.edges.push_back({"b2_1", {"P2_1", "P2_1"}, true});
        t.edges.push_back({"d1", {"P1_1", "P2_1"}, false});
        t.edges.push_back({"d2", {"P1_1", "P2_1"}, false});
        t.triangles.push_back({"b1_1", "d1", "d2"});
        t.triangles.push_back({"d1", "d2", "b2_1"});
        break;
    }
    }
    auto diags = validate_triangulation(t);
    if (!diags.empty())
        throw Error(ErrorKind::validation, "standard triangulation invalid: " +
                                               diags.front().location + ": " +
                                               diags.front().message);
    return t;
}

std::string triangulation_to_json(const Triangulation& t) {
    nlohmann::json j;
    j["signature"] = {{"genus", t.signature.genus},
                      {"boundary_marked", t.signature.boundary_marked},
                      {"punctures", t.signature.punctures}};
    j["marked_points"] = {{"boundary", t.boundary_points}, {"punctures", t.punctures}};
    j["edges"] = nlohmann::json::array();
    for (const auto& e : t.edges)
        j["edges"].push_back({{"id", e.id},
                              {"ends", {e.ends[0], e.ends[1]}},
                              {"kind", e.is_boundary ? "boundary" : "arc"}});
    j["triangles"] = nlohmann::json::array();
    for (const auto& tri : t.triangles)
        j["triangles"].push_back({tri[0], tri[1], tri[2]});
    return j.dump(2);
}

Triangulation triangulation_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::parse, std::string("triangulation json: ") + e.what());
    }
    Triangulation t;
    const auto& sig = j.at("signature");
    t.signature.genus = sig.at("genus").get<int>();
    t.signature.boundary_marked = sig.at("boundary_marked").get<std::vector<int>>();
    t.signature.punctures = sig.at("punctures").get<int>();
    t.boundary_points =
        j.at("marked_points").at("boundary").get<std::vector<std::vector<std::string>>>();
    if (j.at("marked_points").contains("punctures"))
        t.punctures = j.at("marked_points").at("punctures").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges")) {
        TriEdge edge;
        edge.id = e.at("id").get<std::string>();
        edge.ends = {e.at("ends")[0].get<std::string>(), e.at("ends")[1].get<std::string>()};
        edge.is_boundary = e.at("kind").get<std::string>() == "boundary";
        t.edges.push_back(std::move(edge));
    }
    for (const auto& tri : j.at("triangles"))
        t.triangles.push_back({tri[0].get<std::string>(), tri[1].get<std::string>(),
                               tri[2].get<std::string>()});
    return t;
}

} // namespace iceqp
