#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "iceqp/boundary.hpp"
#include "iceqp/mutation.hpp"
#include "iceqp/surface.hpp"

using namespace iceqp;
using iceqp::tests::figure1_qp;

// The CLI is a thin shell over these serialization surfaces; the pipeline
// behind each subcommand is exercised here directly so the formats stay
// stable.

TEST_CASE("build -> export -> re-parse round trips the ice QP") {
    Triangulation t = standard_triangulation(StandardKind::fan, 7);
    IceQP qp = build_ice_qp(t);
    std::string j = iceqp_to_json(qp);
    IceQP back = iceqp_from_json(j);
    CHECK(iceqp_to_json(back) == j);
    CHECK(back.quiver().same_as(qp.quiver()));
    CHECK(cyclically_equivalent(back.potential(), qp.potential()));
    CHECK(back.external_arrows() == qp.external_arrows());
}

TEST_CASE("reports are byte-identical across runs") {
    Triangulation t = standard_triangulation(StandardKind::star, 4);
    QpBuild b1 = build_ice_qp_full(t);
    QpBuild b2 = build_ice_qp_full(t);
    CHECK(iceqp_to_json(b1.qp) == iceqp_to_json(b2.qp));
    CHECK(profile_to_json(boundary_profile(b1, 8)) == profile_to_json(boundary_profile(b2, 8)));

    IceQP qp = figure1_qp({});
    auto [m1, r1] = mutate(qp, "3");
    auto [m2, r2] = mutate(qp, "3");
    CHECK(iceqp_to_json(m1) == iceqp_to_json(m2));
    CHECK(mutation_report_to_json(r1) == mutation_report_to_json(r2));
}

TEST_CASE("triangulation files round trip through flip") {
    Triangulation t = standard_triangulation(StandardKind::fan, 6);
    std::string before = triangulation_to_json(t);
    Triangulation parsed = triangulation_from_json(before);
    Triangulation flipped = flip(parsed, "d1_4");
    std::string after = triangulation_to_json(flipped);
    Triangulation back = triangulation_from_json(after);
    CHECK(triangulation_key(back) == triangulation_key(flipped));
}

TEST_CASE("parse errors carry the parse kind") {
    CHECK_THROWS_AS(iceqp_from_json("{"), Error);
    try {
        triangulation_from_json("not json");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
    }
}
