#include <doctest.h>

#include "fixtures.hpp"
#include "iceqp/quiver.hpp"

using namespace iceqp;

namespace {

Quiver square() {
    return Quiver({"1", "2", "3", "4"},
                  {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "4"}, {"d", "4", "1"}},
                  {"2", "3"});
}

} // namespace

TEST_CASE("compose basics") {
    Quiver q = square();
    Path a = Path::of_arrow(q.arrow_index("a"));
    Path b = Path::of_arrow(q.arrow_index("b"));
    Path e1 = Path::trivial(q.vertex_index("1"));

    CHECK(compose(e1, a, q) == a);
    CHECK(compose(a, Path::trivial(q.vertex_index("2")), q) == a);

    Path ab = compose(a, b, q);
    CHECK(ab.length() == 2);
    CHECK(ab.source(q) == q.vertex_index("1"));
    CHECK(ab.target(q) == q.vertex_index("3"));

    Path c = Path::of_arrow(q.arrow_index("c"));
    CHECK_THROWS_AS(compose(a, c, q), Error);
    try {
        compose(a, c, q);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::composition_mismatch);
    }
}

TEST_CASE("compose is associative on all composable triples") {
    Quiver q = square();
    std::vector<Path> paths;
    for (std::size_t i = 0; i < q.num_arrows(); ++i)
        paths.push_back(Path::of_arrow(static_cast<int>(i)));
    for (const Path& p1 : paths)
        for (const Path& p2 : paths)
            for (const Path& p3 : paths) {
                if (p1.target(q) != p2.source(q) || p2.target(q) != p3.source(q))
                    continue;
                Path left = compose(compose(p1, p2, q), p3, q);
                Path right = compose(p1, compose(p2, p3, q), q);
                CHECK(left == right);
            }
}

TEST_CASE("validate reports loops and 2-cycles") {
    CHECK(validate(square()).empty());

    auto diags = validate({"1"}, {{"l", "1", "1"}}, {});
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].kind == Diagnostic::Kind::loop);

    auto two = validate({"1", "2"}, {{"f", "1", "2"}, {"g", "2", "1"}}, {});
    REQUIRE(two.size() == 1);
    CHECK(two[0].kind == Diagnostic::Kind::two_cycle);

    auto dup = validate({"1", "1"}, {}, {});
    CHECK(dup.size() == 1);

    auto dangling = validate({"1"}, {{"f", "1", "9"}}, {});
    CHECK(dangling.size() == 1);
}

TEST_CASE("has_two_cycle_at") {
    Quiver q = square();
    CHECK_FALSE(has_two_cycle_at(q, "3"));

    Quiver two({"1", "2"}, {{"f", "1", "2"}, {"g", "2", "1"}}, {});
    CHECK(has_two_cycle_at(two, "2"));
    CHECK(has_two_cycle_at(two, "1"));

    Quiver lone({"1"}, {}, {});
    CHECK_FALSE(has_two_cycle_at(lone, "1"));
    CHECK_THROWS_AS(has_two_cycle_at(lone, "9"), Error);
}

TEST_CASE("quiver json round trip") {
    Quiver q = square();
    Quiver back = quiver_from_json(quiver_to_json(q));
    CHECK(back.same_as(q));
}

TEST_CASE("dot export marks frozen vertices as boxes") {
    std::string dot = to_dot(square());
    CHECK(dot.find("\"2\" [shape=box]") != std::string::npos);
    CHECK(dot.find("\"1\" [shape=box]") == std::string::npos);
    CHECK(dot.find("\"1\" -> \"2\" [label=\"a\"]") != std::string::npos);
}
