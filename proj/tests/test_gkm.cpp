// The GKM engine against hand-built textbook graphs: the projective line and plane,
// whose intersection numbers, Betti numbers and Todd genera are known classically.
// Also the malformed-graph rejections and the class-container semantics.

#include "doctest.h"

#include "wgkm/gkm.hpp"
#include "wgkm/series.hpp"

using namespace wgkm;

namespace {

GkmGraph p1_graph() {
    GkmGraph g(1, 1);
    Character x(IntVec{1});
    g.add_vertex("0", {x});
    g.add_vertex("inf", {-x});
    g.add_edge(0, 1, x);
    g.finalize();
    return g;
}

GkmGraph p2_graph() {
    GkmGraph g(2, 2);
    Character x(IntVec{1, 0}), y(IntVec{0, 1});
    g.add_vertex("v0", {x, y});
    g.add_vertex("v1", {-x, y - x});
    g.add_vertex("v2", {-y, x - y});
    g.add_edge(0, 1, x);
    g.add_edge(0, 2, y);
    g.add_edge(1, 2, x - y);
    g.finalize();
    return g;
}

} // namespace

TEST_CASE("projective line: point class, constants, euler, betti") {
    GkmGraph g = p1_graph();
    CHECK(g.num_vertices() == 2);
    CHECK(g.num_edges() == 1);
    CHECK(g.vertex_by_label("inf") == 1);
    CHECK(g.vertex_by_label("nowhere") == -1);
    CHECK(g.edges_at(0).size() == 1);

    Character x(IntVec{1});
    EqClass point(g);
    point.set(0, Polynomial::from_character(x));
    CHECK(!point.first_violation().has_value());
    CHECK(localize_integral(point) == Rat(1));

    // Constants have degree < dim, so they integrate to zero.
    CHECK(localize_integral(EqClass::constant(g, Rat(7))) == Rat(0));

    CHECK(localize_integral(top_chern(g)) == Rat(2));
    CHECK(euler_characteristic(g) == 2);
    CHECK(bb_betti(g) == std::vector<long>{1, 1});

    // Todd genus of a rational curve is 1.
    std::vector<std::vector<Character>> tangent = {{x}, {-x}};
    EqClass td = series_product(g, tangent, todd_series_coeffs(1), 1);
    CHECK(localize_integral(td) == Rat(1));
}

TEST_CASE("projective plane: intersection numbers, genus, total Chern class") {
    GkmGraph g = p2_graph();
    CHECK(euler_characteristic(g) == 3);
    CHECK(bb_betti(g) == std::vector<long>{1, 1, 1});

    std::vector<std::vector<Character>> tangent;
    for (int v = 0; v < g.num_vertices(); ++v) tangent.push_back(g.vertex(v).tangent);

    // c = (1 + w_1)(1 + w_2) per vertex; c_1^2 = 9, c_2 = e = 3 on the plane.
    EqClass c = one_plus_product(g, tangent, 2);
    EqClass c1 = c.graded_part(1);
    CHECK(localize_integral(c1 * c1) == Rat(9));
    CHECK(localize_integral(c.graded_part(2)) == Rat(3));
    CHECK(localize_integral(top_chern(g)) == Rat(3));

    // Arithmetic genus chi(O) = integral of the Todd class = 1.
    EqClass td = series_product(g, tangent, todd_series_coeffs(2), 2);
    CHECK(localize_integral(td) == Rat(1));

    // Degree below the dimension integrates to zero.
    CHECK(localize_integral(c1) == Rat(0));
}

TEST_CASE("class container semantics") {
    GkmGraph g = p2_graph();
    EqClass a(g);
    CHECK(a.truncation_bound() == 2);
    CHECK(a.at(0).is_zero());

    EqClass one = EqClass::constant(g, Rat(1));
    EqClass two = one + one;
    CHECK(two == one.scaled(Rat(2)));
    CHECK((two - one) == one);
    CHECK(one.pow(5) == one);

    // Multiplication keeps the minimum truncation bound.
    EqClass low(g, 1);
    for (int v = 0; v < g.num_vertices(); ++v)
        low.set(v, Polynomial::constant(2, Rat(1)).truncated(1));
    CHECK((low * one).truncation_bound() == 1);

    // graded_part extracts per-vertex homogeneous pieces.
    EqClass c = top_chern(g);
    EqClass c2 = c.graded_part(2);
    for (int v = 0; v < g.num_vertices(); ++v) CHECK(c2.at(v) == c.at(v).homogeneous_part(2));
    CHECK(c.graded_part(1).at(0).is_zero()); // the top class is purely top-degree
}

TEST_CASE("invalid classes are detected and refuse to integrate") {
    GkmGraph g = p1_graph();
    EqClass bad(g);
    bad.set(0, Polynomial::constant(1, Rat(1)));
    // Difference of a constant and zero along the edge is not divisible by x.
    auto violation = bad.first_violation();
    REQUIRE(violation.has_value());
    CHECK(*violation == 0);
    CHECK_THROWS_AS(bad.require_valid("unit test"), Error);
    try {
        bad.require_valid("unit test");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Verification);
    }
    CHECK_THROWS_AS(localize_integral(bad), Error);

    EqClass good(g);
    good.set(0, Polynomial::from_character(Character(IntVec{1})));
    good.require_valid("point class"); // must not throw
}

TEST_CASE("malformed graphs are rejected at finalize") {
    Character x(IntVec{1, 0}), y(IntVec{0, 1});

    // Wrong number of tangent weights.
    CHECK_THROWS_AS([&] {
        GkmGraph g(2, 2);
        g.add_vertex("v", {x});
        g.finalize();
    }(), Error);

    // Parallel tangent weights at one vertex.
    CHECK_THROWS_AS([&] {
        GkmGraph g(2, 2);
        g.add_vertex("v", {x, x + x});
        g.finalize();
    }(), Error);

    // Edge weights must reproduce the tangent multiset at each endpoint.
    CHECK_THROWS_AS([&] {
        GkmGraph g(2, 2);
        g.add_vertex("a", {x, y});
        g.add_vertex("b", {-x, y});
        g.add_edge(0, 1, x);
        g.add_edge(0, 1, x); // duplicate edge: vertex a now sees {x, x}, not {x, y}
        g.finalize();
    }(), Error);

    // Missing edges: an isolated vertex with tangent weights fails the matching.
    CHECK_THROWS_AS([&] {
        GkmGraph g(1, 1);
        g.add_vertex("a", {Character(IntVec{1})});
        g.add_vertex("b", {Character(IntVec{-1})});
        g.finalize();
    }(), Error);

    // Duplicate labels are rejected.
    CHECK_THROWS_AS([&] {
        GkmGraph g(1, 1);
        g.add_vertex("a", {Character(IntVec{1})});
        g.add_vertex("a", {Character(IntVec{-1})});
        g.add_edge(0, 1, Character(IntVec{1}));
        g.finalize();
    }(), Error);
}
