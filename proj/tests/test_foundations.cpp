// Exact-arithmetic foundations: rationals, lattice linear algebra, monomial order,
// polynomial arithmetic with truncation semantics, linear divisibility, Todd series.

#include "doctest.h"

#include "wgkm/character.hpp"
#include "wgkm/linalg.hpp"
#include "wgkm/polynomial.hpp"
#include "wgkm/rational.hpp"
#include "wgkm/series.hpp"

using namespace wgkm;

TEST_CASE("rationals canonicalize and render exactly") {
    CHECK(make_rat(2, 4) == make_rat(1, 2));
    CHECK(make_rat(3, -6) == make_rat(-1, 2));
    CHECK(rat_to_string(make_rat(3, -6)) == "-1/2");
    CHECK(rat_to_string(Rat(42)) == "42");
    CHECK(rat_from_string("-7/3") == make_rat(-7, 3));
    CHECK(rat_from_string("10/4") == make_rat(5, 2));
    CHECK_THROWS_AS(rat_from_string("1/0x"), Error);
    CHECK_THROWS_AS(make_rat(1, 0), Error);

    CHECK(rat_is_integer(Rat(5)));
    CHECK(!rat_is_integer(make_rat(1, 2)));
    CHECK(rat_to_int64(Rat(-9)) == -9);

    // JSON-safe window: integers up to 2^53 - 1 in absolute value.
    Rat big = rat_from_string("9007199254740991");
    CHECK(rat_fits_json_int(big));
    CHECK(rat_fits_json_int(-big));
    CHECK(!rat_fits_json_int(big + 1));
    CHECK(!rat_fits_json_int(make_rat(1, 2)));
}

TEST_CASE("unimodular completion sends the vector to e_1") {
    for (IntVec c : {IntVec{1, 0}, IntVec{0, 1}, IntVec{3, 2}, IntVec{-5, 3},
                     IntVec{2, -3, 6}, IntVec{7, 11, -13, 2}}) {
        REQUIRE(content(c) == 1);
        UnimodularCompletion u = complete_to_unimodular(c);
        IntVec e1 = u.M * c;
        CHECK(e1[0] == 1);
        for (size_t i = 1; i < e1.size(); ++i) CHECK(e1[i] == 0);
        CHECK(u.M * u.Minv == IntMat::identity(static_cast<int>(c.size())));
        CHECK(u.Minv * u.M == IntMat::identity(static_cast<int>(c.size())));
    }
}

TEST_CASE("rational rank, null space, solve, inverse") {
    RatMat A(3, 3);
    // Rank-2 matrix: row2 = row0 + row1.
    long data[3][3] = {{1, 2, 3}, {0, 1, 4}, {1, 3, 7}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A.at(i, j) = Rat(data[i][j]);
    CHECK(rat_rank(A) == 2);

    auto ns = rat_nullspace(A);
    REQUIRE(ns.size() == 1);
    for (int i = 0; i < 3; ++i) {
        Rat acc(0);
        for (int j = 0; j < 3; ++j) acc += A.at(i, j) * ns[0][j];
        CHECK(acc == 0);
    }

    RatMat B(2, 2);
    B.at(0, 0) = Rat(2); B.at(0, 1) = Rat(1);
    B.at(1, 0) = Rat(5); B.at(1, 1) = Rat(3);
    RatVec x = rat_solve(B, {Rat(1), Rat(2)});
    CHECK(x[0] == Rat(1));
    CHECK(x[1] == Rat(-1));
    RatMat Binv = rat_inverse(B);
    RatMat I = B * Binv;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(I.at(i, j) == Rat(i == j ? 1 : 0));
}

TEST_CASE("Smith normal form has unimodular factors and a divisibility chain") {
    IntMat A(2, 3);
    A.at(0, 0) = 2; A.at(0, 1) = 4; A.at(0, 2) = 4;
    A.at(1, 0) = -6; A.at(1, 1) = 6; A.at(1, 2) = 12;
    SmithResult s = smith_normal_form(A);
    IntMat lhs = s.U * A * s.V;
    CHECK(lhs == s.D);
    REQUIRE(s.rank == 2);
    Int d0 = s.D.at(0, 0), d1 = s.D.at(1, 1);
    CHECK(d0 != 0);
    CHECK(d1 % d0 == 0);
    for (int i = 0; i < s.D.rows(); ++i)
        for (int j = 0; j < s.D.cols(); ++j)
            if (i != j) CHECK(s.D.at(i, j) == 0);
}

TEST_CASE("monomial order is graded lexicographic") {
    Monomial x = Monomial::var(0), y = Monomial::var(1), z = Monomial::var(2);
    CHECK(Monomial::one() < x);
    CHECK(y < x);             // same degree: lex with variable 0 most significant
    CHECK(x < x * x);         // degree dominates
    CHECK(y * y < x * z);     // degree 2 each: compare exponent of x first
    CHECK(x * y < x * x);
    Monomial m = Monomial::var(1, 3) * Monomial::var(4, 2);
    CHECK(m.degree() == 5);
    CHECK(m.exponent(1) == 3);
    CHECK(m.exponent(4) == 2);
    CHECK(m.exponent(0) == 0);
    CHECK(m.divided_by_var(1) == Monomial::var(1, 2) * Monomial::var(4, 2));
}

TEST_CASE("polynomial canonical form and ring arithmetic") {
    // from_terms merges duplicates and drops zeros.
    Monomial x = Monomial::var(0), y = Monomial::var(1);
    Polynomial p = Polynomial::from_terms(
        2, {{x, Rat(2)}, {x, Rat(-2)}, {y, Rat(3)}, {Monomial::one(), Rat(0)}});
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].first == y);

    Polynomial f = Polynomial::from_terms(2, {{x, Rat(1)}, {y, Rat(1)}});    // x + y
    Polynomial g = Polynomial::from_terms(2, {{x, Rat(1)}, {y, Rat(-1)}});   // x - y
    Polynomial prod = f * g;
    Polynomial expect = Polynomial::from_terms(2, {{x * x, Rat(1)}, {y * y, Rat(-1)}});
    CHECK(prod == expect);
    CHECK(f + g == Polynomial::from_terms(2, {{x, Rat(2)}}));
    CHECK(f - f == Polynomial::zero(2));
    CHECK((-f).scaled(Rat(-1)) == f);
    CHECK(f.pow(2) == f * f);
    CHECK(f.degree() == 1);
    CHECK(prod.is_homogeneous());
    CHECK(!(f + Polynomial::constant(2, Rat(1))).is_homogeneous());
    CHECK(f.eval({Rat(3), Rat(4)}) == Rat(7));
    CHECK(prod.eval({Rat(3), Rat(4)}) == Rat(-7));
}

TEST_CASE("truncation bounds combine by minimum under multiplication") {
    Monomial x = Monomial::var(0);
    Polynomial f = Polynomial::from_terms(1, {{Monomial::one(), Rat(1)}, {x, Rat(1)}}, 2);
    Polynomial g = Polynomial::from_terms(1, {{Monomial::one(), Rat(1)}, {x, Rat(1)}}, 3);
    Polynomial prod = f * g;
    REQUIRE(prod.truncation().has_value());
    CHECK(*prod.truncation() == 2);
    // (1+x)^2 cut at degree 2 keeps the full square here; cube drops x^3.
    Polynomial cube = prod * f;
    CHECK(*cube.truncation() == 2);
    CHECK(cube.degree() == 2);
    CHECK(cube.homogeneous_part(2) == Polynomial::from_terms(1, {{x * x, Rat(3)}}));

    // Re-bounding restores headroom: the same data declared exact cubes correctly.
    Polynomial fx = f.without_truncation();
    CHECK(!fx.truncation().has_value());
    CHECK(fx.pow(3).degree() == 3);
    CHECK(f.truncated(1).degree() == 1);
}

TEST_CASE("substitution and lattice maps are ring maps") {
    Monomial x = Monomial::var(0), y = Monomial::var(1);
    Polynomial f = Polynomial::from_terms(2, {{x * x, Rat(1)}, {x * y, Rat(2)}, {y, Rat(1)}});
    // x := 3y  (subst_var ignores entry 0 of the form).
    Polynomial sub = f.subst_var(0, {Rat(0), Rat(3)});
    Polynomial expect =
        Polynomial::from_terms(2, {{y * y, Rat(9 + 6)}, {y, Rat(1)}});
    CHECK(sub == expect);

    IntMat A(2, 2); // x -> x + y, y -> x - y (columns are images)
    A.at(0, 0) = 1; A.at(0, 1) = 1;
    A.at(1, 0) = 1; A.at(1, 1) = -1;
    Polynomial g = Polynomial::from_terms(2, {{x, Rat(1)}, {y, Rat(-1)}});
    CHECK((f * g).apply_lattice_map(A) == f.apply_lattice_map(A) * g.apply_lattice_map(A));
    // The image of the basis character x_1 reads off column 1.
    Polynomial img = Polynomial::from_character(Character(IntVec{0, 1})).apply_lattice_map(A);
    CHECK(img == Polynomial::from_character(Character(A.col(1))));
}

TEST_CASE("exact linear divisibility with verified quotient") {
    Character chi(IntVec{1, -1});
    Polynomial lin = Polynomial::from_character(chi);
    Monomial x = Monomial::var(0), y = Monomial::var(1);
    Polynomial other = Polynomial::from_terms(2, {{x, Rat(1)}, {y, Rat(2)}});
    Polynomial f = lin * other;

    LinearDivision d = divisible_by_linear(f, chi);
    REQUIRE(d.divisible);
    CHECK(d.quotient * lin == f);
    CHECK(divides_linear(f, chi));

    Polynomial not_div = f + Polynomial::constant(2, Rat(1));
    CHECK(!divisible_by_linear(not_div, chi).divisible);
    CHECK(!divides_linear(not_div, chi));

    // Non-primitive character: divisibility is over Q, quotient exactness still holds.
    Character chi2(IntVec{2, -2});
    LinearDivision d2 = divisible_by_linear(f, chi2);
    REQUIRE(d2.divisible);
    CHECK(d2.quotient * Polynomial::from_character(chi2) == f);

    // Zero polynomial divides; both deciders agree on a batch of fixed cases.
    CHECK(divisible_by_linear(Polynomial::zero(2), chi).divisible);
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b) {
            Polynomial h = Polynomial::from_terms(
                2, {{x * x, Rat(a)}, {x * y, Rat(b)}, {y * y, Rat(a + b)}});
            CHECK(divisible_by_linear(h, chi).divisible == divides_linear(h, chi));
        }
}

TEST_CASE("Todd series coefficients and reciprocal identity") {
    auto c = todd_series_coeffs(6);
    REQUIRE(c.size() == 7);
    CHECK(c[0] == Rat(1));
    CHECK(c[1] == make_rat(1, 2));
    CHECK(c[2] == make_rat(1, 12));
    CHECK(c[3] == Rat(0));
    CHECK(c[4] == make_rat(-1, 720));
    CHECK(c[5] == Rat(0));
    CHECK(c[6] == make_rat(1, 30240));

    auto ci = todd_inverse_series_coeffs(6);
    // Cauchy product must be exactly 1.
    for (int n = 0; n <= 6; ++n) {
        Rat acc(0);
        for (int k = 0; k <= n; ++k) acc += c[k] * ci[n - k];
        CHECK(acc == Rat(n == 0 ? 1 : 0));
    }
}

TEST_CASE("series factors in a character") {
    Character chi(IntVec{1, 2});
    Polynomial lin = Polynomial::from_character(chi);

    Polynomial td = todd_factor(chi, 3);
    auto c = todd_series_coeffs(3);
    Polynomial expect = Polynomial::constant(2, c[0]);
    for (uint32_t k = 1; k <= 3; ++k) expect = expect + lin.pow(k).scaled(c[k]);
    CHECK(td.without_truncation() == expect.truncated(3).without_truncation());

    CHECK(todd_factor(Character::zero(2), 5).without_truncation() ==
          Polynomial::constant(2, Rat(1)));

    // (1 + chi) * geometric inverse == 1 modulo the truncation.
    Polynomial geo = geometric_inverse_factor(chi, 4);
    Polynomial one = (Polynomial::constant(2, Rat(1)) + lin) * geo;
    CHECK(one.without_truncation() == Polynomial::constant(2, Rat(1)));

    // series_in_character reproduces the Todd factor from raw coefficients.
    CHECK(series_in_character(todd_series_coeffs(4), chi, 4) == todd_factor(chi, 4));
}
