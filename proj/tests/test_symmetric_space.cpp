// Classification of the example spaces (frozen table) and the structural lemmas
// behind minimal rank: fiber shapes of the restriction map q, strong orthogonality,
// the bijections between non-Levi roots and K-roots, Weyl stability, reducedness of
// the restricted system, and the layered coset combinatorics.

#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace wgkm;
using namespace wgkm::testing;

static Character root_char(const RootSystem& rs, int i) {
    return Character(rs.delta_coords(i));
}

TEST_CASE("frozen classification table") {
    for (const ClassRow& row : classification_table()) {
        CAPTURE(row.space);
        SymmetricSpace sp = SymmetricSpace::build(row.space);
        SymmetricSpace::Report r = sp.report();
        CHECK(r.descriptor == row.space);
        CHECK(r.type_g == row.type_g);
        CHECK(r.type_l == row.type_l);
        CHECK(r.type_k == row.type_k);
        CHECK(r.type_k_minus_l == row.type_k_minus_l);
        CHECK(r.type_restricted == row.type_restricted);
        CHECK(r.order_w_k == row.order_w_k);
        CHECK(r.order_w_l == row.order_w_l);
        CHECK(r.order_w_gk == row.order_w_gk);
        CHECK(r.x_vertices == row.x_vertices);
        CHECK(r.y_vertices == row.y_vertices);
        CHECK(r.dim_x == row.dim_x);
        CHECK(r.dim_y == row.dim_y);

        // Consistency of the report with first principles.
        CHECK(r.order_w_g == CartanType::parse(row.type_g).weyl_order());
        CHECK(r.x_vertices == r.order_w_g / r.order_w_l);
        CHECK(r.y_vertices == r.order_w_k / r.order_w_l);
        CHECK(r.y_vertices == r.order_w_gk);
        CHECK(r.rank_restricted == r.rank_g - r.rank_k);
        CHECK(r.dim_y == r.rank_restricted);
        CHECK(r.num_betas ==
              CartanType::parse(row.type_k).root_count() - CartanType::parse(row.type_l).root_count());
    }
}

TEST_CASE("space descriptor grammar") {
    SpaceDescriptor d = SpaceDescriptor::parse("AC:2,DB:3");
    CHECK(d.factors.size() == 2);
    CHECK(d.to_string() == "AC:2,DB:3");
    CHECK(SpaceDescriptor::parse("group:G2").to_string() == "group:G2");
    CHECK(SpaceDescriptor::parse("EF6").to_string() == "EF6");

    auto expect_usage = [](const std::string& s, const std::string& fragment) {
        try {
            SpaceDescriptor::parse(s);
            FAIL_CHECK("no error for \"" << s << "\"");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Usage);
            INFO("input \"" << s << "\" gave: " << e.what());
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_usage("AC:1", "n >= 2");
    expect_usage("AC:1", "position 4");
    expect_usage("DB:2", "n >= 3");
    expect_usage("XX:4", "position 1");
    expect_usage("", "empty");
    expect_usage("group:H8", "bad type");
    expect_usage("AC:2,", "trailing comma");
}

TEST_CASE("involution and q-fiber classification") {
    for (const std::string& name : all_spaces()) {
        CAPTURE(name);
        SymmetricSpace sp = SymmetricSpace::build(name);
        const RootSystem& G = sp.phi_g();

        // theta is an involutive lattice map permuting the roots.
        CHECK(sp.theta_delta() * sp.theta_delta() == IntMat::identity(sp.rank_g()));
        long l_roots = 0;
        for (int i = 0; i < G.size(); ++i) {
            CHECK(sp.theta_root(sp.theta_root(i)) == i);
            CHECK(sp.theta_char(root_char(G, i)) == root_char(G, sp.theta_root(i)));
            if (sp.is_l_root(i)) ++l_roots;
        }

        // Every root lands in a fiber; fibers have the advertised shapes.
        std::vector<int> hits(sp.fibers().size(), 0);
        std::vector<int> pos_hits(sp.fibers().size(), 0);
        for (int i = 0; i < G.size(); ++i) {
            int k = sp.fiber_index(sp.q_of(root_char(G, i)));
            REQUIRE(k >= 0);
            ++hits[k];
            if (G.is_positive(i)) ++pos_hits[k];
        }
        long singleton = 0, pair = 0;
        for (size_t k = 0; k < sp.fibers().size(); ++k) {
            const QFiber& f = sp.fibers()[k];
            CHECK(sp.fiber_index(f.beta) == static_cast<int>(k));
            CHECK(sp.q_of(root_char(G, f.alpha)) == f.beta);
            if (f.in_l) {
                ++singleton;
                CHECK(f.theta_alpha == f.alpha);
                CHECK(sp.is_l_root(f.alpha));
                CHECK(hits[k] == 1);
            } else {
                ++pair;
                CHECK(hits[k] == 2);
                CHECK(pos_hits[k] == 1); // exactly one positive member per pair fiber
                CHECK(sp.theta_root(f.alpha) == f.theta_alpha);
                CHECK(f.theta_alpha != f.alpha);
                CHECK(G.is_positive(f.alpha));
                CHECK(!G.is_positive(f.theta_alpha));
                CHECK(!sp.is_l_root(f.alpha));
                CHECK(!sp.is_l_root(f.theta_alpha));
                CHECK(sp.q_of(root_char(G, f.theta_alpha)) == f.beta);
                // Strong orthogonality: neither the sum nor the difference is a root.
                CHECK(G.index_of(vec_add(G.root(f.alpha), G.root(f.theta_alpha))) == -1);
                CHECK(G.index_of(vec_sub(G.root(f.alpha), G.root(f.theta_alpha))) == -1);
            }
        }

        // q restricted to the Levi roots is a bijection onto singleton fibers, and
        // the pair fibers biject with the positive non-Levi roots.
        CHECK(singleton == l_roots);
        CHECK(pair == (G.size() - l_roots) / 2);
        CHECK(static_cast<long>(sp.beta_fibers().size()) == pair);
        std::set<int> beta_set(sp.beta_fibers().begin(), sp.beta_fibers().end());
        CHECK(beta_set.size() == sp.beta_fibers().size());
        for (int k : sp.beta_fibers()) CHECK(!sp.fibers()[k].in_l);
    }
}

TEST_CASE("Weyl stability of the non-Levi values and reducedness") {
    for (const std::string& name : all_spaces()) {
        CAPTURE(name);
        SymmetricSpace sp = SymmetricSpace::build(name);
        const RootSystem& G = sp.phi_g();

        // W_K stabilizes both the Levi values and their complement.
        for (int u : sp.w_k_elements()) {
            for (size_t k = 0; k < sp.fibers().size(); ++k) {
                const QFiber& f = sp.fibers()[k];
                int img = sp.fiber_index(sp.q_of(sp.act(u, root_char(G, f.alpha))));
                REQUIRE(img >= 0);
                CHECK(sp.fibers()[img].in_l == f.in_l);
            }
        }

        // The restricted system is reduced and has the classified size.
        const RootSystem& R = sp.restricted();
        CHECK(R.size() == CartanType::parse(sp.report().type_restricted).root_count());
        for (int r = 0; r < R.size(); ++r)
            CHECK(R.index_of(vec_scale(R.root(r), 2)) == -1);

        // gamma of a simple restricted position lies in the system; its coordinates
        // in the restricted simple basis are a standard basis vector.
        for (int i = 0; i < sp.rank_restricted(); ++i) {
            Character gi = sp.gamma_simple(i);
            CHECK(sp.restricted_index_of(gi) >= 0);
            RatVec coords = sp.restricted_coords(gi);
            for (int j = 0; j < sp.rank_restricted(); ++j)
                CHECK(coords[j] == Rat(i == j ? 1 : 0));
            int gpos = sp.g_simple_for_restricted(i);
            CHECK(std::find(sp.delta_g_minus_l_positions().begin(),
                            sp.delta_g_minus_l_positions().end(),
                            gpos) != sp.delta_g_minus_l_positions().end());
        }
    }
}

TEST_CASE("double reflections represent the restricted reflections inside W_K") {
    for (const std::string& name : all_spaces()) {
        CAPTURE(name);
        SymmetricSpace sp = SymmetricSpace::build(name);
        const RootSystem& G = sp.phi_g();
        const WeylGroup& W = sp.weyl_g();
        const WeylGroup& WR = sp.weyl_restricted();

        for (int k : sp.beta_fibers()) {
            const QFiber& f = sp.fibers()[k];
            Character gamma = sp.gamma_of(f.alpha);
            CHECK(gamma == root_char(G, f.alpha) - sp.theta_char(root_char(G, f.alpha)));
            int ri = sp.restricted_index_of(gamma);
            REQUIRE(ri >= 0);

            int e = W.compose(W.reflection_element(f.alpha), W.reflection_element(f.theta_alpha));
            CHECK(sp.in_w_k(e));
            CHECK(sp.restricted_elem_of(e) == WR.reflection_element(ri));

            // The two reflections commute (strong orthogonality) and e acts on the
            // restricted span exactly as the restricted reflection does.
            CHECK(W.compose(W.reflection_element(f.theta_alpha), W.reflection_element(f.alpha)) == e);
            Character img = sp.act(e, gamma);
            CHECK(img == sp.act_restricted(WR.reflection_element(ri), gamma));
            CHECK(img == -gamma);
        }

        // Levi roots are theta-fixed, so gamma degenerates to zero there.
        for (int i = 0; i < G.size(); ++i)
            if (sp.is_l_root(i)) CHECK(sp.gamma_of(i) == Character::zero(sp.rank_g()));
    }
}

TEST_CASE("coset layers: x-reps, y-reps, lifts, divisor set") {
    for (const std::string& name : all_spaces()) {
        CAPTURE(name);
        SymmetricSpace sp = SymmetricSpace::build(name);
        const WeylGroup& W = sp.weyl_g();
        const WeylGroup& WR = sp.weyl_restricted();

        CHECK(sp.x_reps() == W.coset_min_reps(sp.delta_l_positions()));
        CHECK(sp.x_reps().front() == W.identity());
        for (int rep : sp.x_reps()) {
            CHECK(sp.coset_rep(rep) == rep);
            CHECK(sp.x_index(rep) >= 0);
        }
        for (int rep : sp.y_reps()) {
            CHECK(sp.in_w_k(rep));
            CHECK(sp.y_index(rep) >= 0);
            CHECK(sp.x_index(rep) >= 0); // y-reps are a sub-family of x-reps
        }
        CHECK(sp.y_reps().size() == static_cast<size_t>(sp.order_w_gk()));
        for (int r = 0; r < WR.order(); ++r) {
            int lift = sp.lift_of_restricted(r);
            CHECK(sp.y_index(lift) >= 0);
            CHECK(sp.restricted_elem_of(lift) == r);
        }

        // W_L is the kernel of the projection W_K -> W_{G/K}.
        long kernel = 0;
        for (int u : sp.w_k_elements())
            if (sp.restricted_elem_of(u) == WR.identity()) ++kernel;
        CHECK(kernel == sp.order_w_l());
        for (int u : sp.w_l_elements()) CHECK(sp.in_w_k(u));

        // Divisor index set: for each simple restricted position, the minimal coset
        // representatives modulo the stabilizer of the corresponding wall.
        long total = 0;
        for (int i = 0; i < sp.rank_restricted(); ++i) {
            std::vector<int> others;
            for (int j = 0; j < sp.rank_restricted(); ++j)
                if (j != i) others.push_back(j);
            CHECK(sp.w_upper(i) == WR.coset_min_reps(others));
            total += static_cast<long>(sp.w_upper(i).size());
            for (int w : sp.w_upper(i)) {
                int pos = sp.divisor_position(i, w);
                REQUIRE(pos >= 0);
                CHECK(sp.divisor_set()[pos].i == i);
                CHECK(sp.divisor_set()[pos].w == w);
            }
        }
        CHECK(total == sp.divisor_count());
        CHECK(sp.divisor_count() == sp.report().num_divisors);
    }
}
