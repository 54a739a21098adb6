#pragma once

// Shared fixtures and independent oracles used by both the unit tests and the
// acceptance runner: the frozen classification table, a single-stage raw-monomial
// null-space oracle for graded dimensions, the hexagonal-fan surface oracle, and
// the randomized sub-top-degree vanishing driver.

#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wgkm/gkm.hpp"
#include "wgkm/symmetric_space.hpp"
#include "wgkm/wonderful.hpp"

namespace wgkm::testing {

// --- frozen classification table -------------------------------------------------

struct ClassRow {
    const char* space;
    const char* type_g;
    const char* type_l;
    const char* type_k;
    const char* type_k_minus_l;
    const char* type_restricted;
    long order_w_k;
    long order_w_l;
    long order_w_gk;
    int x_vertices;
    int y_vertices;
    int dim_x;
    int dim_y;
};

/** Expected invariants of the example spaces, from the classification of symmetric
 *  pairs of minimal rank: the group cases, SL(2n)/Sp(2n) with fixed subgroup of
 *  type C_n, SO(2n)/SO(2n-1) of type B_{n-1}, and E6/F4 with Levi D4. */
inline const std::vector<ClassRow>& classification_table() {
    static const std::vector<ClassRow> rows = {
        {"group:A1", "A1xA1", "", "A1", "A1", "A1", 2, 1, 2, 4, 2, 3, 1},
        {"group:A2", "A2xA2", "", "A2", "A2", "A2", 6, 1, 6, 36, 6, 8, 2},
        {"group:G2", "G2xG2", "", "G2", "G2", "G2", 12, 1, 12, 144, 12, 14, 2},
        {"AC:2", "A3", "A1xA1", "B2", "A1xA1", "A1", 8, 4, 2, 6, 2, 5, 1},
        {"AC:3", "A5", "A1xA1xA1", "C3", "A3", "A2", 48, 8, 6, 90, 6, 14, 2},
        {"DB:3", "A3", "A1xA1", "B2", "A1xA1", "A1", 8, 4, 2, 6, 2, 5, 1},
        {"DB:4", "D4", "A3", "B3", "A1xA1xA1", "A1", 48, 24, 2, 8, 2, 7, 1},
        {"EF6", "E6", "D4", "F4", "D4", "A2", 1152, 192, 6, 270, 6, 26, 2},
    };
    return rows;
}

inline const std::vector<std::string>& desk_spaces() {
    static const std::vector<std::string> s = {"group:A1", "group:A2", "AC:2", "DB:3"};
    return s;
}

inline const std::vector<std::string>& all_spaces() {
    static const std::vector<std::string> s = {"group:A1", "group:A2", "group:G2", "AC:2",
                                               "AC:3",     "DB:3",     "DB:4",     "EF6"};
    return s;
}

/** Restates a class (typically a graded part carrying a tight inherited bound) as
 *  valid up to the full graph dimension, so products do not collapse early. */
inline EqClass rebound(const EqClass& c) {
    EqClass out(c.graph());
    for (int v = 0; v < c.graph().num_vertices(); ++v) out.set(v, c.at(v).without_truncation());
    return out;
}

// --- single-stage graded-dimension oracle ----------------------------------------

inline void enumerate_monomials(int nvars, int degree, int var, Monomial cur,
                                std::vector<Monomial>& out) {
    if (var == nvars - 1) {
        out.push_back(cur * Monomial::var(var, degree));
        return;
    }
    for (int e = 0; e <= degree; ++e)
        enumerate_monomials(nvars, degree - e, var + 1, cur * Monomial::var(var, e), out);
}

/**
 * Brute-force dimension of the degree-d piece of the class ring in its base-point
 * presentation: one matrix over the raw degree-d monomial basis whose rows are
 * (a) invariance under every nontrivial Levi Weyl element and (b) for every edge
 * (u, v) of the fixed-point graph of X, the condition that the difference of the
 * two translated copies of the polynomial vanishes modulo the edge weight,
 * linearized by a unimodular change of basis sending the weight to the first
 * coordinate. No invariant pre-basis, no staging: dimension = columns - rank.
 */
inline long brute_graded_dimension(const WonderfulVariety& wv, int d) {
    const SymmetricSpace& sp = wv.space();
    const WeylGroup& wg = sp.weyl_g();
    const int n = sp.rank_g();

    std::vector<Monomial> basis;
    enumerate_monomials(n, d, 0, Monomial(), basis);
    std::map<Monomial, int> col;
    for (size_t j = 0; j < basis.size(); ++j) col[basis[j]] = static_cast<int>(j);

    std::vector<RatVec> rows;
    auto push_poly_row = [&](const Polynomial& p) {
        RatVec row(basis.size(), Rat(0));
        bool nonzero = false;
        for (const auto& [m, c] : p.terms()) {
            row[col.at(m)] = c;
            nonzero = nonzero || c != 0;
        }
        if (nonzero) rows.push_back(std::move(row));
    };

    // (a) Levi invariance, one row per basis monomial per nontrivial element.
    for (int w : sp.w_l_elements()) {
        if (w == wg.identity()) continue;
        IntMat mw = wg.matrix(w);
        for (const Monomial& m : basis) {
            Polynomial pm = Polynomial::monomial(n, m, Rat(1));
            push_poly_row(pm.apply_lattice_map(mw) - pm);
        }
    }

    // (b) the divisibility condition of every edge. Substituting x_0 := 0 after the
    // unimodular change keeps every term inside the degree-d monomial basis.
    const GkmGraph& g = wv.x_graph();
    RatVec zeros(static_cast<size_t>(n), Rat(0));
    for (int e = 0; e < g.num_edges(); ++e) {
        const GkmEdge& ed = g.edge(e);
        IntMat mu = wg.matrix(sp.x_reps()[ed.u]);
        IntMat mv = wg.matrix(sp.x_reps()[ed.v]);
        IntVec prim = ed.weight.coords();
        Int c = ed.weight.content();
        for (Int& x : prim) x /= c;
        UnimodularCompletion comp = complete_to_unimodular(prim);
        for (const Monomial& m : basis) {
            Polynomial pm = Polynomial::monomial(n, m, Rat(1));
            Polynomial diff = pm.apply_lattice_map(mu) - pm.apply_lattice_map(mv);
            push_poly_row(diff.apply_lattice_map(comp.M).subst_var(0, zeros));
        }
    }

    if (rows.empty()) return static_cast<long>(basis.size());
    RatMat A(static_cast<int>(rows.size()), static_cast<int>(basis.size()));
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (int j = 0; j < static_cast<int>(basis.size()); ++j) A.at(i, j) = rows[i][j];
    return static_cast<long>(basis.size()) - rat_rank(A);
}

// --- hexagonal toric surface oracle ----------------------------------------------

struct FanOracle {
    long euler = 0;  // number of maximal cones
    long b2 = 0;     // rank of the divisor class group
    Rat c1_squared;  // anticanonical self-intersection
};

/**
 * Fan combinatorics of the smooth complete toric surface on the six hexagon rays
 * (the textbook degree-6 del Pezzo surface, which is the toric slice of the
 * rank-two group case): self-intersections b_i solve v_{i-1} + v_{i+1} + b_i v_i = 0,
 * c_1^2 = sum b_i + 2n, c_2 = n, b_2 = n - 2.
 */
inline FanOracle hexagon_fan_oracle() {
    const std::vector<std::array<long, 2>> rays = {{1, 0},  {1, -1}, {0, -1},
                                                   {-1, 0}, {-1, 1}, {0, 1}};
    const int n = static_cast<int>(rays.size());
    Rat c1sq(0);
    for (int i = 0; i < n; ++i) {
        const auto& prev = rays[(i + n - 1) % n];
        const auto& cur = rays[i];
        const auto& next = rays[(i + 1) % n];
        long sx = prev[0] + next[0], sy = prev[1] + next[1];
        Rat b;
        if (cur[0] != 0) {
            b = make_rat(-sx, cur[0]);
            internal_check(b * Rat(cur[1]) == Rat(-sy), "hexagon relation is inconsistent");
        } else {
            b = make_rat(-sy, cur[1]);
            internal_check(sx == 0, "hexagon relation is inconsistent");
        }
        c1sq += b;
    }
    c1sq += Rat(2 * n);
    return {static_cast<long>(n), static_cast<long>(n - 2), c1sq};
}

// --- randomized sub-top vanishing -------------------------------------------------

/**
 * Draws `count` random valid classes of homogeneous degree strictly below the
 * dimension of X (products of boundary divisor classes and graded Chern parts) and
 * returns how many fail to integrate to exactly zero. Deterministic seed.
 */
inline int random_subtop_failures(int count, unsigned seed,
                                  std::vector<std::string>* log = nullptr) {
    std::mt19937 rng(seed);
    int failures = 0;
    for (const std::string& name : desk_spaces()) {
        SymmetricSpace sp = SymmetricSpace::build(name);
        WonderfulVariety wv(sp);
        const int dim = sp.dim_x();

        std::vector<EqClass> pool;
        std::vector<int> pool_degree;
        for (int i = 0; i < sp.rank_restricted(); ++i) {
            pool.push_back(wv.boundary_x(i));
            pool_degree.push_back(1);
        }
        EqClass ct = wv.chern_x(Bundle::Tangent);
        EqClass cs = wv.chern_x(Bundle::Log);
        for (int k = 1; k <= 3 && k < dim; ++k) {
            pool.push_back(rebound(ct.graded_part(static_cast<uint32_t>(k))));
            pool_degree.push_back(k);
            pool.push_back(rebound(cs.graded_part(static_cast<uint32_t>(k))));
            pool_degree.push_back(k);
        }

        const int per_space = count / static_cast<int>(desk_spaces().size());
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        std::uniform_int_distribution<int> target_dist(1, dim - 1);
        for (int trial = 0; trial < per_space; ++trial) {
            EqClass acc = EqClass::constant(wv.x_graph(), Rat(1));
            int deg = 0;
            int target = target_dist(rng);
            for (int guard = 0; guard < 64 && deg < target; ++guard) {
                size_t j = pick(rng);
                if (deg + pool_degree[j] > target) continue;
                acc = acc * pool[j];
                deg += pool_degree[j];
            }
            if (deg == 0) {
                acc = acc * pool[0];
                deg = pool_degree[0];
            }
            Rat integral = localize_integral(acc);
            if (integral != 0) {
                ++failures;
                if (log)
                    log->push_back(name + ": degree " + std::to_string(deg) +
                                   " class integrates to " + rat_to_string(integral));
            }
        }
    }
    return failures;
}

} // namespace wgkm::testing
