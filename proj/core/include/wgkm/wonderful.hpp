#pragma once

#include <string>
#include <vector>

#include "wgkm/gkm.hpp"
#include "wgkm/symmetric_space.hpp"

namespace wgkm {

/** The two vector bundles with named characteristic classes: the tangent bundle and
 *  the log tangent bundle (tangent twisted down along the boundary divisors). */
enum class Bundle { Tangent, Log };

struct CheckResult {
    std::string name;
    bool passed = false;
    bool warning = false; // passed, but with a caveat recorded in detail
    std::string detail;
};

/**
 * The GKM model of the wonderful compactification X attached to a symmetric space,
 * together with the toric slice Y (the closure of the distinguished torus orbit):
 * fixed-point graphs, boundary divisor classes, the line bundles L_beta carried by
 * the normal bundle of Y, and the characteristic classes of the (log) tangent bundle
 * in both direct and boundary-divisor form.
 */
class WonderfulVariety {
public:
    explicit WonderfulVariety(const SymmetricSpace& sp);
    WonderfulVariety(const WonderfulVariety&) = delete;
    WonderfulVariety& operator=(const WonderfulVariety&) = delete;

    const SymmetricSpace& space() const { return *sp_; }
    const GkmGraph& x_graph() const { return xg_; }
    const GkmGraph& y_graph() const { return yg_; }
    /** X-vertex index of the Y-vertex yv. */
    int y_to_x(int yv) const { return y_to_x_[yv]; }

    // --- classes on X ---
    /** Boundary divisor class [X_i]: restricts to w(gamma_i) at every fixed point. */
    EqClass boundary_x(int i) const;
    /** Total Chern class, truncated at max_degree (default dim X). The log bundle is
     *  computed through the boundary twist c(T) * prod_i (1 + [X_i])^{-1}. */
    EqClass chern_x(Bundle b, std::optional<uint32_t> max_degree = std::nullopt) const;
    /** Independent form of c(T(-log)): the plain per-vertex product over the weights
     *  of the open-orbit directions only. Equal to chern_x(Log); kept as a cross-check. */
    EqClass chern_x_plain_log(std::optional<uint32_t> max_degree = std::nullopt) const;
    EqClass todd_x(Bundle b, std::optional<uint32_t> max_degree = std::nullopt) const;

    // --- classes on Y ---
    /** Toric boundary divisor class [Y_{i,w}] for divisor_set()[pos]. */
    EqClass boundary_y(int pos) const;
    /** c_1(L_beta) for the k-th normal line bundle (beta_fibers() order), read off
     *  directly from the fixed-point weights of the normal bundle. */
    EqClass l_beta_direct(int k) const;
    /** c_1(L_beta) expressed through the root and the toric boundary divisors. */
    EqClass l_beta_formula(int k) const;
    /** The constant difference formula - direct; throws Verification unless constant. */
    Character l_beta_twist(int k) const;
    /** The restricted root alpha - theta(alpha) attached to the k-th normal line bundle. */
    Character gamma_beta(int k) const;
    /** Restriction of c(T_X) resp. c(T_X(-log)) to Y in boundary-divisor product form. */
    EqClass chern_y_formula(Bundle b, std::optional<uint32_t> max_degree = std::nullopt) const;
    EqClass todd_y_formula(Bundle b, std::optional<uint32_t> max_degree = std::nullopt) const;
    /** Direct-mode restrictions to Y, computed only at the slice fixed points (the
     *  values agree with restrict_to_y of the X-classes, without building them). */
    EqClass chern_x_on_y(Bundle b, std::optional<uint32_t> max_degree = std::nullopt) const;
    EqClass todd_x_on_y(Bundle b, std::optional<uint32_t> max_degree = std::nullopt) const;
    /** Intrinsic classes of the toric slice itself. */
    EqClass chern_y_toric() const;
    EqClass todd_y_toric() const;

    /** Vertexwise restriction of a class on X to the fixed points lying on Y. */
    EqClass restrict_to_y(const EqClass& cx) const;

    // --- the ring through the base point ---
    /** Value at the distinguished base fixed point (the identity coset). */
    Polynomial value_at_base(const EqClass& cx) const;
    /** The tuple (w.f)_w over the fixed points; inverse to value_at_base on valid data. */
    EqClass extend_from_base(const Polynomial& f) const;
    struct Membership {
        bool ok = false;
        std::string reason; // empty when ok
    };
    /** Does f define a class: W_L-invariance plus the double-reflection congruences. */
    Membership membership(const Polynomial& f) const;

    /** Coefficients over divisor_set() of the principal divisor of a character lying
     *  in the restricted span: entry for (i, w) is the pairing of chi with w(omega_i^vee). */
    std::vector<Rat> divisor_coefficients(const Character& chi) const;

    /** Dimension of the degree-d graded piece of the rational class ring, computed two
     *  ways: through the full fixed-point graph of X and through the slice conditions. */
    struct GradedDim {
        long via_x = 0;
        long via_y = 0;
    };
    GradedDim graded_dimension(int d) const;

private:
    const SymmetricSpace* sp_;
    GkmGraph xg_;
    GkmGraph yg_;
    std::vector<int> pos_nonl_;           // positive root indices outside Phi_L
    std::vector<IntMat> xmat_;            // Weyl matrix per X-vertex
    std::vector<IntMat> ymat_;            // Weyl matrix of the lift per Y-vertex
    std::vector<int> y_to_x_;
    std::vector<Character> gamma_;        // gamma_i per restricted simple position

    void build_x_graph();
    void build_y_graph();
    std::vector<std::vector<Character>> x_tangent_table() const;
    std::vector<std::vector<Character>> x_log_table() const;
    std::vector<Character> boundary_x_table(int i) const;
    std::vector<Character> boundary_y_table(int pos) const;
    std::vector<Character> l_beta_table(int k) const;
    std::vector<std::vector<Character>> gather(const std::vector<std::vector<Character>>& tables) const;
};

/** The named consistency checks behind `verify`; `full` adds the expensive ones. */
std::vector<CheckResult> run_verification(const WonderfulVariety& wv, bool full);

} // namespace wgkm
