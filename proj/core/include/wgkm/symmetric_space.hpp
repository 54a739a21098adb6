#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wgkm/cartan.hpp"
#include "wgkm/character.hpp"
#include "wgkm/linalg.hpp"
#include "wgkm/root_system.hpp"
#include "wgkm/weyl.hpp"

namespace wgkm {

/**
 * One factor of a space descriptor:
 *   group:T   the group T x T / diagonal (any simple type T),
 *   AC:n      SL(2n) / Sp(2n), n >= 2,
 *   DB:n      SO(2n) / SO(2n-1), n >= 3,
 *   EF6       E6 / F4.
 */
struct SpaceFactor {
    enum class Family { Group, AC, DB, EF6 };
    Family family = Family::Group;
    SimpleType group_type; // meaningful for Family::Group only
    int n = 0;             // meaningful for AC / DB

    std::string to_string() const;
};

/** A comma-separated product of factors, e.g. "group:A2" or "AC:2,DB:3". */
struct SpaceDescriptor {
    std::vector<SpaceFactor> factors;

    /** Parses the descriptor grammar; malformed input raises a Usage error citing the position. */
    static SpaceDescriptor parse(const std::string& s);
    std::string to_string() const;
};

/** Fiber of the lattice restriction q over one nonzero restricted-lattice value. */
struct QFiber {
    IntVec beta;           // q(alpha), coordinates in the restricted lattice Z^{rank_k}
    int alpha = -1;        // root index of the chosen representative (positive, or the L-root)
    int theta_alpha = -1;  // equals alpha exactly when the fiber is a single L-root
    bool in_l = false;     // true: fiber = {alpha} inside Phi_L; false: fiber = {alpha, theta(alpha)}
};

/**
 * The complete fixed-point combinatorics of one wonderful symmetric variety of
 * minimal rank: the ambient root system with its involution theta, the Levi
 * subsystem Phi_L of theta-fixed roots, the lattice restriction q with its fibers,
 * the restricted root system Phi_{G/K} spanned by gamma = alpha - theta(alpha),
 * and the Weyl-group layers W_L <= W_K <= W_G with their coset representatives.
 *
 * Construction validates the whole structure (involution axioms, minimal-rank
 * fiber shapes, strong orthogonality, subgroup orders, coset counts) and throws
 * a Computation error when anything fails, so a successfully built object can be
 * trusted downstream.
 */
class SymmetricSpace {
public:
    SymmetricSpace(const SymmetricSpace&) = delete;
    SymmetricSpace& operator=(const SymmetricSpace&) = delete;
    SymmetricSpace(SymmetricSpace&&) = default;

    static SymmetricSpace build(const std::string& descriptor, bool allow_cache = true);
    static SymmetricSpace build(const SpaceDescriptor& descriptor, bool allow_cache = true);

    const SpaceDescriptor& descriptor() const { return desc_; }
    std::string name() const { return desc_.to_string(); }

    // --- ambient group G -----------------------------------------------------
    const RootSystem& phi_g() const { return *g_; }
    const WeylGroup& weyl_g() const { return *wg_; }
    int rank_g() const { return g_->rank(); }
    CartanType type_g() const { return type_g_; }

    // --- involution ----------------------------------------------------------
    /** theta on the character lattice in simple-root coordinates. */
    const IntMat& theta_delta() const { return theta_delta_; }
    /** Image root index of root i under theta. */
    int theta_root(int i) const { return theta_perm_[i]; }
    Character theta_char(const Character& chi) const { return Character(theta_delta_ * chi.coords()); }

    // --- Levi subsystem Phi_L ------------------------------------------------
    bool is_l_root(int i) const { return theta_perm_[i] == i; }
    /** Simple positions j of Delta_G with theta(alpha_j) = alpha_j, ascending. */
    const std::vector<int>& delta_l_positions() const { return delta_l_pos_; }
    /** The complementary simple positions, ascending. */
    const std::vector<int>& delta_g_minus_l_positions() const { return delta_gl_pos_; }
    CartanType type_l() const { return type_l_; }

    // --- lattice restriction q and Phi_K --------------------------------------
    int rank_k() const { return rank_k_; }
    /** Matrix of q : X(T) -> X(T_K), rank_k x rank_g, in simple-root coordinates. */
    const IntMat& q_matrix() const { return q_; }
    IntVec q_of(const Character& chi) const { return q_ * chi.coords(); }
    /** Fibers of q over the nonzero values q(Phi_G), deterministic order. */
    const std::vector<QFiber>& fibers() const { return fibers_; }
    /** Index into fibers() of a restricted-lattice value, -1 if not hit by a root. */
    int fiber_index(const IntVec& beta) const;
    CartanType type_k() const { return type_k_; }
    CartanType type_k_minus_l() const { return type_kl_; }
    /** Fiber indices of the Phi_K \ Phi_L values, ordered by representative root index. */
    const std::vector<int>& beta_fibers() const { return beta_fibers_; }
    int num_betas() const { return static_cast<int>(beta_fibers_.size()); }

    // --- restricted root system Phi_{G/K} --------------------------------------
    /** Realized inside the character lattice of G: roots are the characters gamma. */
    const RootSystem& restricted() const { return *rest_; }
    const WeylGroup& weyl_restricted() const { return *wrest_; }
    int rank_restricted() const { return rest_->rank(); }
    CartanType type_restricted() const { return type_rest_; }
    /** gamma = alpha - theta(alpha) of a G-root, as a character. */
    Character gamma_of(int g_root) const;
    /** The i-th simple restricted root gamma_i, as a character. */
    Character gamma_simple(int i) const;
    /** A position j in Delta_G \ Delta_L with q-image hitting gamma_i (smallest such). */
    int g_simple_for_restricted(int i) const { return g_simple_for_rest_[i]; }
    /** Root index in restricted() of a character lying on the restricted system, -1 otherwise. */
    int restricted_index_of(const Character& chi) const;

    // --- Weyl layers ------------------------------------------------------------
    /** Elements of W_K = centralizer of theta, ascending element ids. */
    const std::vector<int>& w_k_elements() const { return wk_; }
    /** Elements of W_L = W(Phi_L), ascending element ids. */
    const std::vector<int>& w_l_elements() const { return wl_; }
    bool in_w_k(int e) const { return wk_mask_[e]; }
    bool in_w_l(int e) const { return wl_mask_[e]; }
    long order_w_g() const { return wg_->order(); }
    long order_w_k() const { return static_cast<long>(wk_.size()); }
    long order_w_l() const { return static_cast<long>(wl_.size()); }
    long order_w_gk() const { return wrest_->order(); }

    /** Minimal-length representatives of W_G / W_L: the X-fixed-point labels. */
    const std::vector<int>& x_reps() const { return x_reps_; }
    /** The representatives lying in W_K: the Y-fixed-point labels (subset of x_reps). */
    const std::vector<int>& y_reps() const { return y_reps_; }
    /** Minimal representative of e W_L. */
    int coset_rep(int e) const { return wg_->min_coset_rep(e, delta_l_pos_); }
    /** Position of a representative inside x_reps()/y_reps(), -1 if absent. */
    int x_index(int rep) const;
    int y_index(int rep) const;

    /** Image of a W_K element in the restricted Weyl group (kernel W_L). */
    int restricted_elem_of(int wk_elem) const;
    /** The unique y-rep mapping to a restricted element. */
    int lift_of_restricted(int rest_elem) const { return lift_[rest_elem]; }

    /** Action of a W_G element on a character, via the lattice matrix. */
    Character act(int e, const Character& chi) const {
        return Character(wg_->matrix(e) * chi.coords());
    }
    /** Action of a restricted-Weyl element on a character in the restricted span. */
    Character act_restricted(int rest_elem, const Character& chi) const;
    /** Coordinates of a restricted-span character in the simple restricted basis. */
    RatVec restricted_coords(const Character& chi) const;

    // --- boundary-divisor index set E(Phi) ----------------------------------------
    struct DivisorIndex {
        int i;  // simple restricted position, 0-based
        int w;  // restricted-Weyl element id, w in W^i
    };
    /** Pairs (i, w) with w minimal in w W_{Delta - {i}}; ordered by (i, element id). */
    const std::vector<DivisorIndex>& divisor_set() const { return divisors_; }
    int divisor_count() const { return static_cast<int>(divisors_.size()); }
    /** Position of (i, w) inside divisor_set(), -1 when w is not in W^i. */
    int divisor_position(int i, int w) const;
    /** The members of W^i, ascending restricted element ids. */
    const std::vector<int>& w_upper(int i) const { return w_upper_[i]; }

    // --- dimensions -----------------------------------------------------------------
    int dim_x() const { return dim_x_; }
    int dim_y() const { return rest_->rank(); }

    // --- summary for display ----------------------------------------------------------
    struct Report {
        std::string descriptor;
        std::string type_g, type_l, type_k, type_k_minus_l, type_restricted;
        int rank_g = 0, rank_k = 0, rank_restricted = 0;
        long order_w_g = 0, order_w_k = 0, order_w_l = 0, order_w_gk = 0;
        int x_vertices = 0, y_vertices = 0;
        int dim_x = 0, dim_y = 0;
        int num_betas = 0;      // |Phi_K - Phi_L|
        int num_divisors = 0;   // |E(Phi)|
    };
    Report report() const;

private:
    SymmetricSpace() = default;

    void assemble(const SpaceDescriptor& desc);
    void adapt_basis();
    void build_theta_tables();
    void build_quotient();
    void build_restricted();
    void build_weyl_layers(bool allow_cache);
    void build_divisor_set();
    void classify_types();
    void validate();

    SpaceDescriptor desc_;
    std::unique_ptr<RootSystem> g_;
    std::unique_ptr<WeylGroup> wg_;
    RatMat theta_amb_;
    IntMat theta_delta_;
    std::vector<int> theta_perm_;
    std::vector<int> expected_rank_drop_; // per factor, for validation

    std::vector<int> delta_l_pos_, delta_gl_pos_;
    int rank_k_ = 0;
    IntMat q_;
    std::vector<QFiber> fibers_;
    std::map<IntVec, int> fiber_of_;
    std::vector<int> beta_fibers_;

    std::unique_ptr<RootSystem> rest_;
    std::unique_ptr<WeylGroup> wrest_;
    std::vector<int> g_simple_for_rest_;
    RatMat rest_coords_; // left inverse of the simple restricted basis matrix

    std::vector<int> wk_, wl_;
    std::vector<char> wk_mask_, wl_mask_;
    std::vector<int> x_reps_, y_reps_;
    std::map<int, int> x_index_, y_index_;
    std::vector<int> rest_of_wk_; // indexed by W_G element id, -1 outside W_K
    std::vector<int> lift_;       // restricted element -> y rep

    std::vector<std::vector<int>> w_upper_;
    std::vector<DivisorIndex> divisors_;
    std::map<std::pair<int, int>, int> divisor_pos_;

    int dim_x_ = 0;
    CartanType type_g_, type_l_, type_k_, type_kl_, type_rest_;
};

} // namespace wgkm
