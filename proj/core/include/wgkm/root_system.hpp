#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wgkm/cartan.hpp"
#include "wgkm/linalg.hpp"

namespace wgkm {

/**
 * A crystallographic root system realized in an integer ambient lattice with an integral
 * W-invariant positive-definite form. The root list order is fixed at construction
 * (deterministic), so reflection tables and Weyl-group permutations survive a change of
 * positive system; the basis-dependent data (positivity, simple roots, simple-root
 * coordinates, Cartan matrix) can be recomputed via rebase().
 *
 * Concrete models: A_n in the sum-zero sublattice of Z^{n+1}, B_n/C_n/D_n in Z^n
 * (B_n carries the doubled form so the form stays integral), E/F/G in the basis of
 * their own simple roots with the symmetrized Cartan form.
 */
class RootSystem {
public:
    static RootSystem build(const std::string& type_descriptor); // e.g. "A3", "A1xA1", "E6"
    static RootSystem build(const CartanType& type);
    /** Ad-hoc system from explicit data; derives a deterministic default positive system. */
    static RootSystem from_root_list(int ambient, IntMat form, std::vector<IntVec> roots,
                                     std::string descriptor);
    /** Ad-hoc system whose positive system is dictated by a declared simple system. */
    static RootSystem from_simple_system(int ambient, IntMat form, std::vector<IntVec> roots,
                                         std::vector<IntVec> declared_simples,
                                         std::string descriptor);

    int ambient_dim() const { return ambient_; }
    int rank() const { return rank_; }
    const std::string& descriptor() const { return descriptor_; }
    const IntMat& form() const { return form_; }
    int size() const { return static_cast<int>(roots_.size()); }
    const IntVec& root(int i) const { return roots_[i]; }
    const std::vector<IntVec>& roots() const { return roots_; }
    int index_of(const IntVec& v) const; // -1 if absent

    Int inner(const IntVec& a, const IntVec& b) const;
    /** Cartan number <x, alpha^vee> = 2(x,alpha)/(alpha,alpha); exact, asserts integrality. */
    Int cartan_int(const IntVec& x, int root_idx) const;
    IntVec reflect_vec(const IntVec& x, int root_idx) const;
    /** Reflection s_{root a} as a permutation of root indices. */
    const std::vector<uint16_t>& reflection(int a) const { return refl_[a]; }
    int negative_of(int i) const { return neg_[i]; }

    bool is_positive(int i) const { return positive_[i]; }
    int num_positive() const { return static_cast<int>(size() / 2); }
    const std::vector<int>& simple_indices() const { return simples_; }
    /** Coordinates of root i in the current simple basis (integers). */
    const IntVec& delta_coords(int i) const { return delta_[i]; }
    /** cartan().at(i,j) = <alpha_j, alpha_i^vee>. */
    const IntMat& cartan() const { return cartan_; }
    /** Matrix whose column j is the ambient vector of simple root j. */
    IntMat simple_matrix() const;

    /**
     * Re-derives the positive system from per-root sort keys: root i is positive iff
     * keys[i] is lexicographically positive. Every key must be nonzero.
     */
    void rebase(const std::vector<std::pair<Rat, Rat>>& keys);

    /** Roots as rational vectors together with the rational form (recognition input). */
    std::vector<RatVec> roots_rational() const;
    RatMat form_rational() const { return RatMat::from(form_); }

private:
    int ambient_ = 0;
    int rank_ = 0;
    std::string descriptor_;
    IntMat form_;
    std::vector<IntVec> roots_;
    std::map<IntVec, int> index_;
    std::vector<int> neg_;
    std::vector<std::vector<uint16_t>> refl_;

    std::vector<bool> positive_;
    std::vector<int> simples_;
    std::vector<IntVec> delta_;
    IntMat cartan_;

    void finalize_tables();                       // neg_, refl_, rank_
    void derive_default_basis();                  // generic-functional positive system
    void derive_basis_from_positive();            // simples_, delta_, cartan_ from positive_
    void set_positive_from_simples(const std::vector<IntVec>& declared);
};

} // namespace wgkm
