#pragma once

#include <cstdint>
#include <vector>

#include "wgkm/rational.hpp"

namespace wgkm {

using Int = long long;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/** Dense integer matrix, row-major. Small sizes only (lattice ranks). */
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}
    static IntMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    Int at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    IntMat transposed() const;
    IntMat operator*(const IntMat& o) const;
    IntVec operator*(const IntVec& v) const;
    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    IntVec row(int r) const;
    IntVec col(int c) const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

/** Dense rational matrix, row-major. */
class RatMat {
public:
    RatMat() : rows_(0), cols_(0) {}
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rat(0)) {}
    static RatMat from(const IntMat& m);
    static RatMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    RatMat operator*(const RatMat& o) const;
    RatVec operator*(const RatVec& v) const;

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

Int gcd_ll(Int a, Int b);
/** gcd of |entries|; 0 for the zero vector. */
Int content(const IntVec& v);
bool is_zero_vec(const IntVec& v);
IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_neg(const IntVec& v);
IntVec vec_scale(const IntVec& v, Int s);

/** Smith normal form: U*A*V = D diagonal with d_i | d_{i+1}, U and V unimodular. */
struct SmithResult {
    IntMat U, V, D;
    int rank = 0; // number of nonzero diagonal entries
};
SmithResult smith_normal_form(const IntMat& A);

/**
 * Completes a primitive integer vector c to a unimodular coordinate change:
 * returns M with M*c = e_1 together with M^{-1} (both integral, det = +-1).
 */
struct UnimodularCompletion {
    IntMat M, Minv;
};
UnimodularCompletion complete_to_unimodular(const IntVec& c);

/** Exact rational inverse; throws Computation error if singular. */
RatMat rat_inverse(const RatMat& A);
int rat_rank(RatMat A);
/** Basis of the right null space {x : A x = 0}, deterministic echelon construction. */
std::vector<RatVec> rat_nullspace(const RatMat& A);
/** Solves A x = b exactly; throws if inconsistent or underdetermined. */
RatVec rat_solve(const RatMat& A, const RatVec& b);

/** Integer matrix inverse for unimodular input (asserts integrality of the result). */
IntMat int_inverse_unimodular(const IntMat& A);

/** True if every entry is an integer; writes the integer matrix to out if so. */
bool rat_mat_is_integral(const RatMat& A, IntMat* out);

} // namespace wgkm
