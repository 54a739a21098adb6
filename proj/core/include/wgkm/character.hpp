#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wgkm/linalg.hpp"

namespace wgkm {

/**
 * A character of the maximal torus, stored as an integer coordinate vector in the
 * chosen simple-root basis. All downstream polynomial arithmetic uses the same basis,
 * so a character doubles as a degree-one polynomial (see Polynomial::from_character).
 */
class Character {
public:
    Character() = default;
    explicit Character(IntVec coords) : c_(std::move(coords)) {}
    static Character zero(int rank) { return Character(IntVec(rank, 0)); }
    static Character basis(int rank, int i);

    int rank() const { return static_cast<int>(c_.size()); }
    Int operator[](int i) const { return c_[i]; }
    const IntVec& coords() const { return c_; }
    bool is_zero() const { return is_zero_vec(c_); }

    Character operator+(const Character& o) const { return Character(vec_add(c_, o.c_)); }
    Character operator-(const Character& o) const { return Character(vec_sub(c_, o.c_)); }
    Character operator-() const { return Character(vec_neg(c_)); }
    Character scaled(Int s) const { return Character(vec_scale(c_, s)); }

    bool operator==(const Character& o) const { return c_ == o.c_; }
    bool operator!=(const Character& o) const { return c_ != o.c_; }
    bool operator<(const Character& o) const { return c_ < o.c_; } // lexicographic; deterministic container order

    /** gcd of the coordinates (0 for the zero character). */
    Int content() const { return wgkm::content(c_); }
    /** Sign-canonical representative of {chi, -chi}: first nonzero coordinate positive. */
    Character sign_canonical() const;
    /** True if this equals o up to overall sign. */
    bool parallel_up_to_sign(const Character& o) const;

    std::string to_string() const;

private:
    IntVec c_;
};

/**
 * A cocharacter (or any element of the dual), stored in the basis dual to the one the
 * characters use, so that the natural pairing is the coordinate dot product.
 */
using Cocharacter = RatVec;

/** Natural pairing <chi, v>; requires matching dimensions. */
Rat pairing(const Character& chi, const Cocharacter& v);

} // namespace wgkm
