#pragma once

#include <string>
#include <vector>

#include "wgkm/linalg.hpp"

namespace wgkm {

/** One irreducible factor, e.g. A3 or G2. Ranks are validated per letter. */
struct SimpleType {
    char letter = 'A'; // 'A'..'G'
    int rank = 1;

    bool operator==(const SimpleType& o) const { return letter == o.letter && rank == o.rank; }
    bool operator<(const SimpleType& o) const {
        return letter != o.letter ? letter < o.letter : rank < o.rank;
    }
    std::string to_string() const { return std::string(1, letter) + std::to_string(rank); }
};

/**
 * A (possibly empty, possibly reducible) Cartan type. Canonical form resolves the
 * low-rank coincidences B1=C1=A1, C2=B2, D2=A1xA1, D3=A3 and sorts the factors, so
 * equal abstract root systems get equal strings.
 */
struct CartanType {
    std::vector<SimpleType> factors;

    static CartanType parse(const std::string& s); // "A3", "A1xA1", "E6", "" (empty type)
    CartanType canonical() const;
    std::string to_string() const; // canonical factors joined with 'x'; "" for the empty type
    int rank() const;
    long long root_count() const;
    long long weyl_order() const;
    bool operator==(const CartanType& o) const { return factors == o.factors; }
};

/** Canonical type string for a parseable name (test helper and display normalizer). */
std::string canonical_type_string(const std::string& name);

long long simple_root_count(const SimpleType& t);
long long simple_weyl_order(const SimpleType& t);

/**
 * Identifies the abstract Cartan type of a finite set of vectors with a given symmetric
 * positive-definite pairing. Verifies the set is an honest reduced root system (closed
 * under its own reflections, integral Cartan numbers); throws a Computation error if not.
 */
CartanType recognize_cartan_type(const std::vector<RatVec>& roots, const RatMat& form);

} // namespace wgkm
