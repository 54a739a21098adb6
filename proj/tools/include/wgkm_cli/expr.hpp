#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wgkm/wonderful.hpp"

namespace wgkm::cli {

/**
 * One atom of the class-expression language:
 *
 *   c<k>(T|S)    degree-k Chern class of the tangent / log tangent bundle
 *   X<i>         boundary divisor class, i = 1-based simple restricted position
 *   Y<i>,<w>     slice boundary divisor, w = restricted Weyl element name ("e", "s1", ...)
 *   td(T|S)      Todd class (inhomogeneous)
 *   L(<k>)       equivariant line bundle class, k = 0-based index into the q-fibers
 *                outside the Levi subsystem
 *
 * Index ranges are validated against a concrete space at evaluation time,
 * not at parse time.
 */
struct ExprAtom {
    enum class Kind { Chern, BoundaryX, BoundaryY, Todd, Line };

    Kind kind = Kind::Chern;
    int index = 0;              // Chern degree; X/Y simple position (1-based); L index (0-based)
    Bundle bundle = Bundle::Tangent;
    std::string element;        // BoundaryY only: restricted Weyl element name
    int source_pos = 0;         // 1-based offset in the input, for diagnostics

    std::string to_string() const;
    /** Homogeneous degree of the atom; -1 for the inhomogeneous Todd atom. */
    int degree() const;
};

struct ExprTerm {
    ExprAtom atom;
    int exponent = 1;
};

/** A product of powers of atoms: expr := term ("*" term)*, term := atom ("^" uint)?. */
struct ClassExpr {
    std::vector<ExprTerm> terms;

    /** Parses the grammar; malformed input raises a Usage error citing the 1-based position. */
    static ClassExpr parse(const std::string& text);

    /** Canonical form: atoms joined with '*', exponents printed only when > 1. */
    std::string to_string() const;

    /** Total degree, or nullopt when a Todd atom makes the product inhomogeneous. */
    std::optional<int> degree() const;

    /** True when a Y or L atom forces evaluation on the slice. */
    bool on_slice() const;
};

} // namespace wgkm::cli
