#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "wgkm/error.hpp"

namespace wgkm {

/** Exact rational p/q in canonical form (gcd(p,q)=1, q>0). */
using Rat = mpq_class;

/** Canonicalized rational from an integer pair. mpq_class(n,d) alone does not canonicalize. */
inline Rat make_rat(long num, long den) {
    require(den != 0, ErrorKind::Computation, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_from_int(long n) { return Rat(n); }

/** "p" if integral, else "p/q"; exact, locale-independent. */
inline std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

/** Parse "p" or "p/q" (exact). Throws on malformed input. */
inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw Error(ErrorKind::Usage, "malformed rational literal: '" + s + "'");
    q.canonicalize();
    return q;
}

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

/** True iff q is an integer that fits in a signed 64-bit JSON-safe integer (|n| < 2^53). */
inline bool rat_fits_json_int(const Rat& q) {
    if (!rat_is_integer(q)) return false;
    static const mpz_class bound("9007199254740991"); // 2^53 - 1
    return abs(q.get_num()) <= bound;
}

inline std::int64_t rat_to_int64(const Rat& q) {
    internal_check(rat_is_integer(q) && q.get_num().fits_slong_p(), "rational does not fit in int64");
    return q.get_num().get_si();
}

} // namespace wgkm
