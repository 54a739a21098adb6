#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "wgkm/character.hpp"
#include "wgkm/rational.hpp"

namespace wgkm {

/**
 * Exponent vector packed into two 64-bit words (up to 16 variables, exponents up to 255),
 * with the total degree kept alongside. Variable 0 sits in the most significant byte, so
 * word-wise integer comparison realizes the lexicographic order on exponents.
 */
class Monomial {
public:
    static constexpr int kMaxVars = 16;
    static constexpr int kMaxExponent = 255;

    Monomial() : hi_(0), lo_(0), deg_(0) {}
    static Monomial one() { return Monomial(); }
    static Monomial var(int i, int exp = 1);

    int exponent(int i) const;
    uint32_t degree() const { return deg_; }
    bool is_one() const { return deg_ == 0; }

    Monomial operator*(const Monomial& o) const;
    /** Divides by variable i (exponent must be positive). */
    Monomial divided_by_var(int i) const;

    // Graded lexicographic order: by total degree, then lex on exponents.
    bool operator<(const Monomial& o) const {
        if (deg_ != o.deg_) return deg_ < o.deg_;
        if (hi_ != o.hi_) return hi_ < o.hi_;
        return lo_ < o.lo_;
    }
    bool operator==(const Monomial& o) const { return deg_ == o.deg_ && hi_ == o.hi_ && lo_ == o.lo_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    size_t hash() const;

private:
    uint64_t hi_, lo_;
    uint32_t deg_;
    void set_exponent(int i, int e);
};

/**
 * Sparse multivariate polynomial with exact rational coefficients over a fixed number of
 * variables, kept in canonical form: terms sorted in graded-lex order, no zero coefficients.
 * An optional truncation bound N means the polynomial represents its class in the quotient
 * by all terms of total degree > N; arithmetic combines bounds by taking the minimum.
 */
class Polynomial {
public:
    using Term = std::pair<Monomial, Rat>;

    Polynomial() : nvars_(0) {}
    explicit Polynomial(int nvars, std::optional<uint32_t> trunc = std::nullopt);
    static Polynomial zero(int nvars) { return Polynomial(nvars); }
    static Polynomial constant(int nvars, const Rat& c);
    static Polynomial monomial(int nvars, const Monomial& m, const Rat& c);
    /** The degree-one polynomial representing a character in the working basis. */
    static Polynomial from_character(const Character& chi);
    /** sum_i coeffs[i] * x_i (a rational linear form). */
    static Polynomial linear_form(const RatVec& coeffs);
    /** Canonicalizes an arbitrary term list (sorts, merges, drops zeros). */
    static Polynomial from_terms(int nvars, std::vector<Term> terms,
                                 std::optional<uint32_t> trunc = std::nullopt);

    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return t_; }
    std::optional<uint32_t> truncation() const { return trunc_; }
    bool is_zero() const { return t_.empty(); }
    /** Total degree of the highest term; -1 for the zero polynomial. */
    int degree() const;
    bool is_homogeneous() const;
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
    Rat constant_term() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Rat& c) const;
    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && t_ == o.t_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /** Copy truncated at (or re-bounded to) N: drops terms of degree > N. */
    Polynomial truncated(uint32_t N) const;
    /** Copy with the truncation bound removed (terms unchanged). */
    Polynomial without_truncation() const;
    Polynomial homogeneous_part(uint32_t d) const;
    Polynomial pow(uint32_t e) const;

    /** Exact evaluation at a rational point (one value per variable). */
    Rat eval(const RatVec& point) const;
    /** Substitutes x_k := sum_i lf[i] * x_i (entry k of lf is ignored). */
    Polynomial subst_var(int k, const RatVec& lf) const;
    /** Substitutes every variable by a linear form: x_i := forms[i]. */
    Polynomial subst_linear_forms(const std::vector<Polynomial>& forms) const;
    /**
     * Weyl-type lattice action: the ring map sending the basis character x_j to the
     * character with coordinates column j of A (an integer matrix in the same basis).
     */
    Polynomial apply_lattice_map(const IntMat& A) const;

private:
    int nvars_;
    std::optional<uint32_t> trunc_;
    std::vector<Term> t_;

    void canonicalize_from(std::vector<Term>&& raw);
    static std::optional<uint32_t> combine_trunc(const std::optional<uint32_t>& a,
                                                 const std::optional<uint32_t>& b);
};

/**
 * Exact divisibility of f by the linear form of a nonzero character, decided through a
 * unimodular change of coordinates that sends chi to the first coordinate. On success the
 * quotient satisfies quotient * chi == f exactly (checked internally).
 */
struct LinearDivision {
    bool divisible = false;
    Polynomial quotient;
};
LinearDivision divisible_by_linear(const Polynomial& f, const Character& chi);

/**
 * Quotient-free exact divisibility test: f is divisible by chi iff f vanishes identically
 * on the hyperplane chi = 0 (decided by substituting a parameterization of the hyperplane).
 */
bool divides_linear(const Polynomial& f, const Character& chi);

} // namespace wgkm
