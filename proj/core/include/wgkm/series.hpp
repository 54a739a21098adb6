#pragma once

#include <vector>

#include "wgkm/polynomial.hpp"

namespace wgkm {

/**
 * Coefficients c_0..c_N of the Todd series x/(1-e^{-x}) = 1 + x/2 + x^2/12 - x^4/720 + ...
 * computed by exact power-series inversion of (1-e^{-x})/x = sum_k (-1)^k x^k/(k+1)!.
 */
std::vector<Rat> todd_series_coeffs(uint32_t N);

/** Coefficients of the reciprocal series (1-e^{-x})/x, i.e. 1/todd. */
std::vector<Rat> todd_inverse_series_coeffs(uint32_t N);

/**
 * The Todd factor of a character: the series evaluated at the linear form of chi,
 * truncated at total degree N. For chi = 0 this is the constant 1.
 */
Polynomial todd_factor(const Character& chi, uint32_t N);

/** Truncated geometric series 1/(1 + chi) = sum_k (-chi)^k, degree <= N. */
Polynomial geometric_inverse_factor(const Character& chi, uint32_t N);

/** sum_k coeffs[k] * chi^k truncated at N (helper shared by the factor builders). */
Polynomial series_in_character(const std::vector<Rat>& coeffs, const Character& chi, uint32_t N);

} // namespace wgkm
