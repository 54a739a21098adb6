#include "wgkm/series.hpp"

namespace wgkm {

namespace {

// a_k = (-1)^k / (k+1)!  -- the series (1-e^{-x})/x.
std::vector<Rat> reciprocal_coeffs(uint32_t N) {
    std::vector<Rat> a(N + 1);
    Rat fact(1); // (k+1)! built up incrementally
    for (uint32_t k = 0; k <= N; ++k) {
        fact *= Rat(static_cast<long>(k + 1));
        a[k] = (k % 2 == 0 ? Rat(1) : Rat(-1)) / fact;
    }
    return a;
}

} // namespace

std::vector<Rat> todd_inverse_series_coeffs(uint32_t N) { return reciprocal_coeffs(N); }

std::vector<Rat> todd_series_coeffs(uint32_t N) {
    // Invert a(x) with a_0 = 1: t_0 = 1, t_n = -sum_{j=1..n} a_j t_{n-j}.
    std::vector<Rat> a = reciprocal_coeffs(N);
    std::vector<Rat> t(N + 1);
    t[0] = 1;
    for (uint32_t n = 1; n <= N; ++n) {
        Rat s(0);
        for (uint32_t j = 1; j <= n; ++j) s += a[j] * t[n - j];
        t[n] = -s;
    }
    return t;
}

Polynomial series_in_character(const std::vector<Rat>& coeffs, const Character& chi, uint32_t N) {
    Polynomial lin = Polynomial::from_character(chi).truncated(N);
    Polynomial acc = Polynomial::constant(chi.rank(), coeffs.empty() ? Rat(0) : coeffs[0]).truncated(N);
    Polynomial power = Polynomial::constant(chi.rank(), Rat(1)).truncated(N);
    for (uint32_t k = 1; k < coeffs.size() && k <= N; ++k) {
        power = power * lin;
        if (power.is_zero()) break;
        acc = acc + power.scaled(coeffs[k]);
    }
    return acc;
}

Polynomial todd_factor(const Character& chi, uint32_t N) {
    if (chi.is_zero()) return Polynomial::constant(chi.rank(), Rat(1)).truncated(N);
    return series_in_character(todd_series_coeffs(N), chi, N);
}

Polynomial geometric_inverse_factor(const Character& chi, uint32_t N) {
    std::vector<Rat> geo(N + 1);
    for (uint32_t k = 0; k <= N; ++k) geo[k] = (k % 2 == 0 ? Rat(1) : Rat(-1));
    return series_in_character(geo, chi, N);
}

} // namespace wgkm
