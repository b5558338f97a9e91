#ifndef HQI_SPECFUN_HPP
#define HQI_SPECFUN_HPP

#include <cstddef>

namespace hqi::specfun {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double ln2 = 0.69314718055994530941723212145817657;

/// Gamma function. Throws std::domain_error at the poles 0, -1, -2, ...
double gamma(double x);

/// log|Gamma(x)|. Throws std::domain_error at the poles.
double lgamma(double x);

/// Digamma Psi(x) = Gamma'(x)/Gamma(x). Throws std::domain_error at the poles.
double digamma(double x);

/// Trigamma Psi'(x). Throws std::domain_error at the poles.
double trigamma(double x);

/// Generalized binomial coefficient Gamma(a+1)/(Gamma(k+1) Gamma(a-k+1)),
/// computed by the product recurrence so integer a gives exact zeros for k > a.
double binomial(double a, int k);

/// S(sigma) = sum_{k>=1} (-1)^k / k^sigma = -eta(sigma), for sigma > 1.
///
/// Summed with the Cohen-Rodriguez Villegas-Zagier acceleration; the raw
/// partial sums converge far too slowly near sigma = 1.
double alt_zeta_sum(double sigma);

/// Partial sum of the power series of J_nu(z) with `terms` terms:
///   sum_{j<terms} (-1)^j / (j! Gamma(nu+j+1)) (z/2)^{nu+2j}.
/// Requires nu >= -1/2, z >= 0.
double bessel_j_series(double nu, double z, std::size_t terms);

/// J_nu(z) from the power series with the number of terms chosen adaptively.
/// Accumulation is done in extended precision; intended for z <= 20.
double bessel_j(double nu, double z);

/// J_{n/2-1}(z) for odd n via the finite sin/cos form of the half-integer
/// Bessel functions. Throws std::domain_error for even n or z <= 0.
double bessel_j_halfint_closed(int n_dim, double z);

/// Modified Bessel function of the second kind K_nu(z), nu >= 0, z > 0.
double bessel_k(double nu, double z);

/// K_{m+1/2}(z) by its finite closed form.
double bessel_k_halfint(int m, double z);

}  // namespace hqi::specfun

#endif  // HQI_SPECFUN_HPP
