#ifndef HQI_GFT_HPP
#define HQI_GFT_HPP

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hqi/kernels.hpp"

namespace hqi {

/// coeff * s^{-q} * (log s)^{log_power}. q > 0 is singular, q <= 0 analytic.
struct ExpansionTerm {
  double q = 0.0;
  int log_power = 0;
  double coeff = 0.0;
};

/// coeff * (d_1^2 + ... + d_n^2)^k delta(y). Metadata only.
struct DeltaTerm {
  int laplacian_power = 0;
  double coeff = 0.0;
};

/// Expansion of a radial generalized Fourier transform about s = 0.
struct RadialExpansion {
  int dim = 1;
  std::vector<ExpansionTerm> terms;  // descending q, then descending log_power
  std::vector<DeltaTerm> delta_terms;
  double valid_radius = std::numeric_limits<double>::infinity();
  int truncation_order = 0;  // number of analytic (q <= 0) terms kept

  /// Adds coeff to the (q, log_power) slot, keeping the ordering invariant.
  void add(double q, int log_power, double coeff);

  /// Sum of the s-terms at s in (0, valid_radius). Delta terms are not
  /// evaluated. Throws std::range_error outside the radius.
  double evaluate(double s) const;

  /// Leading (most singular) term; throws std::domain_error when empty.
  const ExpansionTerm& leading() const;

  RadialExpansion scaled(double factor) const;
  RadialExpansion plus(const RadialExpansion& other) const;
};

/// One term per line: `coeff * s^-q [* log s]`, then `coeff * Lap^k delta`.
std::string to_string(const RadialExpansion& e);

/// x with 15 significant digits, trailing zeros dropped.
std::string format_real(double x);

enum class ClassicalFamily { Power, PowerLog, NegPower, NegPowerLog };

/// Transforms of r^beta, r^beta log r, r^{-n-2k}, r^{-n-2k} log r.
///   Power:       param = beta. beta = 2k yields a delta-only expansion;
///                beta = -n-2k is a domain error (use NegPower).
///   PowerLog:    param = beta; the kernel is r^beta log r + correction r^beta.
///   NegPower:    param = k >= 0, the kernel is r^{-n-2k}.
///   NegPowerLog: param = k >= 0, the kernel is r^{-n-2k} log r.
RadialExpansion classical_gft(ClassicalFamily family, double param, int n, double correction = 0.0);

/// a such that r^{2k} log r + a r^{2k} has no delta-supported transform part.
double delta_cancellation_constant(int k, int n);

/// Expansion of the transform of r^m tanh r in n dimensions: the power part
/// plus the analytic series sum_j 2^{1-m} pi^{(n-1)/2} p_j s^{2j}, j <= j_max,
/// stopping early once terms fall below 1e-16 of the partial sum.
/// valid_radius = 1.
RadialExpansion tanh_power_expansion(int m, int n, int j_max = 60);

/// p_j of the analytic series (without the 2^{1-m} pi^{(n-1)/2} factor).
double tanh_power_pj(int m, int n, int j);

struct SeriesResult {
  double value = 0.0;
  double truncation_bound = 0.0;  // |value(k_max+1) - value(k_max)|
};

/// int_0^inf r^{m+n/2} e^{-2r}/(1+e^{-2r}) J_{n/2-1}(s r) dr for odd n, by the
/// alternating series over k of closed-form Laplace integrals.
SeriesResult odd_dim_vhat(int m, int n, double s, int k_max = 20000);

/// Prefactor 2^{1+n/2} pi^{n/2} s^{1-n/2} turning the odd_dim_vhat integral into
/// the n-dimensional transform of r^m (1 - tanh r).
double hankel_prefactor(int n, double s);

/// Expansion of (c/s)^nu K_nu(c s) about s = 0 for integer nu >= 0, through
/// s^{2 order}.
RadialExpansion k_expansion_at_zero(int nu, double c, int order);

/// Same for non-integer nu > 0, from K_nu = pi/2 (I_{-nu} - I_nu)/sin(nu pi).
RadialExpansion k_expansion_fractional(double nu, double c, int order);

/// 2 pi e^{-c s}(1/s^3 + c/s^2), the 1-D transform of the shifted
/// polyharmonic kernel.
double halfint_mq_log_gft(double c, double s);

/// Its expansion 2 pi sum_j (-c)^j (1-j)/j! s^{j-3}, j = 0..order.
RadialExpansion halfint_mq_log_expansion(double c, int order);

struct HankelOracleSpec {
  int dim = 1;
  std::function<double(double)> f;
  double R = 40.0;
  double tol = 1e-13;
};

struct OracleResult {
  double value = 0.0;
  double error = 0.0;
  bool ok = false;
};

/// n-dimensional Fourier transform at radius s > 0 of the radial L1 function f
/// by adaptive quadrature of (2 pi)^{n/2} s^{1-n/2} int_0^R f(r) r^{n/2} J_{n/2-1}(s r) dr.
/// Uses the library Bessel function, independent of specfun.
OracleResult hankel_oracle(const HankelOracleSpec& spec, double s);

/// Analytic expansion of the transform of a radial L1 function from its
/// radial moments: sum_j (-1)^j s^{2j} Gamma(n/2)/(4^j j! Gamma(n/2+j)) omega_n int f r^{2j+n-1}.
RadialExpansion radial_moment_expansion(const std::function<double(double)>& f, int n, double R, int j_max);

enum class TanhFamilyMember { Sech, Sech2, Tanh };

/// Sech: pi sech(pi w/2). Sech2: pi w csch(pi w/2) (2 at w = 0).
/// Tanh: the magnitude pi csch(pi w/2) of the purely imaginary transform
/// -i pi csch(pi w/2); w = 0 is a domain error.
double univariate_tanh_family(TanhFamilyMember which, double omega);

/// Transform of a kernel as a function of s > 0 (closed forms, the odd
/// dimension series, or quadrature of the L1 remainder).
double transform_value(const RadialKernel& k, int n, double s);

/// Expansion of a kernel's transform about 0 with analytic terms through
/// s^{2 order}. For tanh families this is the full transform (power part
/// minus the remainder's analytic series).
RadialExpansion transform_expansion(const RadialKernel& k, int n, int order);

/// Expansion of the power (or power-log) part only; for non-tanh families
/// this equals transform_expansion.
RadialExpansion singular_part_expansion(const RadialKernel& k, int n, int order);

}  // namespace hqi

#endif  // HQI_GFT_HPP
