#ifndef HQI_STRANGFIX_HPP
#define HQI_STRANGFIX_HPP

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hqi/gft.hpp"

namespace hqi {

using LatticePoint = std::vector<int>;

enum class SingularityCase { EvenInteger, NonEven, LogLeading };

struct SingularityClass {
  double order = 0.0;       // sigma = n + beta
  SingularityCase kase = SingularityCase::EvenInteger;
  double gamma_frac = 0.0;  // sigma - 2 floor(sigma/2)
  double d0 = 0.0;          // coefficient of the leading log term, if any
  double eta = 0.0;         // offset of that log term from the leading order
};

std::string case_name(SingularityCase c);

/// Reads the singularity order and case from the leading terms.
SingularityClass classify(const RadialExpansion& e);

/// Real coefficients on a finite subset of Z^n.
struct CoeffSeq {
  int dim = 1;
  std::map<LatticePoint, double> support;
  double decay_exponent = 0.0;  // asymptotic decay of the untruncated sequence
  std::string decay_note;

  double at(const LatticePoint& j) const;
  double abs_sum() const;
};

/// `j_1 ... j_n  value` per line, 17 significant digits.
std::string serialize(const CoeffSeq& c);
CoeffSeq parse_coeffs(const std::string& text);

struct MomentSystem {
  int dim = 1;
  int max_degree = 0;
  std::vector<LatticePoint> points;     // columns
  std::vector<LatticePoint> monomials;  // rows (exponent multi-indices)
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

/// Multi-indices of total degree <= d, degree-major and, within a degree,
/// with the first exponent descending: 1, x, y, x^2, xy, y^2, ...
std::vector<LatticePoint> graded_monomials(int dim, int max_degree);

/// Degree used when the caller passes max_degree < 0: 2 sigma when that
/// space has exactly |points| monomials, else 2 sigma - 1.
int default_max_degree(int dim, double sigma, std::size_t n_points);

/// Moment conditions sum_k mu_k k^alpha = b_alpha, |alpha| <= max_degree, so
/// that P(y) = sum mu_k e^{-i k.y} agrees with the non-logarithmic part of
/// 1/ghat through that degree. Requires the EvenInteger case.
MomentSystem build_rhs(const RadialExpansion& e, const std::vector<LatticePoint>& points, int max_degree = -1);

struct SolveInfo {
  double residual = 0.0;
  bool min_norm = false;  // rank deficient but consistent
  int rank = 0;
};

/// Least-squares solve with explicit residual check. Throws
/// std::runtime_error naming the first violated row when inconsistent.
CoeffSeq solve_coeffs(const MomentSystem& sys, SolveInfo* info = nullptr);

enum class GVariant { Sin, Cos };

/// Fourier coefficients f_j of
///   Sin: normalization (sum_i sin^2 y_i)^{exponent/2}
///   Cos: normalization 2^{exponent/2} (sum_i (1 - cos y_i))^{exponent/2}
/// sampled on fft_size^n points, keeping |j_i| <= n_coeffs/2 per axis.
/// fft_size >= n_coeffs. With fft_size = n_coeffs the result is the aliased
/// trigonometric interpolant of G (Nyquist bin split between +-N/2); larger
/// fft_size approaches the true truncated Fourier series.
CoeffSeq g_series_coeffs(double exponent, int dim, GVariant variant, int n_coeffs, int fft_size,
                         double normalization = 1.0);

/// Closed-form coefficient of |2 sin(y/2)|^{2s}:
/// (-1)^j Gamma(2s+1) / (Gamma(s+1+j) Gamma(s+1-j)).
double g_series_oracle(double s, int j);

/// Fourier coefficients of H(y) = 1/(d0 (-log(|sin(y/2)|/2))), H(0) = 0, in 1-D.
CoeffSeq h_series_coeffs(double d0, int n_coeffs, int fft_size);

CoeffSeq convolve(const CoeffSeq& a, const CoeffSeq& b);

/// sum_k mu_k e^{-i k.y}
std::complex<double> trig_eval(const CoeffSeq& c, const std::vector<double>& y);

/// Radial transform of the kernel together with its expansion at 0.
struct TransformModel {
  std::function<double(double)> value;
  RadialExpansion expansion;
};

TransformModel make_transform_model(const RadialKernel& k, int n, int order = 6);

/// Moments sum_k mu_k k^alpha in extended precision.
long double moment(const CoeffSeq& c, const LatticePoint& alpha);

/// P(y) ghat(|y|). Near the origin P is summed from its Taylor series in
/// the moments to avoid cancellation; at y = 0 the removable singularity is
/// evaluated as c0 times the degree-sigma part of P along e_1.
std::complex<double> psi_hat_complex(const CoeffSeq& c, const TransformModel& g, const std::vector<double>& y);
/// Real part of psi_hat_complex; the imaginary part vanishes for coefficient
/// sequences that are even under k -> -k.
double psi_hat(const CoeffSeq& c, const TransformModel& g, const std::vector<double>& y);

struct StrangFixReport {
  double cond_origin = 0.0;   // max |D^alpha (psi_hat - 1)(0)|, |alpha| <= M
  double cond_lattice = 0.0;  // max |D^alpha psi_hat(2 pi j)|, j != 0, |alpha| <= M
  std::vector<std::string> notes;
};

/// Finite-difference check of the Strang-Fix conditions of order M at the
/// origin and at 2 pi j for the given nonzero probes j. The origin step
/// trades the O(step^2 log step) contribution of logarithmic terms against
/// the amplified roundoff of P(y)/|y|^sigma.
StrangFixReport strang_fix_verify(const CoeffSeq& c, const TransformModel& g, int M,
                                  const std::vector<LatticePoint>& probes, double origin_step = 0.05,
                                  double lattice_step = 0.01);

}  // namespace hqi

#endif  // HQI_STRANGFIX_HPP
