#ifndef HQI_QUASI_HPP
#define HQI_QUASI_HPP

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hqi/kernels.hpp"
#include "hqi/strangfix.hpp"

namespace hqi {

using Point = std::vector<double>;
using PointFn = std::function<double(const Point&)>;

/// psi(x) = sum_k mu_k g(|x - k|).
struct QuasiLagrange {
  RadialKernel kernel;
  CoeffSeq coeffs;
  int dim = 1;
  double decay_exponent = 0.0;  // |psi(x)| = O(|x|^-decay_exponent), metadata
  std::string decay_note;
};

/// Direct finite sum in double precision.
double eval_psi(const QuasiLagrange& q, const Point& x);

/// psi on the lattice (1/denominator) Z^n inside [-extent, extent]^n, filled
/// lazily with exact values. Arguments off that lattice (or outside the box)
/// are evaluated exactly without being stored. No interpolation is done.
class PsiCache {
 public:
  PsiCache(PointFn psi, int dim, int denominator, double extent);

  double operator()(const Point& t);

  std::size_t hits() const { return hits_; }
  std::size_t fallbacks() const { return fallbacks_; }
  int denominator() const { return denom_; }

 private:
  PointFn psi_;
  int dim_;
  int denom_;
  long half_;  // nodes per axis = 2 half_ + 1
  std::vector<double> values_;
  std::vector<char> filled_;
  std::size_t hits_ = 0;
  std::size_t fallbacks_ = 0;
};

struct Box {
  Point lo;
  Point hi;
};

/// Q_h f(x) = sum_j f(hj) psi(x/h - j) over lattice points hj in sample_domain
/// with |x/h - j| <= truncation_radius.
struct QuasiInterpolant {
  PointFn psi;  // usually eval_psi bound to a QuasiLagrange, or a PsiCache
  int dim = 1;
  double h = 0.0;
  Box sample_domain;
  PointFn target;
  double truncation_radius = std::numeric_limits<double>::infinity();  // lattice units
};

double quasi_interpolate(const QuasiInterpolant& qi, const Point& x);

struct Grid {
  std::vector<Point> points;
  std::string description;
};

/// n uniform points on [a, b] (n >= 2).
Grid uniform_grid_1d(double a, double b, int n);

/// n x n tensor grid on [a, b]^2, first coordinate slowest.
Grid uniform_grid_2d(double a, double b, int n);

struct ErrorReport {
  double max_error = 0.0;
  double rmse = 0.0;
  std::string grid;
  std::size_t n_points = 0;
  double seconds = 0.0;
  std::vector<double> f;   // target values, grid order
  std::vector<double> qf;  // quasi-interpolant values
};

/// Evaluates Q_h f on the grid. Target samples f(hj) are computed once per
/// lattice point.
ErrorReport error_report(const QuasiInterpolant& qi, const Grid& grid);

/// CSV with columns x[,y],f,Qf,abs_err.
std::string error_csv(const Grid& grid, const ErrorReport& r);

struct SweepResult {
  std::vector<double> h;
  std::vector<double> max_error;
  double slope = 0.0;  // least-squares slope of log(max error) against log h
};

SweepResult convergence_sweep(const std::function<QuasiInterpolant(double)>& make, const std::vector<double>& hs,
                              const Grid& grid);

/// psi(t) = (1/pi) int_0^y_max psi_hat(y) cos(t y) dy for an even, integrable
/// 1-D psi_hat whose only non-smooth points are multiples of 2 pi.
double fourier_psi_1d(const std::function<double(double)>& psi_hat, double t, double y_max, double tol = 1e-12);

}  // namespace hqi

#endif  // HQI_QUASI_HPP
