#ifndef HQI_QUADRATURE_HPP
#define HQI_QUADRATURE_HPP

#include <functional>

namespace hqi::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  int evaluations = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod integration on [a, b].
/// Intervals with the largest error estimate are bisected until the summed
/// estimate is below max(abs_tol, rel_tol*|I|) or max_intervals is reached.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-14, double rel_tol = 1e-12, int max_intervals = 2000);

/// Splits [a, b] into panels no wider than `panel` and integrates each
/// adaptively. Useful for oscillatory integrands where a single adaptive
/// start can miss structure.
Result panels(const std::function<double(double)>& f, double a, double b, double panel,
              double abs_tol = 1e-14, double rel_tol = 1e-12);

}  // namespace hqi::quad

#endif  // HQI_QUADRATURE_HPP
