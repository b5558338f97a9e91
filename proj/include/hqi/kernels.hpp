#ifndef HQI_KERNELS_HPP
#define HQI_KERNELS_HPP

#include <functional>
#include <string>

namespace hqi {

enum class Family {
  Power,              // r^beta
  PowerLog,           // r^beta log r + correction r^beta
  TanhPower,          // r^beta tanh^alpha r
  TanhPowerLog,       // (r^beta log r + correction r^beta) tanh^alpha r
  GenMultiquadric,    // (r^{2 mq_beta} + c^{2 mq_beta})^mq_gamma
  GenTPSLog,          // (r^{2 mq_beta} + c^{2 mq_beta})^mq_gamma log(r^{2 mq_beta} + c^{2 mq_beta})
  ShiftedTPS,         // (c^2+r^2) log sqrt(c^2+r^2) - c^2 log c
  PolyharmonicShift,  // ShiftedTPS - r^2 log c
};

struct RadialKernel {
  Family family = Family::Power;
  double beta = 0.0;
  double alpha = 0.0;
  double c = 0.0;
  double mq_beta = 1.0;
  double mq_gamma = 0.5;
  double correction = 0.0;

  static RadialKernel power(double beta);
  static RadialKernel power_log(double beta, double correction = 0.0);
  static RadialKernel tanh_power(double beta, double alpha);
  static RadialKernel tanh_power_log(double beta, double alpha, double correction);
  static RadialKernel gen_multiquadric(double c, double mq_beta, double mq_gamma);
  static RadialKernel gen_tps_log(double c, double mq_beta, double mq_gamma);
  static RadialKernel shifted_tps(double c);
  static RadialKernel polyharmonic_shift(double c);
};

/// Throws std::invalid_argument when the parameters violate the family's
/// admissibility rules. Every factory calls this.
void validate(const RadialKernel& k);

/// phi(r) for r >= 0, with continuous limits at r = 0.
double eval(const RadialKernel& k, double r);

std::string family_name(Family f);
Family parse_family(const std::string& name);
std::string describe(const RadialKernel& k);

/// g = u - v with u the power (or power-log) part carrying the generalized
/// transform and v an exponentially decaying L1 function.
struct KernelSplit {
  RadialKernel singular_part;
  std::function<double(double)> l1_remainder;
};

/// Only TanhPower and TanhPowerLog have a nontrivial split; other families
/// raise std::invalid_argument.
KernelSplit split(const RadialKernel& k);

/// r^beta (1 - tanh^alpha r) evaluated stably.
double tanh_remainder(double beta, double alpha, double r);

struct SeriesValue {
  double value = 0.0;
  double truncation_estimate = 0.0;
};

/// r^beta (1 - tanh^alpha r) from the double series in q = e^{-2r}:
///   2 r^beta (sum_{j<terms} (-q)^j)^alpha sum_{k odd, k < 2 terms} binom(alpha,k) q^k.
SeriesValue v_remainder_series(double beta, double alpha, double r, int terms);

}  // namespace hqi

#endif  // HQI_KERNELS_HPP
