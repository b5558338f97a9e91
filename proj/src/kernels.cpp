#include "hqi/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hqi/specfun.hpp"

namespace hqi {

namespace {

bool is_nonneg_integer(double x) { return x >= 0.0 && x == std::floor(x); }

bool is_even_positive_integer(double x) { return x > 0.0 && x == std::floor(x) && std::fmod(x, 2.0) == 0.0; }

// 1 - tanh^alpha r without cancellation at large r.
double one_minus_tanh_pow(double alpha, double r) {
  const double q = std::exp(-2.0 * r);
  const double one_minus_tanh = 2.0 * q / (1.0 + q);
  if (alpha == 1.0) return one_minus_tanh;
  if (r == 0.0) return alpha > 0.0 ? 1.0 : 0.0;
  return -std::expm1(alpha * std::log1p(-one_minus_tanh));
}

double pow_at(double r, double beta) {
  if (r == 0.0) return beta == 0.0 ? 1.0 : 0.0;
  return std::pow(r, beta);
}

}  // namespace

RadialKernel RadialKernel::power(double beta) {
  RadialKernel k;
  k.family = Family::Power;
  k.beta = beta;
  validate(k);
  return k;
}

RadialKernel RadialKernel::power_log(double beta, double correction) {
  RadialKernel k;
  k.family = Family::PowerLog;
  k.beta = beta;
  k.correction = correction;
  validate(k);
  return k;
}

RadialKernel RadialKernel::tanh_power(double beta, double alpha) {
  RadialKernel k;
  k.family = Family::TanhPower;
  k.beta = beta;
  k.alpha = alpha;
  validate(k);
  return k;
}

RadialKernel RadialKernel::tanh_power_log(double beta, double alpha, double correction) {
  RadialKernel k;
  k.family = Family::TanhPowerLog;
  k.beta = beta;
  k.alpha = alpha;
  k.correction = correction;
  validate(k);
  return k;
}

RadialKernel RadialKernel::gen_multiquadric(double c, double mq_beta, double mq_gamma) {
  RadialKernel k;
  k.family = Family::GenMultiquadric;
  k.c = c;
  k.mq_beta = mq_beta;
  k.mq_gamma = mq_gamma;
  validate(k);
  return k;
}

RadialKernel RadialKernel::gen_tps_log(double c, double mq_beta, double mq_gamma) {
  RadialKernel k;
  k.family = Family::GenTPSLog;
  k.c = c;
  k.mq_beta = mq_beta;
  k.mq_gamma = mq_gamma;
  validate(k);
  return k;
}

RadialKernel RadialKernel::shifted_tps(double c) {
  RadialKernel k;
  k.family = Family::ShiftedTPS;
  k.c = c;
  validate(k);
  return k;
}

RadialKernel RadialKernel::polyharmonic_shift(double c) {
  RadialKernel k;
  k.family = Family::PolyharmonicShift;
  k.c = c;
  validate(k);
  return k;
}

void validate(const RadialKernel& k) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument(family_name(k.family) + ": " + why);
  };
  switch (k.family) {
    case Family::Power:
    case Family::PowerLog:
      if (!std::isfinite(k.beta)) fail("beta must be finite");
      break;
    case Family::TanhPower:
      if (k.alpha < 0.0) fail("alpha must be >= 0");
      if (!(k.alpha + k.beta > 0.0)) fail("alpha + beta must be > 0");
      break;
    case Family::TanhPowerLog:
      if (k.alpha < 0.0) fail("alpha must be >= 0");
      if (!(k.alpha + k.beta > 0.0)) fail("alpha + beta must be > 0");
      if (!is_even_positive_integer(k.beta)) fail("beta must be an even positive integer");
      break;
    case Family::GenMultiquadric:
    case Family::GenTPSLog:
      if (!(k.c > 0.0)) fail("c must be > 0");
      if (!(k.mq_beta > 0.0)) fail("mq_beta must be > 0");
      if (is_nonneg_integer(k.mq_gamma)) fail("mq_gamma must not be a nonnegative integer");
      break;
    case Family::ShiftedTPS:
    case Family::PolyharmonicShift:
      if (!(k.c > 0.0)) fail("c must be > 0");
      break;
  }
}

double eval(const RadialKernel& k, double r) {
  if (r < 0.0 || std::isnan(r)) throw std::domain_error("eval: r must be >= 0");
  switch (k.family) {
    case Family::Power:
      return pow_at(r, k.beta);
    case Family::PowerLog:
      if (r == 0.0) {
        if (k.beta > 0.0) return 0.0;
        throw std::domain_error("eval: log kernel at r = 0 requires beta > 0");
      }
      return std::pow(r, k.beta) * (std::log(r) + k.correction);
    case Family::TanhPower:
      if (r == 0.0) return 0.0;
      return std::pow(r, k.beta) * std::pow(std::tanh(r), k.alpha);
    case Family::TanhPowerLog:
      if (r == 0.0) return 0.0;
      return std::pow(r, k.beta) * (std::log(r) + k.correction) * std::pow(std::tanh(r), k.alpha);
    case Family::GenMultiquadric: {
      const double b2 = 2.0 * k.mq_beta;
      return std::pow(pow_at(r, b2) + std::pow(k.c, b2), k.mq_gamma);
    }
    case Family::GenTPSLog: {
      const double b2 = 2.0 * k.mq_beta;
      const double base = pow_at(r, b2) + std::pow(k.c, b2);
      return std::pow(base, k.mq_gamma) * std::log(base);
    }
    case Family::ShiftedTPS: {
      const double c2 = k.c * k.c;
      const double t = c2 + r * r;
      return 0.5 * t * std::log(t) - c2 * std::log(k.c);
    }
    case Family::PolyharmonicShift: {
      const double c2 = k.c * k.c;
      const double t = c2 + r * r;
      // (c^2+r^2)(log sqrt(c^2+r^2) - log c), written to keep r -> 0 exact.
      return 0.5 * t * std::log1p(r * r / c2);
    }
  }
  throw std::logic_error("eval: unknown family");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Power: return "power";
    case Family::PowerLog: return "powerlog";
    case Family::TanhPower: return "tanhpow";
    case Family::TanhPowerLog: return "tanhpowlog";
    case Family::GenMultiquadric: return "genmq";
    case Family::GenTPSLog: return "gentpslog";
    case Family::ShiftedTPS: return "shiftedtps";
    case Family::PolyharmonicShift: return "polyshift";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::Power, Family::PowerLog, Family::TanhPower, Family::TanhPowerLog,
                   Family::GenMultiquadric, Family::GenTPSLog, Family::ShiftedTPS,
                   Family::PolyharmonicShift}) {
    if (family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown kernel family '" + name + "'");
}

std::string describe(const RadialKernel& k) {
  std::ostringstream os;
  os.precision(17);
  os << family_name(k.family);
  switch (k.family) {
    case Family::Power:
      os << " beta=" << k.beta;
      break;
    case Family::PowerLog:
      os << " beta=" << k.beta << " correction=" << k.correction;
      break;
    case Family::TanhPower:
      os << " beta=" << k.beta << " alpha=" << k.alpha;
      break;
    case Family::TanhPowerLog:
      os << " beta=" << k.beta << " alpha=" << k.alpha << " correction=" << k.correction;
      break;
    case Family::GenMultiquadric:
    case Family::GenTPSLog:
      os << " c=" << k.c << " mq_beta=" << k.mq_beta << " mq_gamma=" << k.mq_gamma;
      break;
    case Family::ShiftedTPS:
    case Family::PolyharmonicShift:
      os << " c=" << k.c;
      break;
  }
  return os.str();
}

double tanh_remainder(double beta, double alpha, double r) {
  if (r == 0.0) return beta > 0.0 ? 0.0 : (beta == 0.0 ? one_minus_tanh_pow(alpha, 0.0) : INFINITY);
  return std::pow(r, beta) * one_minus_tanh_pow(alpha, r);
}

KernelSplit split(const RadialKernel& k) {
  if (k.family == Family::TanhPower) {
    const double beta = k.beta;
    const double alpha = k.alpha;
    return {RadialKernel::power(beta), [beta, alpha](double r) { return tanh_remainder(beta, alpha, r); }};
  }
  if (k.family == Family::TanhPowerLog) {
    const double beta = k.beta;
    const double alpha = k.alpha;
    const double a = k.correction;
    return {RadialKernel::power_log(beta, a), [beta, alpha, a](double r) {
              if (r == 0.0) return 0.0;
              return tanh_remainder(beta, alpha, r) * (std::log(r) + a);
            }};
  }
  throw std::invalid_argument("split: only tanhpow and tanhpowlog kernels have an L1 split, got " +
                              family_name(k.family));
}

SeriesValue v_remainder_series(double beta, double alpha, double r, int terms) {
  if (!(r > 0.0)) throw std::domain_error("v_remainder_series: r must be > 0");
  if (terms < 1) throw std::invalid_argument("v_remainder_series: terms must be >= 1");
  if (alpha <= 0.0 && alpha == std::floor(alpha)) {
    throw std::domain_error("v_remainder_series: alpha must not be a nonpositive integer");
  }
  const double q = std::exp(-2.0 * r);

  double geometric = 0.0;
  double qj = 1.0;
  for (int j = 0; j < terms; ++j) {
    geometric += qj;
    qj *= -q;
  }
  const double geometric_tail = std::abs(qj) / (1.0 - q);

  double odd_sum = 0.0;
  double qk = q;
  int k = 1;
  for (int i = 0; i < terms; ++i, k += 2) {
    odd_sum += specfun::binomial(alpha, k) * qk;
    qk *= q * q;
  }
  const double odd_tail = std::abs(specfun::binomial(alpha, k)) * qk / (1.0 - q * q);

  const double scale = 2.0 * std::pow(r, beta);
  const double powered = std::pow(geometric, alpha);
  SeriesValue out;
  out.value = scale * powered * odd_sum;
  out.truncation_estimate =
      scale * (powered * odd_tail + std::abs(alpha) * std::pow(geometric, alpha - 1.0) * geometric_tail * std::abs(odd_sum));
  return out;
}

}  // namespace hqi
