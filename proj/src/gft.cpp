#include "hqi/gft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hqi/quadrature.hpp"
#include "hqi/specfun.hpp"

namespace hqi {

namespace sf = specfun;
using sf::pi;

namespace {

bool is_integer(double x) { return x == std::floor(x); }

bool is_even_nonneg_integer(double x) { return x >= 0.0 && is_integer(x) && std::fmod(x, 2.0) == 0.0; }

// beta = -n - 2k for some k >= 0
bool is_negative_exceptional(double beta, int n) {
  const double k2 = -beta - n;
  return is_even_nonneg_integer(k2);
}

double factorial(int k) { return sf::gamma(k + 1.0); }

// Radius beyond which r^p e^{-2r} < 1e-18.
double decay_radius(double p) {
  double R = 10.0;
  while (p * std::log(R) - 2.0 * R > std::log(1e-18)) R += 1.0;
  return R;
}

}  // namespace

void RadialExpansion::add(double q, int log_power, double coeff) {
  for (auto& t : terms) {
    if (std::abs(t.q - q) < 1e-12 && t.log_power == log_power) {
      t.coeff += coeff;
      return;
    }
  }
  ExpansionTerm term{q, log_power, coeff};
  auto pos = std::find_if(terms.begin(), terms.end(), [&](const ExpansionTerm& t) {
    return t.q < q - 1e-12 || (std::abs(t.q - q) < 1e-12 && t.log_power < log_power);
  });
  terms.insert(pos, term);
}

double RadialExpansion::evaluate(double s) const {
  if (!(s > 0.0)) throw std::domain_error("expansion evaluated at s <= 0");
  if (s >= valid_radius) {
    throw std::range_error("expansion evaluated at s = " + format_real(s) + " outside its validity radius " +
                           format_real(valid_radius));
  }
  const double ls = std::log(s);
  double sum = 0.0;
  for (const auto& t : terms) {
    double v = t.coeff * std::pow(s, -t.q);
    for (int p = 0; p < t.log_power; ++p) v *= ls;
    sum += v;
  }
  return sum;
}

const ExpansionTerm& RadialExpansion::leading() const {
  for (const auto& t : terms) {
    if (t.coeff != 0.0) return t;
  }
  throw std::domain_error("expansion has no nonzero s-term");
}

RadialExpansion RadialExpansion::scaled(double factor) const {
  RadialExpansion out = *this;
  for (auto& t : out.terms) t.coeff *= factor;
  for (auto& d : out.delta_terms) d.coeff *= factor;
  return out;
}

RadialExpansion RadialExpansion::plus(const RadialExpansion& other) const {
  if (other.dim != dim) throw std::invalid_argument("adding expansions of different dimensions");
  RadialExpansion out = *this;
  for (const auto& t : other.terms) out.add(t.q, t.log_power, t.coeff);
  for (const auto& d : other.delta_terms) {
    bool merged = false;
    for (auto& e : out.delta_terms) {
      if (e.laplacian_power == d.laplacian_power) {
        e.coeff += d.coeff;
        merged = true;
      }
    }
    if (!merged) out.delta_terms.push_back(d);
  }
  out.valid_radius = std::min(valid_radius, other.valid_radius);
  out.truncation_order = std::max(truncation_order, other.truncation_order);
  return out;
}

std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string to_string(const RadialExpansion& e) {
  std::ostringstream os;
  bool any = false;
  for (const auto& t : e.terms) {
    if (t.coeff == 0.0) continue;
    if (any) os << '\n';
    os << format_real(t.coeff);
    if (t.q != 0.0) os << " * s^" << format_real(-t.q);
    if (t.log_power == 1) os << " * log s";
    if (t.log_power == 2) os << " * log^2 s";
    any = true;
  }
  for (const auto& d : e.delta_terms) {
    if (any) os << '\n';
    os << format_real(d.coeff) << " * Lap^" << d.laplacian_power << " delta";
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

RadialExpansion classical_gft(ClassicalFamily family, double param, int n, double correction) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  RadialExpansion e;
  e.dim = n;
  const double half_n = 0.5 * n;

  switch (family) {
    case ClassicalFamily::Power: {
      const double beta = param;
      if (is_even_nonneg_integer(beta)) {
        const int k = static_cast<int>(beta / 2);
        e.delta_terms.push_back({k, std::pow(2.0 * pi, n) * ((k % 2) ? -1.0 : 1.0)});
        return e;
      }
      if (is_negative_exceptional(beta, n)) {
        throw std::domain_error("r^beta with beta = -n-2k is excluded from the power formula; use the r^{-n-2k} family");
      }
      const double coeff =
          sf::gamma(0.5 * (beta + n)) / sf::gamma(-0.5 * beta) * std::pow(2.0, beta + n) * std::pow(pi, half_n);
      e.add(beta + n, 0, coeff);
      return e;
    }
    case ClassicalFamily::PowerLog: {
      const double beta = param;
      if (is_even_nonneg_integer(beta)) {
        const int k = static_cast<int>(beta / 2);
        if (k == 0) throw std::domain_error("r^0 log r: the delta bracket involves Psi(0) and is not defined");
        const double sign = (k % 2) ? 1.0 : -1.0;  // (-1)^{k+1}
        e.add(n + 2.0 * k, 0,
              sf::gamma(half_n + k) * factorial(k) * std::pow(2.0, n + 2 * k - 1) * std::pow(pi, half_n) * sign);
        const double bracket = 0.5 * sf::digamma(half_n + k - 1) + 0.5 * sf::digamma(k) + sf::ln2;
        const double total = bracket + correction;
        if (std::abs(total) > 1e-14 * std::max(1.0, std::abs(correction))) {
          e.delta_terms.push_back({k, -sign * std::pow(2.0 * pi, n) * total});
        }
        return e;
      }
      if (is_negative_exceptional(beta, n)) {
        throw std::domain_error("r^beta log r with beta = -n-2k is excluded; use the r^{-n-2k} log r family");
      }
      const double c = sf::gamma(0.5 * (beta + n)) / sf::gamma(-0.5 * beta) * std::pow(2.0, beta + n) *
                       std::pow(pi, half_n);
      // Psi here is the shifted digamma psi(z+1).
      const double bracket = 0.5 * sf::digamma(0.5 * (beta + n)) + 0.5 * sf::digamma(-0.5 * beta) + sf::ln2;
      e.add(beta + n, 1, -c);
      e.add(beta + n, 0, c * (bracket + correction));
      return e;
    }
    case ClassicalFamily::NegPower:
    case ClassicalFamily::NegPowerLog: {
      if (!(param >= 0.0 && is_integer(param))) throw std::domain_error("k must be a nonnegative integer");
      const int k = static_cast<int>(param);
      const double a = ((k % 2) ? -1.0 : 1.0) * std::pow(pi, half_n) /
                       (sf::gamma(half_n + k) * factorial(k) * std::pow(2.0, 2 * k - 1));
      const double b = 0.5 * sf::digamma(half_n + k) + 0.5 * sf::digamma(k + 1.0) + sf::ln2;
      if (family == ClassicalFamily::NegPower) {
        e.add(-2.0 * k, 1, -a);
        e.add(-2.0 * k, 0, a * b);
        return e;
      }
      const double d = 0.5 * a;
      const double tri = sf::trigamma(half_n + k) + sf::trigamma(k + 1.0);
      e.add(-2.0 * k, 2, d);
      e.add(-2.0 * k, 1, -2.0 * d * b);
      e.add(-2.0 * k, 0, d * (b * b - 0.25 * tri + pi * pi / 12.0));
      return e;
    }
  }
  throw std::logic_error("classical_gft: unknown family");
}

double delta_cancellation_constant(int k, int n) {
  if (k < 1) throw std::domain_error("delta_cancellation_constant: k must be >= 1");
  if (n < 1) throw std::domain_error("delta_cancellation_constant: n must be >= 1");
  return -(0.5 * sf::digamma(0.5 * n + k - 1) + 0.5 * sf::digamma(k) + sf::ln2);
}

double tanh_power_pj(int m, int n, int j) {
  double prod = 1.0;
  for (int i = 0; i < m; ++i) prod *= n + 2.0 * j + i;
  const double log_ratio = sf::lgamma(j + 0.5 * (n + 1)) - sf::lgamma(j + 1.0) - 2.0 * j * sf::ln2;
  const double sign = (j % 2) ? -1.0 : 1.0;
  return sign * std::exp(log_ratio) * sf::alt_zeta_sum(m + 2.0 * j + n) * prod;
}

RadialExpansion tanh_power_expansion(int m, int n, int j_max) {
  if (m < 1) throw std::domain_error("tanh_power_expansion: m must be >= 1");
  if (j_max < 1) throw std::domain_error("tanh_power_expansion: j_max must be >= 1");
  RadialExpansion e = classical_gft(ClassicalFamily::Power, m, n);
  const double pref = std::pow(2.0, 1 - m) * std::pow(pi, 0.5 * (n - 1));
  double partial = 0.0;
  int kept = 0;
  for (int j = 0; j <= j_max; ++j) {
    const double t = pref * tanh_power_pj(m, n, j);
    e.add(-2.0 * j, 0, t);
    partial += t;
    ++kept;
    if (j > 0 && std::abs(t) < 1e-16 * std::abs(partial)) break;
  }
  e.valid_radius = 1.0;
  e.truncation_order = kept;
  return e;
}

SeriesResult odd_dim_vhat(int m, int n, double s, int k_max) {
  if (n < 1 || n % 2 == 0) throw std::domain_error("odd_dim_vhat: n must be odd");
  if (!(s > 0.0)) throw std::domain_error("odd_dim_vhat: s must be > 0");
  if (k_max < 1) throw std::domain_error("odd_dim_vhat: k_max must be >= 1");

  // J_{n/2-1}(z) = sqrt(2/(pi z)) sum_e coef_e z^{-e} trig_e(z).
  struct Piece {
    int e;
    bool use_sin;
    double coef;
  };
  std::vector<Piece> pieces;
  if (n == 1) {
    pieces.push_back({0, false, 1.0});
  } else {
    const int p = (n - 3) / 2;
    const bool even = (p % 2 == 0);
    const double sigma = even ? (((p / 2) % 2) ? -1.0 : 1.0) : ((((p - 1) / 2) % 2) ? -1.0 : 1.0);
    for (int l = 0; 2 * l <= p; ++l) {
      const double c = ((l % 2) ? -1.0 : 1.0) * factorial(p + 2 * l) / (factorial(2 * l) * factorial(p - 2 * l)) *
                       std::pow(2.0, -2 * l);
      // sin(z - p pi/2): sigma sin z for even p, -sigma cos z for odd p
      pieces.push_back({2 * l, even, even ? sigma * c : -sigma * c});
    }
    for (int l = 0; 2 * l + 1 <= p; ++l) {
      const double c = ((l % 2) ? -1.0 : 1.0) * factorial(p + 2 * l + 1) /
                       (factorial(2 * l + 1) * factorial(p - 2 * l - 1)) * std::pow(2.0, -2 * l - 1);
      // cos(z - p pi/2): sigma cos z for even p, sigma sin z for odd p
      pieces.push_back({2 * l + 1, !even, sigma * c});
    }
  }

  const double amp = std::sqrt(2.0 / (pi * s));
  auto term = [&](int k) {
    const double b = 2.0 * (k + 1);
    const double theta = std::atan2(s, b);
    const double rho2 = b * b + s * s;
    double sum = 0.0;
    for (const auto& pc : pieces) {
      const double a = m + 0.5 * (n + 1) - pc.e;
      const double mag = sf::gamma(a) * std::pow(rho2, -0.5 * a) * std::pow(s, -pc.e);
      sum += pc.coef * mag * (pc.use_sin ? std::sin(a * theta) : std::cos(a * theta));
    }
    return ((k % 2) ? -amp : amp) * sum;
  };

  SeriesResult out;
  for (int k = 0; k < k_max; ++k) out.value += term(k);
  out.truncation_bound = std::abs(term(k_max));
  return out;
}

double hankel_prefactor(int n, double s) {
  return std::pow(2.0, 1.0 + 0.5 * n) * std::pow(pi, 0.5 * n) * std::pow(s, 1.0 - 0.5 * n);
}

RadialExpansion k_expansion_at_zero(int nu, double c, int order) {
  if (nu < 0) throw std::domain_error("k_expansion_at_zero: nu must be >= 0");
  if (!(c > 0.0)) throw std::domain_error("k_expansion_at_zero: c must be > 0");
  RadialExpansion e;
  for (int k = 0; k < nu; ++k) {
    const double coeff = std::pow(2.0, nu - 1) * factorial(nu - k - 1) / (factorial(k) * std::pow(-4.0, k)) *
                         std::pow(c, 2 * k);
    e.add(2.0 * nu - 2.0 * k, 0, coeff);
  }
  const double lead = std::pow(-0.5 * c * c, nu);
  const double logc = std::log(c);
  for (int k = 0; k <= order; ++k) {
    const double w = std::pow(c, 2 * k) / (std::pow(4.0, k) * factorial(k) * sf::gamma(nu + k + 1.0));
    e.add(-2.0 * k, 1, -lead * w);
    e.add(-2.0 * k, 0, -lead * logc * w + lead * (sf::ln2 * w + 0.5 * (sf::digamma(k + 1.0) + sf::digamma(nu + k + 1.0)) * w));
  }
  e.truncation_order = order + 1;
  return e;
}

RadialExpansion k_expansion_fractional(double nu, double c, int order) {
  if (!(nu > 0.0) || is_integer(nu)) throw std::domain_error("k_expansion_fractional: nu must be positive non-integer");
  if (!(c > 0.0)) throw std::domain_error("k_expansion_fractional: c must be > 0");
  RadialExpansion e;
  const double f = pi / (2.0 * std::sin(nu * pi));
  for (int k = 0; 2.0 * nu - 2.0 * k >= -2.0 * order; ++k) {
    const double coeff = f * std::pow(c, 2 * k) * std::pow(2.0, nu - 2 * k) / (factorial(k) * sf::gamma(k - nu + 1.0));
    e.add(2.0 * nu - 2.0 * k, 0, coeff);
  }
  for (int k = 0; k <= order; ++k) {
    const double coeff =
        -f * std::pow(c, 2 * k + 2 * nu) * std::pow(2.0, -2 * k - nu) / (factorial(k) * sf::gamma(k + nu + 1.0));
    e.add(-2.0 * k, 0, coeff);
  }
  e.truncation_order = order + 1;
  return e;
}

double halfint_mq_log_gft(double c, double s) {
  if (!(s > 0.0)) throw std::domain_error("halfint_mq_log_gft: s must be > 0");
  return 2.0 * pi * std::exp(-c * s) * (1.0 / (s * s * s) + c / (s * s));
}

RadialExpansion halfint_mq_log_expansion(double c, int order) {
  RadialExpansion e;
  for (int j = 0; j <= order; ++j) {
    const double coeff = 2.0 * pi * std::pow(-c, j) * (1.0 - j) / factorial(j);
    if (coeff != 0.0) e.add(3.0 - j, 0, coeff);
  }
  e.truncation_order = order + 1;
  return e;
}

OracleResult hankel_oracle(const HankelOracleSpec& spec, double s) {
  if (!(s > 0.0)) throw std::domain_error("hankel_oracle: s must be > 0");
  const int n = spec.dim;
  std::function<double(double)> integrand;
  double scale = 1.0;
  if (n == 1) {
    integrand = [&](double r) { return spec.f(r) * std::cos(s * r); };
    scale = 2.0;
  } else {
    const double order = 0.5 * n - 1.0;
    integrand = [&, order](double r) { return spec.f(r) * std::pow(r, 0.5 * n) * std::cyl_bessel_j(order, s * r); };
    scale = std::pow(2.0 * pi, 0.5 * n) * std::pow(s, 1.0 - 0.5 * n);
  }
  const double panel = std::min(1.0, pi / s);
  quad::Result r = quad::panels(integrand, 0.0, spec.R, panel, spec.tol / scale, 1e-14);
  OracleResult out;
  out.value = scale * r.value;
  out.error = scale * r.error;
  out.ok = r.converged;
  return out;
}

RadialExpansion radial_moment_expansion(const std::function<double(double)>& f, int n, double R, int j_max) {
  RadialExpansion e;
  e.dim = n;
  const double omega = 2.0 * std::pow(pi, 0.5 * n) / sf::gamma(0.5 * n);
  for (int j = 0; j <= j_max; ++j) {
    const int power = 2 * j + n - 1;
    auto g = [&](double r) { return f(r) * std::pow(r, power); };
    const double moment = quad::panels(g, 0.0, R, 1.0, 1e-15, 1e-14).value;
    const double coeff = ((j % 2) ? -1.0 : 1.0) * sf::gamma(0.5 * n) /
                         (std::pow(4.0, j) * factorial(j) * sf::gamma(0.5 * n + j)) * omega * moment;
    e.add(-2.0 * j, 0, coeff);
  }
  e.valid_radius = 1.0;
  e.truncation_order = j_max + 1;
  return e;
}

double univariate_tanh_family(TanhFamilyMember which, double omega) {
  const double x = 0.5 * pi * omega;
  switch (which) {
    case TanhFamilyMember::Sech:
      return pi / std::cosh(x);
    case TanhFamilyMember::Sech2:
      if (omega == 0.0) return 2.0;
      return pi * omega / std::sinh(x);
    case TanhFamilyMember::Tanh:
      if (omega == 0.0) throw std::domain_error("transform of tanh has a pole at omega = 0");
      return pi / std::sinh(x);
  }
  throw std::logic_error("univariate_tanh_family: unknown member");
}

namespace {

double remainder_transform(const RadialKernel& k, int n, double s) {
  if (k.family == Family::TanhPower && k.alpha == 1.0 && is_integer(k.beta) && k.beta >= 1.0 && n % 2 == 1) {
    return hankel_prefactor(n, s) * odd_dim_vhat(static_cast<int>(k.beta), n, s).value;
  }
  const KernelSplit sp = split(k);
  HankelOracleSpec spec;
  spec.dim = n;
  spec.f = sp.l1_remainder;
  spec.R = decay_radius(k.beta + n + 1.0);
  OracleResult r = hankel_oracle(spec, s);
  if (!r.ok) throw std::runtime_error("quadrature of the L1 remainder did not converge");
  return r.value;
}

double mq_nu(const RadialKernel& k, int n) { return 0.5 * n + k.mq_gamma; }

}  // namespace

double transform_value(const RadialKernel& k, int n, double s) {
  if (!(s > 0.0)) throw std::domain_error("transform_value: s must be > 0");
  switch (k.family) {
    case Family::Power:
    case Family::PowerLog:
    case Family::TanhPower:
    case Family::TanhPowerLog: {
      const RadialExpansion u = singular_part_expansion(k, n, 0);
      double value = 0.0;
      for (const auto& t : u.terms) {
        double v = t.coeff * std::pow(s, -t.q);
        for (int p = 0; p < t.log_power; ++p) v *= std::log(s);
        value += v;
      }
      if (k.family == Family::TanhPower || k.family == Family::TanhPowerLog) value -= remainder_transform(k, n, s);
      return value;
    }
    case Family::GenMultiquadric: {
      if (k.mq_beta != 1.0) throw std::domain_error("no closed-form transform for generalized multiquadrics with mq_beta != 1");
      const double nu = mq_nu(k, n);
      const double pref = std::pow(2.0 * pi, 0.5 * n) * std::pow(2.0, k.mq_gamma + 1.0) / sf::gamma(-k.mq_gamma);
      return pref * std::pow(k.c / s, nu) * sf::bessel_k(std::abs(nu), k.c * s);
    }
    case Family::ShiftedTPS:
    case Family::PolyharmonicShift: {
      const double nu = 0.5 * n + 1.0;
      return std::pow(2.0, nu) * std::pow(pi, 0.5 * n) * std::pow(k.c / s, nu) * sf::bessel_k(nu, k.c * s);
    }
    case Family::GenTPSLog:
      throw std::domain_error("no closed-form transform available for the generalized log kernel");
  }
  throw std::logic_error("transform_value: unknown family");
}

RadialExpansion singular_part_expansion(const RadialKernel& k, int n, int order) {
  switch (k.family) {
    case Family::Power:
    case Family::TanhPower:
      return classical_gft(ClassicalFamily::Power, k.beta, n);
    case Family::PowerLog:
    case Family::TanhPowerLog:
      return classical_gft(ClassicalFamily::PowerLog, k.beta, n, k.correction);
    default:
      return transform_expansion(k, n, order);
  }
}

RadialExpansion transform_expansion(const RadialKernel& k, int n, int order) {
  switch (k.family) {
    case Family::Power:
    case Family::PowerLog:
      return singular_part_expansion(k, n, order);
    case Family::TanhPower:
      if (k.alpha == 1.0 && is_integer(k.beta) && k.beta >= 1.0) {
        return tanh_power_expansion(static_cast<int>(k.beta), n, std::max(order, 1));
      }
      [[fallthrough]];
    case Family::TanhPowerLog: {
      RadialExpansion u = singular_part_expansion(k, n, order);
      const KernelSplit sp = split(k);
      RadialExpansion v = radial_moment_expansion(sp.l1_remainder, n, decay_radius(k.beta + n + 2.0 * order + 1.0), order);
      v.dim = n;
      u.dim = n;
      return u.plus(v.scaled(-1.0));
    }
    case Family::GenMultiquadric: {
      if (k.mq_beta != 1.0) throw std::domain_error("no closed-form transform for generalized multiquadrics with mq_beta != 1");
      const double nu = mq_nu(k, n);
      if (nu < 0.0) throw std::domain_error("expansion requires n/2 + mq_gamma >= 0");
      const double pref = std::pow(2.0 * pi, 0.5 * n) * std::pow(2.0, k.mq_gamma + 1.0) / sf::gamma(-k.mq_gamma);
      RadialExpansion e = is_integer(nu) ? k_expansion_at_zero(static_cast<int>(nu), k.c, order)
                                         : k_expansion_fractional(nu, k.c, order);
      e = e.scaled(pref);
      e.dim = n;
      return e;
    }
    case Family::ShiftedTPS:
    case Family::PolyharmonicShift: {
      const double nu = 0.5 * n + 1.0;
      RadialExpansion e = is_integer(nu) ? k_expansion_at_zero(static_cast<int>(nu), k.c, order)
                                         : k_expansion_fractional(nu, k.c, order);
      e = e.scaled(std::pow(2.0, nu) * std::pow(pi, 0.5 * n));
      e.dim = n;
      if (k.family == Family::ShiftedTPS) {
        // The extra r^2 log c transforms to -(2 pi)^n log c Lap delta.
        e.delta_terms.push_back({1, -std::pow(2.0 * pi, n) * std::log(k.c)});
      }
      return e;
    }
    case Family::GenTPSLog:
      throw std::domain_error("no closed-form transform available for the generalized log kernel");
  }
  throw std::logic_error("transform_expansion: unknown family");
}

}  // namespace hqi
