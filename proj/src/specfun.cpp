#include "hqi/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hqi::specfun {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

void check_pole(double x, const char* name) {
  if (is_nonpositive_integer(x)) {
    throw std::domain_error(std::string(name) + ": pole at x = " + std::to_string(x));
  }
}

// sin(pi x) with exact zeros at the integers.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r > 1.0) return -sin_pi(r - 1.0);
  if (r > 0.5) r = 1.0 - r;
  return std::sin(pi * r);
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

// Lanczos, g = 7, n = 9. Used only on [1, 2).
constexpr std::array<double, 9> lanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_1_2(double x) {
  const double xm = x - 1.0;
  double a = lanczos[0];
  for (std::size_t i = 1; i < lanczos.size(); ++i) a += lanczos[i] / (xm + double(i));
  const double t = xm + 7.5;
  return std::sqrt(2.0 * pi) * std::pow(t, xm + 0.5) * std::exp(-t) * a;
}

// 1/Gamma(1+x) = sum c_k x^k for small x.
constexpr std::array<double, 16> rgamma1_taylor = {
    1.0,
    0.5772156649015328606,
    -0.6558780715202538811,
    -0.0420026350340952355,
    0.1665386113822914895,
    -0.0421977345555443367,
    -0.0096219715278769736,
    0.0072189432466630995,
    -0.0011651675918590651,
    -0.0002152416741149510,
    0.0001280502823881162,
    -0.0000201348547807882,
    -0.0000012504934821427,
    0.0000011330272319817,
    -0.0000002056338416978,
    0.0000000061160951045};

}  // namespace

double gamma(double x) {
  check_pole(x, "gamma");
  if (x < 0.5) return pi / (sin_pi(x) * gamma(1.0 - x));
  if (x > 171.7) return std::numeric_limits<double>::infinity();
  if (x < 1.0) return gamma_1_2(x + 1.0) / x;
  if (x < 2.0) return gamma_1_2(x);
  if (x <= 60.0) {
    // Multiplying up from [1,2) keeps the relative error near n*eps, whereas
    // the pow() in Lanczos loses about eps*x*log(x).
    double frac = x - std::floor(x) + 1.0;
    double result = gamma_1_2(frac);
    for (double y = frac; y < x - 0.5; y += 1.0) result *= y;
    return result;
  }
  return std::exp(lgamma(x));
}

double lgamma(double x) {
  check_pole(x, "lgamma");
  if (x < 0.5) return std::log(pi / std::abs(sin_pi(x))) - lgamma(1.0 - x);
  if (x < 15.0) return std::log(std::abs(gamma(x)));
  const double z = 1.0 / (x * x);
  const double series =
      (1.0 / 12.0 - z * (1.0 / 360.0 - z * (1.0 / 1260.0 - z * (1.0 / 1680.0 - z / 1188.0)))) / x;
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * pi) + series;
}

double digamma(double x) {
  check_pole(x, "digamma");
  if (x < 0.0) return digamma(1.0 - x) - pi * cos_pi(x) / sin_pi(x);
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double z = 1.0 / (x * x);
  const double tail =
      z * (1.0 / 12.0 -
           z * (1.0 / 120.0 -
                z * (1.0 / 252.0 -
                     z * (1.0 / 240.0 - z * (1.0 / 132.0 - z * (691.0 / 32760.0 - z / 12.0))))));
  return result + std::log(x) - 0.5 / x - tail;
}

double trigamma(double x) {
  check_pole(x, "trigamma");
  if (x < 0.0) {
    const double s = sin_pi(x);
    return -trigamma(1.0 - x) + pi * pi / (s * s);
  }
  double result = 0.0;
  while (x < 10.0) {
    result += 1.0 / (x * x);
    x += 1.0;
  }
  const double z = 1.0 / (x * x);
  const double tail =
      1.0 / 6.0 -
      z * (1.0 / 30.0 -
           z * (1.0 / 42.0 - z * (1.0 / 30.0 - z * (5.0 / 66.0 - z * (691.0 / 2730.0 - z * 7.0 / 6.0)))));
  return result + 1.0 / x + 0.5 * z + tail * z / x;
}

double binomial(double a, int k) {
  if (k < 0) return 0.0;
  double result = 1.0;
  for (int i = 0; i < k; ++i) result *= (a - i) / (i + 1.0);
  return result;
}

double alt_zeta_sum(double sigma) {
  if (!(sigma > 1.0)) {
    throw std::domain_error("alt_zeta_sum: requires sigma > 1, got " + std::to_string(sigma));
  }
  // Algorithm 1 of Cohen, Rodriguez Villegas and Zagier applied to
  // eta(sigma) = sum_{k>=0} (-1)^k (k+1)^{-sigma}; relative error ~ 5.83^{-n}.
  constexpr int n = 30;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0;
  double c = -d;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * std::pow(double(k + 1), -sigma);
    b = (double(k) + n) * (double(k) - n) * b / ((k + 0.5) * (k + 1.0));
  }
  return -s / d;
}

double bessel_j_series(double nu, double z, std::size_t terms) {
  if (nu < -0.5) throw std::domain_error("bessel_j_series: nu must be >= -1/2");
  if (z < 0.0) throw std::domain_error("bessel_j_series: z must be >= 0");
  if (terms == 0) throw std::invalid_argument("bessel_j_series: terms must be >= 1");
  const double half = 0.5 * z;
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const long double q = -static_cast<long double>(half) * half;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (std::size_t j = 1; j < terms; ++j) {
    term *= q / (static_cast<long double>(j) * (nu + static_cast<long double>(j)));
    sum += term;
  }
  return static_cast<double>(sum) * std::pow(half, nu) / gamma(nu + 1.0);
}

double bessel_j(double nu, double z) {
  if (nu < -0.5) throw std::domain_error("bessel_j: nu must be >= -1/2");
  if (z < 0.0) throw std::domain_error("bessel_j: z must be >= 0");
  if (z == 0.0) return bessel_j_series(nu, z, 1);
  const double half = 0.5 * z;
  const long double q = -static_cast<long double>(half) * half;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (std::size_t j = 1; j < 500; ++j) {
    term *= q / (static_cast<long double>(j) * (nu + static_cast<long double>(j)));
    sum += term;
    if (j > half && std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  return static_cast<double>(sum) * std::pow(half, nu) / gamma(nu + 1.0);
}

double bessel_j_halfint_closed(int n_dim, double z) {
  if (n_dim < 1 || n_dim % 2 == 0) {
    throw std::domain_error("bessel_j_halfint_closed: dimension must be odd");
  }
  if (!(z > 0.0)) throw std::domain_error("bessel_j_halfint_closed: z must be > 0");
  const double amp = std::sqrt(2.0 / (pi * z));
  if (n_dim == 1) return amp * std::cos(z);

  // J_{p+1/2}(z) = sqrt(2/(pi z)) [ sin(z - p pi/2) sum_l (-1)^l (p+2l)!/((2l)!(p-2l)!) (2z)^{-2l}
  //                              + cos(z - p pi/2) sum_l (-1)^l (p+2l+1)!/((2l+1)!(p-2l-1)!) (2z)^{-2l-1} ]
  const int p = (n_dim - 3) / 2;
  const double phase = z - 0.5 * pi * p;
  const double inv2z = 1.0 / (2.0 * z);
  double sin_sum = 0.0;
  for (int l = 0; 4 * l <= n_dim - 3; ++l) {
    const double c = std::tgamma(p + 2 * l + 1.0) / (std::tgamma(2 * l + 1.0) * std::tgamma(p - 2 * l + 1.0));
    sin_sum += ((l % 2) ? -c : c) * std::pow(inv2z, 2 * l);
  }
  double cos_sum = 0.0;
  for (int l = 0; 4 * l <= n_dim - 5; ++l) {
    const double c = std::tgamma(p + 2 * l + 2.0) / (std::tgamma(2 * l + 2.0) * std::tgamma(p - 2 * l));
    cos_sum += ((l % 2) ? -c : c) * std::pow(inv2z, 2 * l + 1);
  }
  return amp * (std::sin(phase) * sin_sum + std::cos(phase) * cos_sum);
}

double bessel_k_halfint(int m, double z) {
  if (m < 0) throw std::domain_error("bessel_k_halfint: order index must be >= 0");
  if (!(z > 0.0)) throw std::domain_error("bessel_k_halfint: z must be > 0");
  double sum = 0.0;
  double coeff = 1.0;  // (m+k)!/(k!(m-k)!)
  double zpow = 1.0;
  for (int k = 0; k <= m; ++k) {
    sum += coeff * zpow;
    coeff *= double(m + k + 1) * double(m - k) / double(k + 1);
    zpow /= 2.0 * z;
  }
  return std::sqrt(pi / (2.0 * z)) * std::exp(-z) * sum;
}

double bessel_k(double nu, double z) {
  if (nu < 0.0) throw std::domain_error("bessel_k: nu must be >= 0");
  if (!(z > 0.0)) throw std::domain_error("bessel_k: z must be > 0");
  const double twice = 2.0 * nu;
  if (twice == std::floor(twice) && static_cast<long>(twice) % 2 == 1) {
    return bessel_k_halfint(static_cast<int>(nu - 0.5), z);
  }

  constexpr double eps = 1e-17;
  constexpr int max_iter = 100000;
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;  // in [-1/2, 1/2)
  const double xi = 1.0 / z;
  const double xi2 = 2.0 * xi;
  double kmu = 0.0;
  double k1 = 0.0;

  if (z < 2.0) {
    // Temme's series for K_mu and K_{mu+1}; at mu = 0 this is the
    // logarithmic series for integer orders.
    const double x2 = 0.5 * z;
    const double pimu = pi * mu;
    const double fact = std::abs(pimu) < 1e-15 ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < 1e-15 ? 1.0 : std::sinh(e) / e;

    double gam1 = 0.0;
    double gam2 = 0.0;
    if (std::abs(mu) < 0.1) {
      double m2 = 1.0;
      for (std::size_t k = 1; k < rgamma1_taylor.size(); k += 2) {
        gam1 -= rgamma1_taylor[k] * m2;
        m2 *= mu * mu;
      }
      m2 = 1.0;
      for (std::size_t k = 0; k < rgamma1_taylor.size(); k += 2) {
        gam2 += rgamma1_taylor[k] * m2;
        m2 *= mu * mu;
      }
    } else {
      const double rm = 1.0 / gamma(1.0 - mu);
      const double rp = 1.0 / gamma(1.0 + mu);
      gam1 = (rm - rp) / (2.0 * mu);
      gam2 = 0.5 * (rm + rp);
    }
    const double gampl = gam2 - mu * gam1;  // 1/Gamma(1+mu)
    const double gammi = gam2 + mu * gam1;  // 1/Gamma(1-mu)

    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i <= max_iter; ++i) {
      ff = (i * ff + p + q) / (double(i) * i - mu * mu);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * eps) break;
    }
    kmu = sum;
    k1 = sum1 * xi2;
  } else {
    // Steed's continued fraction (CF2) with Temme's normalisation.
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i <= max_iter; ++i) {
      a -= 2 * i;
      c = -a * c / (i + 1.0);
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < eps) break;
    }
    h = a1 * h;
    kmu = std::sqrt(pi / (2.0 * z)) * std::exp(-z) / s;
    k1 = kmu * (mu + z + 0.5 - h) * xi;
  }

  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * xi2 * k1 + kmu;
    kmu = k1;
    k1 = next;
  }
  return kmu;
}

}  // namespace hqi::specfun
