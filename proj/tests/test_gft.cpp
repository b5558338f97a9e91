#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hqi/gft.hpp"
#include "hqi/kernels.hpp"
#include "hqi/quadrature.hpp"
#include "hqi/specfun.hpp"
#include "oracles.hpp"

using namespace hqi;
namespace sf = hqi::specfun;

namespace {

// 2^{beta+n} pi^{n/2} Gamma((beta+n)/2) / Gamma(-beta/2) with the standard
// library Gamma.
double power_constant(double beta, int n) {
  return std::pow(2.0, beta + n) * std::pow(M_PI, 0.5 * n) * std::tgamma(0.5 * (beta + n)) / std::tgamma(-0.5 * beta);
}

double v_hat_quadrature(int m, int n, double s) {
  // int_0^inf r^{m+n/2} e^{-2r}/(1+e^{-2r}) J_{n/2-1}(s r) dr
  auto f = [=](double r) {
    if (r == 0.0) return 0.0;
    const double q = std::exp(-2.0 * r);
    const double nu = 0.5 * n - 1.0;
    const double j = nu < 0 ? std::sqrt(2.0 / (M_PI * s * r)) * std::cos(s * r) : std::cyl_bessel_j(nu, s * r);
    return std::pow(r, m + 0.5 * n) * q / (1.0 + q) * j;
  };
  return oracle::integrate(f, 0.0, 45.0, 900);
}

}  // namespace

TEST_SUITE("gft") {

TEST_CASE("classical transforms of powers") {
  const auto e = classical_gft(ClassicalFamily::Power, 3, 1);
  REQUIRE(e.terms.size() == 1);
  CHECK(e.terms[0].q == 4.0);
  CHECK(std::abs(e.terms[0].coeff - 12.0) < 1e-13);
  CHECK(e.delta_terms.empty());
  CHECK(to_string(e) == "12 * s^-4");
  for (double beta : {-0.5, 0.5, 1.0, 3.0, 5.0, 7.5}) {
    for (int n : {1, 2, 3, 5}) {
      const auto t = classical_gft(ClassicalFamily::Power, beta, n);
      CAPTURE(beta);
      CAPTURE(n);
      CHECK(std::abs(t.terms[0].coeff / power_constant(beta, n) - 1.0) < 1e-13);
    }
  }
  // beta = 2k has only a delta part, beta = -n-2k is excluded
  const auto even = classical_gft(ClassicalFamily::Power, 2, 1);
  CHECK(even.terms.empty());
  CHECK(even.delta_terms.size() == 1);
  CHECK(even.evaluate(0.5) == 0.0);  // the delta part has no pointwise value away from 0
  CHECK_THROWS_AS(classical_gft(ClassicalFamily::Power, -3, 1), std::domain_error);
}

TEST_CASE("homogeneity of the power transform") {
  const auto e = classical_gft(ClassicalFamily::Power, 1.5, 2);
  for (double lambda : {0.5, 3.0}) {
    const double s = 0.4;
    CHECK(std::abs(e.evaluate(lambda * s) / e.evaluate(s) - std::pow(lambda, -1.5 - 2)) < 1e-14);
  }
  CHECK(e.terms[0].q == 1.5 + 2);
}

TEST_CASE("power-log transforms in the delta-cancelled form") {
  const double g = sf::euler_gamma;
  const auto e1 = classical_gft(ClassicalFamily::PowerLog, 2, 1, g);
  REQUIRE(e1.terms.size() == 1);
  CHECK(e1.terms[0].q == 3.0);
  CHECK(std::abs(e1.terms[0].coeff - 2 * M_PI) < 1e-13);
  CHECK(e1.delta_terms.empty());
  const auto e2 = classical_gft(ClassicalFamily::PowerLog, 2, 2, g - sf::ln2);
  REQUIRE(e2.terms.size() == 1);
  CHECK(e2.terms[0].q == 4.0);
  CHECK(std::abs(e2.terms[0].coeff - 8 * M_PI) < 1e-13);
  CHECK(e2.delta_terms.empty());
  // without the correction a delta part remains
  CHECK(classical_gft(ClassicalFamily::PowerLog, 2, 1, 0.0).delta_terms.size() == 1);

  // s-coefficient of r^{2k} log r is d/dbeta of the power constant at 2k,
  // which is a removable 0/0 there
  for (int n : {1, 2, 3}) {
    for (int k : {1, 2}) {
      const double b = 2.0 * k, h = 1e-6;
      const double deriv = (power_constant(b + h, n) - power_constant(b - h, n)) / (2 * h);
      const auto e = classical_gft(ClassicalFamily::PowerLog, b, n, delta_cancellation_constant(k, n));
      CAPTURE(n);
      CAPTURE(k);
      CHECK(std::abs(e.terms[0].coeff / deriv - 1.0) < 1e-8);
      CHECK(e.delta_terms.empty());
    }
  }
}

TEST_CASE("power-log transform away from even integers is the beta derivative") {
  for (double beta : {1.0, 3.0, 0.5}) {
    for (int n : {1, 3}) {
      const auto e = classical_gft(ClassicalFamily::PowerLog, beta, n);
      const double h = 1e-5;
      for (double s : {0.3, 0.9}) {
        auto pw = [&](double b) { return power_constant(b, n) * std::pow(s, -b - n); };
        const double deriv = (pw(beta + h) - pw(beta - h)) / (2 * h);
        CAPTURE(beta);
        CAPTURE(n);
        CHECK(std::abs(e.evaluate(s) / deriv - 1.0) < 1e-8);
      }
    }
  }
}

TEST_CASE("delta cancellation constants") {
  CHECK(std::abs(delta_cancellation_constant(1, 1) - sf::euler_gamma) < 1e-15);
  CHECK(std::abs(delta_cancellation_constant(1, 2) - (sf::euler_gamma - sf::ln2)) < 1e-15);
  CHECK(std::abs(delta_cancellation_constant(1, 2) + 0.1159315157) < 1e-10);
  const double k2 = -(0.5 * sf::digamma(1.5) + 0.5 * sf::digamma(2.0) + sf::ln2);
  CHECK(std::abs(delta_cancellation_constant(2, 1) - k2) < 1e-15);
  CHECK_THROWS_AS(delta_cancellation_constant(0, 1), std::domain_error);
}

TEST_CASE("tanh power expansion: constant term, parity and radius") {
  const auto e = tanh_power_expansion(3, 1);
  CHECK(e.valid_radius == 1.0);
  double constant = 0.0;
  for (const auto& t : e.terms) {
    if (t.q <= 0.0) {
      CHECK(std::fmod(-t.q, 2.0) == 0.0);
      CHECK(t.log_power == 0);
    }
    if (t.q == 0.0) constant = t.coeff;
  }
  CHECK(std::abs(constant + 7 * std::pow(M_PI, 4) / 480) < 1e-13);
  // equals minus the integral of the remainder
  const auto v = split(RadialKernel::tanh_power(3, 1)).l1_remainder;
  CHECK(std::abs(constant + 2.0 * oracle::integrate(v, 0.0, 40.0, 400)) < 1e-12);
  CHECK_THROWS_AS(e.evaluate(1.0), std::range_error);
  CHECK_THROWS_AS(e.evaluate(1.5), std::range_error);
}

TEST_CASE("tanh power expansion agrees with quadrature of the remainder") {
  for (auto [m, n] : {std::pair{3, 1}, {1, 3}, {2, 5}, {1, 1}, {2, 2}}) {
    const auto e = tanh_power_expansion(m, n);
    const auto u = classical_gft(ClassicalFamily::Power, m, n);
    HankelOracleSpec spec;
    spec.dim = n;
    spec.f = split(RadialKernel::tanh_power(m, 1)).l1_remainder;
    spec.R = 60;
    for (double s : {0.1, 0.2, 0.3, 0.5, 0.7}) {
      const auto o = hankel_oracle(spec, s);
      REQUIRE(o.ok);
      const double ref = u.evaluate(s) - o.value;
      CAPTURE(m);
      CAPTURE(n);
      CAPTURE(s);
      CHECK(std::abs(e.evaluate(s) - ref) / std::abs(ref) <= 1e-8);
    }
  }
}

TEST_CASE("Hankel oracle on known transforms") {
  HankelOracleSpec g1;
  g1.dim = 1;
  g1.f = [](double r) { return std::exp(-0.5 * r * r); };
  g1.R = 40;
  CHECK(std::abs(hankel_oracle(g1, 1.0).value - std::sqrt(2 * M_PI) * std::exp(-0.5)) < 1e-12);
  for (int n : {2, 3, 4}) {
    HankelOracleSpec g = g1;
    g.dim = n;
    for (double s : {0.3, 1.7}) {
      CHECK(std::abs(hankel_oracle(g, s).value - std::pow(2 * M_PI, 0.5 * n) * std::exp(-0.5 * s * s)) < 1e-11);
    }
  }
  // n = 1 reduces to twice the cosine transform
  const auto v = split(RadialKernel::tanh_power(3, 1)).l1_remainder;
  HankelOracleSpec sv;
  sv.dim = 1;
  sv.f = v;
  sv.R = 60;
  const double direct = 2.0 * oracle::integrate([&](double r) { return v(r) * std::cos(0.5 * r); }, 0.0, 45.0, 450);
  CHECK(std::abs(hankel_oracle(sv, 0.5).value - direct) < 1e-12);
}

TEST_CASE("odd dimension series") {
  for (auto [m, n] : {std::pair{3, 1}, {1, 3}, {2, 5}, {4, 3}}) {
    for (double s : {0.5, 1.0, 1.5, 2.0, 5.0}) {
      const auto r = odd_dim_vhat(m, n, s);
      CAPTURE(m);
      CAPTURE(n);
      CAPTURE(s);
      CHECK(std::abs(r.value - v_hat_quadrature(m, n, s)) <= 1e-9);
    }
  }
  // cross-method: prefactor times the series equals u-hat minus the expansion
  const double s = 0.5;
  const double series = hankel_prefactor(3, s) * odd_dim_vhat(1, 3, s).value;
  const double via_expansion =
      classical_gft(ClassicalFamily::Power, 1, 3).evaluate(s) - tanh_power_expansion(1, 3).evaluate(s);
  CHECK(std::abs(series - via_expansion) / std::abs(series) <= 1e-8);
  // three-dimensional r^2 remainder through the Hankel oracle
  HankelOracleSpec sp;
  sp.dim = 3;
  sp.f = split(RadialKernel::tanh_power(2, 1)).l1_remainder;
  sp.R = 60;
  CHECK(std::abs(hankel_prefactor(3, 1.0) * odd_dim_vhat(2, 3, 1.0).value - hankel_oracle(sp, 1.0).value) < 1e-9);
}

TEST_CASE("odd dimension series truncation bound") {
  const double full = odd_dim_vhat(3, 1, 2.0).value;
  for (int k : {5, 20, 100}) {
    const auto r = odd_dim_vhat(3, 1, 2.0, k);
    CAPTURE(k);
    CHECK(std::abs(r.value - full) <= r.truncation_bound * (1 + 1e-9) + 1e-15);
  }
  CHECK_THROWS_AS(odd_dim_vhat(3, 2, 1.0), std::domain_error);
}

TEST_CASE("expansion of the scaled modified Bessel function") {
  const double c = 0.5;
  const auto e = k_expansion_at_zero(2, c, 8);
  double lead = 0.0, second = 0.0;
  for (const auto& t : e.terms) {
    if (t.q == 4.0 && t.log_power == 0) lead = t.coeff;
    if (t.q == 2.0 && t.log_power == 0) second = t.coeff;
  }
  CHECK(std::abs(lead - 2.0) < 1e-15);
  CHECK(std::abs(second + c * c / 2.0) < 1e-15);
  // six times this is the 1-D multiquadric transform 12 s^-4 - 3 c^2 s^-2 + ...
  CHECK(std::abs(6 * second + 3 * c * c) < 1e-15);
  const auto mq = transform_expansion(RadialKernel::gen_multiquadric(c, 1, 1.5), 1, 4);
  for (const auto& t : e.terms) {
    for (const auto& u : mq.terms) {
      if (t.q == u.q && t.log_power == u.log_power) CHECK(std::abs(6 * t.coeff - u.coeff) < 1e-13);
    }
  }
  for (double s : {1e-3, 0.01, 0.1, 0.3, 0.7}) {
    const double direct = 4 * M_PI * c * c * std::cyl_bessel_k(2.0, c * s) / (s * s);
    CAPTURE(s);
    CHECK(std::abs(4 * M_PI * e.evaluate(s) / direct - 1.0) <= 1e-10);
  }
  for (int nu : {1, 3}) {
    const auto en = k_expansion_at_zero(nu, 1.3, 10);
    for (double s : {0.05, 0.4}) {
      const double direct = std::pow(1.3 / s, nu) * std::cyl_bessel_k(nu, 1.3 * s);
      CHECK(std::abs(en.evaluate(s) / direct - 1.0) <= 1e-10);
    }
  }
  const auto ef = k_expansion_fractional(1.5, c, 10);
  for (double s : {0.05, 0.4}) {
    const double direct = std::pow(c / s, 1.5) * std::cyl_bessel_k(1.5, c * s);
    CHECK(std::abs(ef.evaluate(s) / direct - 1.0) <= 1e-10);
  }
}

TEST_CASE("shifted polyharmonic 1-D transform") {
  const double c = 0.5;
  CHECK(std::abs(halfint_mq_log_gft(c, 1.0) - 2 * M_PI * std::exp(-0.5) * 1.5) < 1e-14);
  CHECK(std::abs(halfint_mq_log_gft(c, 1e-5) * 1e-15 - 2 * M_PI) < 1e-4);
  const auto e = halfint_mq_log_expansion(c, 12);
  // coefficients 2 pi, -pi c^2, 2 pi c^3 / 3, -pi c^4 / 4 at s^-3, s^-1, s^0, s^1
  auto coeff = [&](double q) {
    for (const auto& t : e.terms)
      if (t.q == q) return t.coeff;
    return 0.0;
  };
  CHECK(std::abs(coeff(3) - 2 * M_PI) < 1e-14);
  CHECK(coeff(2) == 0.0);
  CHECK(std::abs(coeff(1) + M_PI * c * c) < 1e-14);
  CHECK(std::abs(coeff(0) - 2 * M_PI * c * c * c / 3) < 1e-14);
  CHECK(std::abs(coeff(-1) + M_PI * std::pow(c, 4) / 4) < 1e-14);
  for (double s : {0.1, 0.3, 0.7}) {
    CHECK(std::abs(e.evaluate(s) / halfint_mq_log_gft(c, s) - 1.0) < 1e-10);
  }
  // the closed form equals the general K_{3/2} route
  CHECK(std::abs(transform_value(RadialKernel::polyharmonic_shift(c), 1, 0.8) / halfint_mq_log_gft(c, 0.8) - 1.0) <
        1e-13);
  CHECK_THROWS_AS(halfint_mq_log_gft(c, 0.0), std::domain_error);
}

TEST_CASE("multiquadric transform expansion") {
  const double c = 0.5;
  const auto k = RadialKernel::gen_multiquadric(c, 1, 1.5);
  const auto e = transform_expansion(k, 1, 8);
  CHECK(std::abs(e.leading().coeff - 12.0) < 1e-13);
  for (double s : {0.1, 0.3, 0.7}) {
    CHECK(std::abs(e.evaluate(s) / transform_value(k, 1, s) - 1.0) <= 1e-6);
  }
}

TEST_CASE("univariate sech family") {
  CHECK(std::abs(univariate_tanh_family(TanhFamilyMember::Sech, 0.0) - M_PI) < 1e-15);
  CHECK(std::abs(univariate_tanh_family(TanhFamilyMember::Sech2, 0.0) - 2.0) < 1e-15);
  CHECK(std::abs(univariate_tanh_family(TanhFamilyMember::Sech, 1.0) - 1.2520403312521475) < 1e-15);
  CHECK_THROWS_AS(univariate_tanh_family(TanhFamilyMember::Tanh, 0.0), std::domain_error);
  for (double w : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double a = 2.0 * oracle::integrate([&](double t) { return std::cos(w * t) / std::cosh(t); }, 0, 40, 800);
    const double b =
        2.0 * oracle::integrate([&](double t) { return std::cos(w * t) / std::pow(std::cosh(t), 2); }, 0, 40, 800);
    // tanh - sign(t) is integrable; its sine transform plus that of sign(t), 2/w
    const double c =
        2.0 * oracle::integrate([&](double t) { return std::sin(w * t) * (std::tanh(t) - 1.0); }, 0, 40, 800) +
        2.0 / w;
    CAPTURE(w);
    CHECK(std::abs(a - univariate_tanh_family(TanhFamilyMember::Sech, w)) < 1e-8);
    CHECK(std::abs(b - univariate_tanh_family(TanhFamilyMember::Sech2, w)) < 1e-8);
    CHECK(std::abs(c - univariate_tanh_family(TanhFamilyMember::Tanh, w)) < 1e-8);
  }
}

TEST_CASE("library quadrature") {
  const auto r = quad::gauss_kronrod([](double x) { return std::exp(-x) * std::sin(3 * x); }, 0.0, 30.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 0.3) < 1e-12);
  const auto p = quad::panels([](double x) { return std::cos(40 * x); }, 0.0, M_PI / 80, 0.01);
  CHECK(std::abs(p.value - 1.0 / 40) < 1e-14);
}

}  // TEST_SUITE
