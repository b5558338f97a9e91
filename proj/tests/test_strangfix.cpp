#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "hqi/gft.hpp"
#include "hqi/kernels.hpp"
#include "hqi/specfun.hpp"
#include "hqi/strangfix.hpp"

using namespace hqi;
namespace sf = hqi::specfun;

namespace {

std::vector<LatticePoint> line_points(int r) {
  std::vector<LatticePoint> p;
  for (int k = -r; k <= r; ++k) p.push_back({k});
  return p;
}

// The 21-point set of the two-dimensional example.
std::vector<LatticePoint> example3_points() {
  return {{0, 0},  {1, 0},  {0, 1},  {-1, 0}, {0, -1}, {1, 1},  {-1, 1},  {-1, -1}, {1, -1}, {2, 0},  {0, 2},
          {-2, 0}, {0, -2}, {3, 0},  {0, 3},  {0, -3}, {-3, 0}, {2, 2},   {-2, 2},  {-2, -2}, {2, -2}};
}

const double kGamma = sf::euler_gamma;

CoeffSeq random_seq(std::mt19937_64& rng, int dim, int radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> k(-radius, radius);
  CoeffSeq c;
  c.dim = dim;
  for (int i = 0; i < 6; ++i) {
    LatticePoint p(dim);
    for (auto& x : p) x = k(rng);
    c.support[p] = u(rng);
  }
  return c;
}

double max_diff(const CoeffSeq& a, const CoeffSeq& b) {
  double m = 0.0;
  for (const auto& [k, v] : a.support) m = std::max(m, std::abs(v - b.at(k)));
  for (const auto& [k, v] : b.support) m = std::max(m, std::abs(v - a.at(k)));
  return m;
}

// Radial Taylor coefficients t_J of T(s) = sum_J t_J s^{2J} turned into moment
// values: b_alpha = alpha! i^{|alpha|} [y^alpha] T, derived here by expanding
// (y_1^2 + ... + y_n^2)^J with the multinomial theorem.
double moment_from_radial(const std::vector<double>& t, const LatticePoint& alpha) {
  int total = 0;
  double alpha_fact = 1.0, denom = 1.0;
  for (int a : alpha) {
    if (a % 2) return 0.0;
    total += a;
    alpha_fact *= std::tgamma(a + 1.0);
    denom *= std::tgamma(a / 2 + 1.0);
  }
  const int J = total / 2;
  if (J >= static_cast<int>(t.size())) return 0.0;
  const double multinomial = std::tgamma(J + 1.0) / denom;
  const double i_power = (J % 2) ? -1.0 : 1.0;  // i^{2J}
  return alpha_fact * i_power * t[J] * multinomial;
}

}  // namespace

TEST_SUITE("strangfix") {

TEST_CASE("singularity classification") {
  const auto a = classify(classical_gft(ClassicalFamily::Power, 3, 1));
  CHECK(a.order == 4.0);
  CHECK(a.kase == SingularityCase::EvenInteger);
  CHECK(a.gamma_frac == 0.0);
  const auto b = classify(classical_gft(ClassicalFamily::PowerLog, 2, 1, kGamma));
  CHECK(b.order == 3.0);
  CHECK(b.kase == SingularityCase::NonEven);
  CHECK(b.gamma_frac == 1.0);
  // the 1-D transform of 1/r leads with a logarithm
  const auto e = classical_gft(ClassicalFamily::NegPower, 0, 1);
  const auto c = classify(e);
  CHECK(c.kase == SingularityCase::LogLeading);
  CHECK(c.d0 == e.leading().coeff);
  CHECK(c.eta == 0.0);
  // an even order with a lower log term stays in the even case
  const auto g = classify(transform_expansion(RadialKernel::gen_multiquadric(0.5, 1, 1.5), 1, 4));
  CHECK(g.kase == SingularityCase::EvenInteger);
  CHECK(g.eta == 4.0);
  RadialExpansion smooth;
  smooth.add(0.0, 0, 1.0);
  smooth.add(-2.0, 0, 0.5);
  CHECK_THROWS_AS(classify(smooth), std::domain_error);
}

TEST_CASE("monomial ordering and default degree") {
  const auto m = graded_monomials(2, 2);
  REQUIRE(m.size() == 6);
  CHECK(m[0] == LatticePoint{0, 0});
  CHECK(m[1] == LatticePoint{1, 0});
  CHECK(m[2] == LatticePoint{0, 1});
  CHECK(m[3] == LatticePoint{2, 0});
  CHECK(m[4] == LatticePoint{1, 1});
  CHECK(m[5] == LatticePoint{0, 2});
  CHECK(graded_monomials(2, 7).size() == 36);
  CHECK(default_max_degree(1, 4, 9) == 8);
  CHECK(default_max_degree(2, 4, 21) == 7);
}

TEST_CASE("right-hand side of the one-dimensional example") {
  const auto sys = build_rhs(transform_expansion(RadialKernel::power(3), 1, 4), line_points(4));
  REQUIRE(sys.b.size() == 9);
  for (int i = 0; i < 9; ++i) CHECK(std::abs(sys.b(i) - (i == 4 ? 2.0 : 0.0)) <= 1e-12);
  // A(i, j) = (j - 5)^(i - 1) in one-based indices
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) CHECK(sys.A(i, j) == std::pow(j - 4.0, i));

  const double c = 0.5;
  const auto g = build_rhs(transform_expansion(RadialKernel::gen_multiquadric(c, 1, 1.5), 1, 6), line_points(4));
  CHECK(std::abs(g.b(4) - 2.0) <= 1e-12);
  CHECK(std::abs(g.b(6) + 15 * c * c) <= 1e-12);
  const double b9 = 52.5 * std::pow(c, 4) * (4 * std::log(c) + 4 * kGamma + 1 - 4 * sf::ln2);
  CHECK(std::abs(g.b(8) - b9) <= 1e-12);
  for (int i : {0, 1, 2, 3, 5, 7}) CHECK(std::abs(g.b(i)) <= 1e-12);
}

TEST_CASE("right-hand side of the two-dimensional example") {
  const double c = 0.5;
  const auto pts = example3_points();
  const auto u = build_rhs(transform_expansion(RadialKernel::power_log(2, kGamma - sf::ln2), 2, 4), pts);
  REQUIRE(u.b.size() == 36);
  CHECK(u.max_degree == 7);
  for (int i = 0; i < 36; ++i) {
    double expect = 0.0;
    if (i == 10 || i == 14) expect = 3 / M_PI;
    if (i == 12) expect = 1 / M_PI;
    CAPTURE(i);
    CHECK(std::abs(u.b(i) - expect) <= 1e-12);
  }
  // transform 4 pi c^2 K_2(c s)/s^2 = 8 pi s^-4 (1 - c^2 s^2/4 + O(s^4 log s)), whose
  // reciprocal has the non-log part s^4/(8 pi) + c^2 s^6/(32 pi)
  const std::vector<double> t = {0.0, 0.0, 1 / (8 * M_PI), c * c / (32 * M_PI)};
  const auto g = build_rhs(transform_expansion(RadialKernel::polyharmonic_shift(c), 2, 6), pts);
  for (std::size_t i = 0; i < g.monomials.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(g.b(i) - moment_from_radial(t, g.monomials[i])) <= 1e-12);
  }
  CHECK(std::abs(g.b(21) + 45 * c * c / (2 * M_PI)) <= 1e-12);
  CHECK(std::abs(g.b(27) + 45 * c * c / (2 * M_PI)) <= 1e-12);
  CHECK(std::abs(g.b(23) + 9 * c * c / (2 * M_PI)) <= 1e-12);
  CHECK(std::abs(g.b(25) + 9 * c * c / (2 * M_PI)) <= 1e-12);
  CHECK_THROWS_AS(build_rhs(classical_gft(ClassicalFamily::PowerLog, 2, 1, kGamma), line_points(2)), std::domain_error);
}

TEST_CASE("solution of the one-dimensional system") {
  SolveInfo info;
  const auto mu = solve_coeffs(build_rhs(transform_expansion(RadialKernel::power(3), 1, 4), line_points(4)), &info);
  const double printed[] = {7. / 2880, -1. / 30, 169. / 720, -61. / 90, 91. / 96, -61. / 90, 169. / 720, -1. / 30,
                            7. / 2880};
  for (int k = -4; k <= 4; ++k) CHECK(std::abs(mu.at({k}) - printed[k + 4]) <= 1e-12);
  CHECK(info.rank == 9);
  CHECK_FALSE(info.min_norm);
  CHECK(info.residual <= 1e-12);

  // moments of the printed vector, exactly, with the common denominator 2880
  const long long num[] = {7, -96, 676, -1952, 2730, -1952, 676, -96, 7};
  auto moment_exact = [&](int p) {
    long long s = 0;
    for (int k = -4; k <= 4; ++k) {
      long long kp = 1;
      for (int i = 0; i < p; ++i) kp *= k;
      s += num[k + 4] * kp;
    }
    return s;
  };
  CHECK(moment_exact(0) == 0);
  CHECK(moment_exact(4) == 2 * 2880);
  CHECK(moment_exact(8) == 0);
  for (int p : {1, 2, 3, 5, 6, 7}) CHECK(moment_exact(p) == 0);
}

TEST_CASE("re-substitution and symmetry of the two-dimensional solutions") {
  const auto pts = example3_points();
  for (const auto& k : {RadialKernel::power_log(2, kGamma - sf::ln2), RadialKernel::polyharmonic_shift(0.5)}) {
    const auto sys = build_rhs(transform_expansion(k, 2, 6), pts);
    SolveInfo info;
    const auto mu = solve_coeffs(sys, &info);
    CHECK(info.rank == 21);
    for (std::size_t i = 0; i < sys.monomials.size(); ++i) {
      CHECK(std::abs(static_cast<double>(moment(mu, sys.monomials[i])) - sys.b(i)) <= 1e-9);
    }
    // dihedral symmetry of the point set carries over to the solution
    for (const auto& [p, v] : mu.support) {
      const int x = p[0], y = p[1];
      for (const LatticePoint& q : {LatticePoint{-x, y}, LatticePoint{x, -y}, LatticePoint{y, x}, LatticePoint{-y, -x}}) {
        CHECK(std::abs(mu.at(q) - v) <= 1e-12);
      }
    }
  }
}

TEST_CASE("inconsistent systems are rejected with the violated row") {
  const auto sys = build_rhs(transform_expansion(RadialKernel::power(3), 1, 4), line_points(1), 7);
  CHECK_THROWS_WITH_AS(solve_coeffs(sys), doctest::Contains("row"), std::runtime_error);
}

TEST_CASE("coefficient text round trip") {
  CoeffSeq c;
  c.dim = 2;
  c.support[{-1, 2}] = 1.0 / 3.0;
  c.support[{0, 0}] = -2.5e-17;
  c.support[{4, -3}] = 123456.789;
  const std::string text = serialize(c);
  const auto back = parse_coeffs(text);
  CHECK(back.dim == 2);
  CHECK(back.support == c.support);
  CHECK(serialize(back) == text);
}

TEST_CASE("G series against the Gamma-ratio closed form") {
  const auto G = g_series_coeffs(3.0, 1, GVariant::Cos, 2048, 1 << 15, 1 / (2 * M_PI));
  CHECK(std::abs(G.at({0}) - 6.0 / (2 * M_PI * std::pow(std::tgamma(2.5), 2))) < 1e-10);
  CHECK(std::abs(G.at({0}) - 0.5403) < 1e-4);
  double worst = 0.0;
  for (int j = -32; j <= 32; ++j) {
    // closed form with the standard library Gamma
    const double oracle = ((j % 2) ? -1.0 : 1.0) * 6.0 / (std::tgamma(2.5 + j) * std::tgamma(2.5 - j)) / (2 * M_PI);
    worst = std::max(worst, std::abs(G.at({j}) - oracle));
    CHECK(std::abs(g_series_oracle(1.5, j) / (2 * M_PI) - oracle) < 1e-14);
    CHECK(G.at({j}) == G.at({-j}));
  }
  CHECK(worst <= 1e-8);
  CHECK(G.decay_exponent == 4.0);
  double lo = INFINITY, hi = 0.0;
  for (int j = 64; j <= 512; ++j) {
    const double d = std::abs(G.at({j})) * std::pow(j, 4);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  CHECK(hi / lo <= 3.0);
}

TEST_CASE("G series variants") {
  // |sin y|^3 has period pi: odd coefficients vanish
  const auto s = g_series_coeffs(3.0, 1, GVariant::Sin, 256, 4096);
  for (int j = 1; j < 64; j += 2) CHECK(std::abs(s.at({j})) < 1e-14);
  CHECK(s.at({0}) == doctest::Approx(4.0 / (3.0 * M_PI)).epsilon(1e-9));  // mean of |sin|^3
  // the trigonometric interpolant reproduces G at the sample nodes
  const auto interp = g_series_coeffs(3.0, 1, GVariant::Cos, 64, 64, 1.0);
  for (int m : {0, 5, 17, 32}) {
    const double y = 2 * M_PI * m / 64;
    CHECK(std::abs(trig_eval(interp, {y}).real() - std::pow(2 - 2 * std::cos(y), 1.5)) < 1e-12);
  }
  // two dimensions: even in each coordinate and symmetric in swapping them
  const auto g2 = g_series_coeffs(1.0, 2, GVariant::Cos, 16, 64);
  for (const auto& [p, v] : g2.support) {
    CHECK(std::abs(g2.at({-p[0], p[1]}) - v) < 1e-15);
    CHECK(std::abs(g2.at({p[1], p[0]}) - v) < 1e-15);
  }
}

TEST_CASE("H series") {
  const double d0 = -2.0;
  const auto h = h_series_coeffs(d0, 2048, 2048);
  CHECK(std::abs(trig_eval(h, {M_PI}).real() - 1.0 / (d0 * sf::ln2)) < 1e-12);
  CHECK(std::abs(trig_eval(h, {0.0}).real()) < 1e-12);
  for (const auto& [p, v] : h.support) CHECK(v == h.at({-p[0]}));
  // 1/log|y| at the origin gives coefficients of size 1/(j log^2 j), so the
  // absolute partial sums converge, but only like 1/log N
  const auto big = h_series_coeffs(d0, 1 << 14, 1 << 18);
  auto partial = [&](int N) {
    double s = 0.0;
    for (int j = -N; j <= N; ++j) s += std::abs(big.at({j}));
    return s;
  };
  const double s10 = partial(1 << 10), s11 = partial(1 << 11), s12 = partial(1 << 12);
  CHECK(s11 >= s10);
  CHECK(s12 - s11 <= s11 - s10);
  double lo = 1e300, hi = 0.0;
  for (int j = 16; j <= 4096; j *= 2) {
    const double w = std::abs(big.at({j})) * j * std::pow(std::log(j), 2);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  CHECK(hi / lo < 3.0);
  CHECK_THROWS_AS(h_series_coeffs(0.0, 64, 64), std::domain_error);
}

TEST_CASE("discrete convolution") {
  CoeffSeq delta;
  delta.dim = 1;
  delta.support[{0}] = 1.0;
  CoeffSeq d;
  d.dim = 1;
  d.support[{0}] = 1.0;
  d.support[{1}] = -1.0;
  const auto dd = convolve(d, d);
  CHECK(dd.support.size() == 3);
  CHECK(dd.at({0}) == 1.0);
  CHECK(dd.at({1}) == -2.0);
  CHECK(dd.at({2}) == 1.0);
  CHECK(convolve(delta, d).support == d.support);

  std::mt19937_64 rng(17);
  for (int dim : {1, 2}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_seq(rng, dim, 4), b = random_seq(rng, dim, 4), c = random_seq(rng, dim, 4);
      CHECK(max_diff(convolve(a, b), convolve(b, a)) <= 1e-12);
      CHECK(max_diff(convolve(convolve(a, b), c), convolve(a, convolve(b, c))) <= 1e-12);
      // transform of the convolution is the product of transforms
      std::uniform_real_distribution<double> u(-M_PI, M_PI);
      for (int k = 0; k < 5; ++k) {
        std::vector<double> y(dim);
        for (auto& x : y) x = u(rng);
        const auto lhs = trig_eval(convolve(a, b), y);
        const auto rhs = trig_eval(a, y) * trig_eval(b, y);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
      }
    }
  }
}

TEST_CASE("quasi-Lagrange transform at the origin and the lattice") {
  const auto mu = solve_coeffs(build_rhs(transform_expansion(RadialKernel::power(3), 1, 4), line_points(4)));
  const auto model = make_transform_model(RadialKernel::power(3), 1);
  CHECK(std::abs(psi_hat(mu, model, {0.0}) - 1.0) < 1e-14);
  // order of contact: halving y divides the error by about 2^6
  const double e1 = std::abs(psi_hat(mu, model, {0.2}) - 1.0);
  const double e2 = std::abs(psi_hat(mu, model, {0.1}) - 1.0);
  CHECK(e1 / e2 > 32.0);
  // closer in, the rounding of sum mu (about 1e-16) times 12/y^4 dominates
  const double m0 = static_cast<double>(moment(mu, {0}));
  CHECK(std::abs(m0) < 1e-15);
  for (double y : {1e-2, 1e-3}) {
    CAPTURE(y);
    CHECK(std::abs(psi_hat(mu, model, {y}) - 1.0 - 12 * m0 / std::pow(y, 4)) < 1e-9);
  }
  for (int j : {-2, -1, 1, 2, 3}) CHECK(std::abs(psi_hat(mu, model, {2 * M_PI * j})) < 1e-8);
  // P(y) 12/y^4 by direct evaluation away from the origin
  const double y = 0.9;
  CHECK(std::abs(psi_hat(mu, model, {y}) - trig_eval(mu, {y}).real() * 12 / std::pow(y, 4)) < 1e-13);
}

TEST_CASE("Strang-Fix verification") {
  const double c = 0.5;
  const auto pts1 = line_points(4);
  const auto mu_u = solve_coeffs(build_rhs(transform_expansion(RadialKernel::power(3), 1, 4), pts1));
  const auto k1 = RadialKernel::gen_multiquadric(c, 1, 1.5);
  const auto mu_g = solve_coeffs(build_rhs(transform_expansion(k1, 1, 6), pts1));
  const std::vector<LatticePoint> probes1 = {{1}, {-1}, {2}};
  for (const auto& [mu, k] : {std::pair{mu_u, RadialKernel::power(3)}, {mu_g, k1}, {mu_u, RadialKernel::tanh_power(3, 1)}}) {
    const auto r = strang_fix_verify(mu, make_transform_model(k, 1), 3, probes1);
    CAPTURE(describe(k));
    CHECK(r.cond_origin <= 1e-6);
    CHECK(r.cond_lattice <= 1e-6);
  }

  const auto pts3 = example3_points();
  const auto ku = RadialKernel::power_log(2, kGamma - sf::ln2);
  const auto kg = RadialKernel::polyharmonic_shift(c);
  const auto mu3 = solve_coeffs(build_rhs(transform_expansion(ku, 2, 4), pts3));
  const auto mu4 = solve_coeffs(build_rhs(transform_expansion(kg, 2, 6), pts3));
  const std::vector<LatticePoint> probes2 = {{1, 0}, {1, 1}, {0, 2}};
  for (const auto& [mu, k] : {std::pair{mu3, ku}, {mu4, kg}, {mu3, RadialKernel::tanh_power_log(2, 1, kGamma - sf::ln2)}}) {
    const auto r = strang_fix_verify(mu, make_transform_model(k, 2), 3, probes2);
    CAPTURE(describe(k));
    CHECK(r.cond_origin <= 1e-5);
    CHECK(r.cond_lattice <= 1e-5);
  }
}

TEST_CASE("Strang-Fix negative control") {
  // random coefficients with P(0) = 0 so the transform stays finite near 0
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto model = make_transform_model(RadialKernel::power(3), 1);
  for (int trial = 0; trial < 5; ++trial) {
    CoeffSeq c;
    c.dim = 1;
    double sum = 0.0;
    for (int k = -4; k <= 3; ++k) sum += (c.support[{k}] = u(rng));
    c.support[{4}] = -sum;
    const auto r = strang_fix_verify(c, model, 3, {{1}, {2}});
    CHECK(r.cond_origin > 1e-2);
  }
  // a perturbed solution is also flagged
  auto mu = solve_coeffs(build_rhs(transform_expansion(RadialKernel::power(3), 1, 4), line_points(4)));
  mu.support[{2}] += 1e-3;
  mu.support[{-2}] -= 1e-3;
  CHECK(strang_fix_verify(mu, model, 3, {{1}}).cond_origin > 1e-4);
}

}  // TEST_SUITE
