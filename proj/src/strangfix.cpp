#include "hqi/strangfix.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hqi/specfun.hpp"

namespace hqi {

namespace sf = specfun;
using sf::pi;

std::string case_name(SingularityCase c) {
  switch (c) {
    case SingularityCase::EvenInteger: return "even-integer";
    case SingularityCase::NonEven: return "non-even";
    case SingularityCase::LogLeading: return "log-leading";
  }
  return "unknown";
}

SingularityClass classify(const RadialExpansion& e) {
  const ExpansionTerm& lead = e.leading();
  SingularityClass out;
  out.order = lead.q;
  if (lead.log_power > 0) {
    out.kase = SingularityCase::LogLeading;
    out.d0 = lead.coeff;
    out.eta = 0.0;
    out.gamma_frac = lead.q - 2.0 * std::floor(lead.q / 2.0);
    return out;
  }
  if (!(lead.q > 0.0)) throw std::domain_error("classify: transform has no singular term to cancel");
  for (const auto& t : e.terms) {
    if (t.log_power > 0 && t.coeff != 0.0) {
      out.d0 = t.coeff;
      out.eta = lead.q - t.q;
      break;
    }
  }
  out.gamma_frac = lead.q - 2.0 * std::floor(lead.q / 2.0);
  const bool even_integer = lead.q == std::floor(lead.q) && std::fmod(lead.q, 2.0) == 0.0;
  out.kase = even_integer ? SingularityCase::EvenInteger : SingularityCase::NonEven;
  return out;
}

double CoeffSeq::at(const LatticePoint& j) const {
  auto it = support.find(j);
  return it == support.end() ? 0.0 : it->second;
}

double CoeffSeq::abs_sum() const {
  double s = 0.0;
  for (const auto& [k, v] : support) s += std::abs(v);
  return s;
}

std::string serialize(const CoeffSeq& c) {
  std::ostringstream os;
  char buf[64];
  for (const auto& [k, v] : c.support) {
    for (int x : k) os << x << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << '\n';
  }
  return os.str();
}

CoeffSeq parse_coeffs(const std::string& text) {
  CoeffSeq c;
  c.dim = 0;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> fields;
    double x;
    while (ls >> x) fields.push_back(x);
    if (fields.size() < 2) throw std::invalid_argument("coefficient line " + std::to_string(lineno) + " is malformed");
    const int dim = static_cast<int>(fields.size()) - 1;
    if (c.dim == 0) c.dim = dim;
    if (dim != c.dim) throw std::invalid_argument("coefficient line " + std::to_string(lineno) + " has wrong dimension");
    LatticePoint p(dim);
    for (int i = 0; i < dim; ++i) p[i] = static_cast<int>(fields[i]);
    c.support[p] = fields.back();
  }
  if (c.dim == 0) c.dim = 1;
  return c;
}

namespace {

void monomials_rec(int dim, int degree, LatticePoint& prefix, std::vector<LatticePoint>& out) {
  if (dim == 1) {
    prefix.push_back(degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = degree; first >= 0; --first) {
    prefix.push_back(first);
    monomials_rec(dim - 1, degree - first, prefix, out);
    prefix.pop_back();
  }
}

double binom_count(int dim, int degree) {
  // number of monomials of total degree <= degree in dim variables
  double r = 1.0;
  for (int i = 1; i <= dim; ++i) r = r * (degree + i) / i;
  return std::round(r);
}

std::string monomial_label(const LatticePoint& a) {
  static const char* names[] = {"x", "y", "z"};
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (any) os << '*';
    if (a.size() <= 3) os << names[i];
    else os << "x" << (i + 1);
    if (a[i] > 1) os << '^' << a[i];
    any = true;
  }
  if (!any) os << '1';
  return os.str();
}

double int_pow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

std::vector<LatticePoint> graded_monomials(int dim, int max_degree) {
  std::vector<LatticePoint> out;
  for (int d = 0; d <= max_degree; ++d) {
    LatticePoint prefix;
    monomials_rec(dim, d, prefix, out);
  }
  return out;
}

int default_max_degree(int dim, double sigma, std::size_t n_points) {
  const int two_sigma = static_cast<int>(std::lround(2.0 * sigma));
  if (binom_count(dim, two_sigma) == static_cast<double>(n_points)) return two_sigma;
  return two_sigma - 1;
}

MomentSystem build_rhs(const RadialExpansion& e, const std::vector<LatticePoint>& points, int max_degree) {
  const SingularityClass cls = classify(e);
  if (cls.kase != SingularityCase::EvenInteger) {
    throw std::domain_error("build_rhs: the singularity is " + case_name(cls.kase) +
                            "; a trigonometric polynomial alone needs an even-integer order");
  }
  if (points.empty()) throw std::invalid_argument("build_rhs: empty point set");
  const int dim = static_cast<int>(points.front().size());
  if (dim != e.dim) throw std::invalid_argument("build_rhs: point dimension differs from the expansion's");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim) throw std::invalid_argument("build_rhs: points of mixed dimension");
  }
  const int sigma = static_cast<int>(cls.order);
  const int D = max_degree >= 0 ? max_degree : default_max_degree(dim, sigma, points.size());
  if (D < sigma) throw std::invalid_argument("build_rhs: max_degree must be >= the singularity order");

  // ghat = a0 s^{-sigma} (1 + sum_m r_m s^{2m}) on its non-log part.
  const double a0 = e.leading().coeff;
  const int m_max = (D - sigma) / 2;
  std::vector<double> r(m_max + 1, 0.0);
  for (const auto& t : e.terms) {
    if (t.log_power != 0 || t.coeff == 0.0) continue;
    const double rel = sigma - t.q;
    if (rel <= 0.0 || rel > D - sigma) continue;
    if (rel != std::floor(rel) || std::fmod(rel, 2.0) != 0.0) {
      throw std::domain_error("build_rhs: expansion term s^" + format_real(-t.q) +
                              " has an odd or fractional offset from the leading order");
    }
    r[static_cast<int>(rel) / 2] += t.coeff / a0;
  }
  std::vector<double> tcoef(m_max + 1, 0.0);
  tcoef[0] = 1.0;
  for (int m = 1; m <= m_max; ++m) {
    double acc = 0.0;
    for (int i = 1; i <= m; ++i) acc -= r[i] * tcoef[m - i];
    tcoef[m] = acc;
  }

  MomentSystem sys;
  sys.dim = dim;
  sys.max_degree = D;
  sys.points = points;
  sys.monomials = graded_monomials(dim, D);
  const int rows = static_cast<int>(sys.monomials.size());
  const int cols = static_cast<int>(points.size());
  sys.A.resize(rows, cols);
  sys.b = Eigen::VectorXd::Zero(rows);
  for (int i = 0; i < rows; ++i) {
    const LatticePoint& a = sys.monomials[i];
    for (int j = 0; j < cols; ++j) {
      double v = 1.0;
      for (int d = 0; d < dim; ++d) v *= int_pow(points[j][d], a[d]);
      sys.A(i, j) = v;
    }
    bool all_even = true;
    int total = 0;
    for (int x : a) {
      all_even = all_even && (x % 2 == 0);
      total += x;
    }
    if (!all_even) continue;
    const int J = total / 2;
    const int m = J - sigma / 2;
    if (m < 0 || m > m_max) continue;
    // coefficient of y^a in (sum y_i^2)^J is J! / prod (a_i/2)!
    double multinom = sf::gamma(J + 1.0);
    double afact = 1.0;
    for (int x : a) {
      multinom /= sf::gamma(x / 2 + 1.0);
      afact *= sf::gamma(x + 1.0);
    }
    const double t_alpha = tcoef[m] / a0 * multinom;
    const double i_pow = (J % 2) ? -1.0 : 1.0;  // i^{|a|}
    sys.b(i) = afact * i_pow * t_alpha;
  }
  return sys;
}

CoeffSeq solve_coeffs(const MomentSystem& sys, SolveInfo* info) {
  const Eigen::Index rows = sys.A.rows();
  Eigen::VectorXd scale(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double m = sys.A.row(i).cwiseAbs().maxCoeff();
    scale(i) = m > 0.0 ? 1.0 / m : 1.0;
  }
  const Eigen::MatrixXd As = scale.asDiagonal() * sys.A;
  const Eigen::VectorXd bs = scale.asDiagonal() * sys.b;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(As);
  Eigen::VectorXd mu = cod.solve(bs);
  // One step of iterative refinement.
  mu += cod.solve(bs - As * mu);

  const Eigen::VectorXd res = sys.A * mu - sys.b;
  const double tol = 1e-9 * (1.0 + sys.b.norm());
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (std::abs(res(i)) > tol) {
      std::ostringstream os;
      os << "inconsistent moment system: row " << (i + 1) << " (monomial " << monomial_label(sys.monomials[i])
         << ", b = " << sys.b(i) << ") has residual " << res(i) << " > " << tol;
      throw std::runtime_error(os.str());
    }
  }
  if (info) {
    info->residual = res.norm();
    info->rank = static_cast<int>(cod.rank());
    info->min_norm = cod.rank() < sys.A.cols();
  }
  CoeffSeq out;
  out.dim = sys.dim;
  for (std::size_t j = 0; j < sys.points.size(); ++j) out.support[sys.points[j]] = mu(static_cast<Eigen::Index>(j));
  out.decay_exponent = INFINITY;
  out.decay_note = "finite support";
  return out;
}

namespace {

// Fourier coefficients (1/N^dim) sum_m F(y_m) e^{i j.y_m} of a real even
// periodic function sampled on the uniform grid, kept for |j_i| <= half.
CoeffSeq sampled_coefficients(int dim, int fft_size, int half, const std::function<double(const std::vector<double>&)>& F) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if (fft_size < 4 || (fft_size & (fft_size - 1)) != 0) throw std::invalid_argument("fft_size must be a power of two >= 4");
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) {
    total *= static_cast<std::size_t>(fft_size);
    if (total > (std::size_t(1) << 26)) throw std::invalid_argument("fft grid too large for this dimension");
  }
  fftw_complex* buf = fftw_alloc_complex(total);
  std::vector<int> dims(dim, fft_size);
  fftw_plan plan = fftw_plan_dft(dim, dims.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);

  std::vector<double> y(dim);
  std::vector<int> idx(dim, 0);
  for (std::size_t lin = 0; lin < total; ++lin) {
    std::size_t rem = lin;
    for (int d = dim - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(rem % fft_size);
      rem /= fft_size;
      y[d] = 2.0 * pi * idx[d] / fft_size;
    }
    buf[lin][0] = F(y);
    buf[lin][1] = 0.0;
  }
  fftw_execute(plan);

  auto value_at = [&](const LatticePoint& j) {
    std::size_t lin = 0;
    for (int d = 0; d < dim; ++d) {
      const int w = ((j[d] % fft_size) + fft_size) % fft_size;
      lin = lin * fft_size + w;
    }
    return buf[lin][0] / static_cast<double>(total);
  };

  CoeffSeq out;
  out.dim = dim;
  LatticePoint j(dim, -half);
  while (true) {
    LatticePoint neg(dim);
    for (int d = 0; d < dim; ++d) neg[d] = -j[d];
    // average with the mirror so that f_j = f_{-j} holds exactly
    double v = 0.5 * (value_at(j) + value_at(neg));
    // the Nyquist bin stands for both +-N/2; split it evenly between them
    for (int d = 0; d < dim; ++d) {
      if (2 * std::abs(j[d]) == fft_size) v *= 0.5;
    }
    out.support[j] = v;
    int d = dim - 1;
    while (d >= 0 && j[d] == half) {
      j[d] = -half;
      --d;
    }
    if (d < 0) break;
    ++j[d];
  }
  fftw_destroy_plan(plan);
  fftw_free(buf);
  return out;
}

}  // namespace

CoeffSeq g_series_coeffs(double exponent, int dim, GVariant variant, int n_coeffs, int fft_size, double normalization) {
  if (!(exponent > 0.0)) throw std::invalid_argument("g_series_coeffs: exponent must be > 0");
  if (n_coeffs < 1) throw std::invalid_argument("g_series_coeffs: n_coeffs must be >= 1");
  if (fft_size < n_coeffs) throw std::invalid_argument("g_series_coeffs: fft_size must be >= n_coeffs");
  const double h = 0.5 * exponent;
  std::function<double(const std::vector<double>&)> F;
  if (variant == GVariant::Sin) {
    F = [=](const std::vector<double>& y) {
      double s = 0.0;
      for (double v : y) s += std::sin(v) * std::sin(v);
      return normalization * std::pow(s, h);
    };
  } else {
    F = [=](const std::vector<double>& y) {
      double s = 0.0;
      // 1 - cos y = 2 sin^2(y/2), without cancellation near 0
      for (double v : y) s += 2.0 * std::sin(0.5 * v) * std::sin(0.5 * v);
      return normalization * std::pow(2.0 * s, h);
    };
  }
  CoeffSeq out = sampled_coefficients(dim, fft_size, n_coeffs / 2, F);
  out.decay_exponent = dim + exponent;
  out.decay_note = "|f_j| = O(|j|^-(n+gamma))";
  return out;
}

double g_series_oracle(double s, int j) {
  j = std::abs(j);
  double c = sf::gamma(2.0 * s + 1.0) / (sf::gamma(s + 1.0) * sf::gamma(s + 1.0));
  for (int i = 0; i < j; ++i) c *= (i - s) / (i + s + 1.0);
  return c;
}

CoeffSeq h_series_coeffs(double d0, int n_coeffs, int fft_size) {
  if (d0 == 0.0) throw std::domain_error("h_series_coeffs: d0 must be nonzero");
  if (n_coeffs < 1) throw std::invalid_argument("h_series_coeffs: n_coeffs must be >= 1");
  if (fft_size < n_coeffs) throw std::invalid_argument("h_series_coeffs: fft_size must be >= n_coeffs");
  auto F = [d0](const std::vector<double>& y) {
    const double s = std::abs(std::sin(0.5 * y[0]));
    if (s == 0.0) return 0.0;
    return 1.0 / (d0 * (-std::log(0.5 * s)));
  };
  CoeffSeq out = sampled_coefficients(1, fft_size, n_coeffs / 2, F);
  out.decay_exponent = 1.0;
  out.decay_note = "|f_j| = O(1/(|j| log^2 |j|))";
  return out;
}

CoeffSeq convolve(const CoeffSeq& a, const CoeffSeq& b) {
  if (a.dim != b.dim) throw std::invalid_argument("convolve: dimensions differ");
  CoeffSeq out;
  out.dim = a.dim;
  for (const auto& [ka, va] : a.support) {
    for (const auto& [kb, vb] : b.support) {
      LatticePoint k(a.dim);
      for (int d = 0; d < a.dim; ++d) k[d] = ka[d] + kb[d];
      out.support[k] += va * vb;
    }
  }
  out.decay_exponent = std::min(a.decay_exponent, b.decay_exponent);
  out.decay_note = a.decay_exponent <= b.decay_exponent ? a.decay_note : b.decay_note;
  return out;
}

std::complex<double> trig_eval(const CoeffSeq& c, const std::vector<double>& y) {
  std::complex<double> sum = 0.0;
  for (const auto& [k, v] : c.support) {
    double phase = 0.0;
    for (int d = 0; d < c.dim; ++d) phase += k[d] * y[d];
    sum += v * std::complex<double>(std::cos(phase), -std::sin(phase));
  }
  return sum;
}

TransformModel make_transform_model(const RadialKernel& k, int n, int order) {
  TransformModel m;
  m.value = [k, n](double s) { return transform_value(k, n, s); };
  m.expansion = transform_expansion(k, n, order);
  return m;
}

long double moment(const CoeffSeq& c, const LatticePoint& alpha) {
  long double sum = 0.0L;
  for (const auto& [k, v] : c.support) {
    long double t = v;
    for (int d = 0; d < c.dim; ++d) {
      for (int p = 0; p < alpha[d]; ++p) t *= k[d];
    }
    sum += t;
  }
  return sum;
}

namespace {

constexpr int taylor_degree = 40;

int max_abs_index(const CoeffSeq& c) {
  int m = 0;
  for (const auto& [k, v] : c.support) {
    for (int x : k) m = std::max(m, std::abs(x));
  }
  return m;
}

// P(y) from its Taylor series sum_alpha (-i)^{|alpha|} M_alpha y^alpha / alpha!.
std::complex<double> trig_taylor(const CoeffSeq& c, const std::vector<double>& y) {
  const auto monos = graded_monomials(c.dim, taylor_degree);
  long double re = 0.0L;
  long double im = 0.0L;
  for (const auto& a : monos) {
    int total = 0;
    for (int x : a) total += x;
    long double term = moment(c, a);
    for (int d = 0; d < c.dim; ++d) {
      for (int p = 0; p < a[d]; ++p) term *= y[d];
      term /= std::tgamma(a[d] + 1.0L);
    }
    switch (total % 4) {
      case 0: re += term; break;
      case 1: im -= term; break;
      case 2: re -= term; break;
      case 3: im += term; break;
    }
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

// P(y_local) ghat(|2 pi j + y_local|)
std::complex<double> psi_hat_shifted(const CoeffSeq& c, const TransformModel& g, const LatticePoint& j,
                                     const std::vector<double>& yl) {
  std::vector<double> full(c.dim);
  double s2 = 0.0;
  double r2 = 0.0;
  for (int d = 0; d < c.dim; ++d) {
    full[d] = 2.0 * pi * j[d] + yl[d];
    s2 += full[d] * full[d];
    r2 += yl[d] * yl[d];
  }
  const double s = std::sqrt(s2);
  const double r = std::sqrt(r2);
  if (s == 0.0) {
    const ExpansionTerm& lead = g.expansion.leading();
    const double sigma = lead.q;
    if (lead.log_power != 0 || sigma != std::floor(sigma) || std::fmod(sigma, 2.0) != 0.0) {
      throw std::domain_error("psi_hat: the value at 0 is only defined by this rule for even-order singularities");
    }
    const int sg = static_cast<int>(sigma);
    LatticePoint a(c.dim, 0);
    a[0] = sg;
    const long double m = moment(c, a);
    const double coef = static_cast<double>(m / std::tgamma(sg + 1.0L)) * (((sg / 2) % 2) ? -1.0 : 1.0);
    return lead.coeff * coef;
  }
  const std::complex<double> p = (r * max_abs_index(c) * c.dim <= 2.0 && c.support.size() <= 64)
                                     ? trig_taylor(c, yl)
                                     : trig_eval(c, yl);
  return p * g.value(s);
}

using Stencil = std::vector<std::pair<int, double>>;

// Central difference weights for derivative orders 0..4: fourth-order
// accurate (wide = false) or the 9-point rules (wide = true; eighth order
// for orders 1-2, sixth order for 3-4).
const Stencil& stencil(int order, bool wide) {
  static const std::vector<Stencil> narrow = {
      {{0, 1.0}},
      {{-2, 1.0 / 12}, {-1, -2.0 / 3}, {1, 2.0 / 3}, {2, -1.0 / 12}},
      {{-2, -1.0 / 12}, {-1, 4.0 / 3}, {0, -2.5}, {1, 4.0 / 3}, {2, -1.0 / 12}},
      {{-3, 1.0 / 8}, {-2, -1.0}, {-1, 13.0 / 8}, {1, -13.0 / 8}, {2, 1.0}, {3, -1.0 / 8}},
      {{-3, -1.0 / 6}, {-2, 2.0}, {-1, -13.0 / 2}, {0, 28.0 / 3}, {1, -13.0 / 2}, {2, 2.0}, {3, -1.0 / 6}},
  };
  static const std::vector<Stencil> nine = {
      {{0, 1.0}},
      {{-4, 1.0 / 280}, {-3, -4.0 / 105}, {-2, 1.0 / 5}, {-1, -4.0 / 5},
       {1, 4.0 / 5}, {2, -1.0 / 5}, {3, 4.0 / 105}, {4, -1.0 / 280}},
      {{-4, -1.0 / 560}, {-3, 8.0 / 315}, {-2, -1.0 / 5}, {-1, 8.0 / 5}, {0, -205.0 / 72},
       {1, 8.0 / 5}, {2, -1.0 / 5}, {3, 8.0 / 315}, {4, -1.0 / 560}},
      {{-4, -7.0 / 240}, {-3, 3.0 / 10}, {-2, -169.0 / 120}, {-1, 61.0 / 30},
       {1, -61.0 / 30}, {2, 169.0 / 120}, {3, -3.0 / 10}, {4, 7.0 / 240}},
      {{-4, 7.0 / 240}, {-3, -2.0 / 5}, {-2, 169.0 / 60}, {-1, -122.0 / 15}, {0, 91.0 / 8},
       {1, -122.0 / 15}, {2, 169.0 / 60}, {3, -2.0 / 5}, {4, 7.0 / 240}},
  };
  const auto& table = wide ? nine : narrow;
  if (order < 0 || order >= static_cast<int>(table.size())) {
    throw std::invalid_argument("strang_fix_verify: derivative orders above 4 are not supported");
  }
  return table[order];
}

double fd_derivative(const std::function<double(const std::vector<double>&)>& f, int dim, const LatticePoint& alpha,
                     double step, bool wide) {
  // tensor product of 1-D stencils
  std::vector<const Stencil*> st(dim);
  for (int d = 0; d < dim; ++d) st[d] = &stencil(alpha[d], wide);
  std::vector<std::size_t> pos(dim, 0);
  double sum = 0.0;
  std::vector<double> y(dim);
  while (true) {
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      const auto& [off, wt] = (*st[d])[pos[d]];
      y[d] = off * step;
      w *= wt;
    }
    sum += w * f(y);
    int d = dim - 1;
    while (d >= 0 && pos[d] + 1 == st[d]->size()) {
      pos[d] = 0;
      --d;
    }
    if (d < 0) break;
    ++pos[d];
  }
  int total = 0;
  for (int x : alpha) total += x;
  return sum / std::pow(step, total);
}

}  // namespace

std::complex<double> psi_hat_complex(const CoeffSeq& c, const TransformModel& g, const std::vector<double>& y) {
  if (static_cast<int>(y.size()) != c.dim) throw std::invalid_argument("psi_hat: dimension mismatch");
  return psi_hat_shifted(c, g, LatticePoint(c.dim, 0), y);
}

double psi_hat(const CoeffSeq& c, const TransformModel& g, const std::vector<double>& y) {
  return psi_hat_complex(c, g, y).real();
}

StrangFixReport strang_fix_verify(const CoeffSeq& c, const TransformModel& g, int M,
                                  const std::vector<LatticePoint>& probes, double origin_step, double lattice_step) {
  StrangFixReport rep;
  const auto alphas = graded_monomials(c.dim, M);
  const LatticePoint zero(c.dim, 0);
  // real and imaginary parts are differentiated separately
  auto part = [&](const LatticePoint& j, bool imag) {
    return [&, j, imag](const std::vector<double>& y) {
      const std::complex<double> v = psi_hat_shifted(c, g, j, y);
      return imag ? v.imag() : v.real();
    };
  };
  for (const auto& a : alphas) {
    int total = 0;
    for (int x : a) total += x;
    for (bool imag : {false, true}) {
      // Logarithmic terms leave an error proportional to step^2 in every
      // stencil with vanishing fourth moment; one Richardson step removes it.
      const auto f = part(zero, imag);
      const double d1 = fd_derivative(f, c.dim, a, origin_step, true);
      const double d2 = fd_derivative(f, c.dim, a, 2.0 * origin_step, true);
      const double d = (4.0 * d1 - d2) / 3.0;
      rep.cond_origin = std::max(rep.cond_origin, std::abs(total == 0 && !imag ? d - 1.0 : d));
    }
  }
  for (const auto& j : probes) {
    bool nonzero = false;
    for (int x : j) nonzero = nonzero || x != 0;
    if (!nonzero) throw std::invalid_argument("strang_fix_verify: lattice probes must be nonzero");
    for (const auto& a : alphas) {
      for (bool imag : {false, true}) {
        rep.cond_lattice =
            std::max(rep.cond_lattice, std::abs(fd_derivative(part(j, imag), c.dim, a, lattice_step, false)));
      }
    }
  }
  rep.notes.push_back("Richardson-extrapolated 9-point central differences with steps " + format_real(origin_step) + " and " + format_real(2.0 * origin_step) + " at the origin; fourth-order differences with step " +
                      format_real(lattice_step) + " at 2 pi j");
  return rep;
}

}  // namespace hqi
