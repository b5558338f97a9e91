#include "hqi/quasi.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hqi/quadrature.hpp"
#include "hqi/specfun.hpp"

namespace hqi {

double eval_psi(const QuasiLagrange& q, const Point& x) {
  if (static_cast<int>(x.size()) != q.dim) throw std::invalid_argument("eval_psi: dimension mismatch");
  double sum = 0.0;
  for (const auto& [k, mu] : q.coeffs.support) {
    double r2 = 0.0;
    for (int d = 0; d < q.dim; ++d) {
      const double t = x[d] - k[d];
      r2 += t * t;
    }
    sum += mu * eval(q.kernel, std::sqrt(r2));
  }
  return sum;
}

PsiCache::PsiCache(PointFn psi, int dim, int denominator, double extent)
    : psi_(std::move(psi)), dim_(dim), denom_(denominator) {
  if (dim < 1) throw std::invalid_argument("PsiCache: dimension must be >= 1");
  if (denominator < 1) throw std::invalid_argument("PsiCache: denominator must be >= 1");
  if (!(extent >= 0.0)) throw std::invalid_argument("PsiCache: extent must be >= 0");
  half_ = static_cast<long>(std::floor(extent * denominator));
  double total = 1.0;
  for (int d = 0; d < dim; ++d) total *= 2.0 * half_ + 1.0;
  if (total > 5e7) throw std::invalid_argument("PsiCache: lattice too large");
  values_.assign(static_cast<std::size_t>(total), 0.0);
  filled_.assign(static_cast<std::size_t>(total), 0);
}

double PsiCache::operator()(const Point& t) {
  std::size_t lin = 0;
  for (int d = 0; d < dim_; ++d) {
    const double scaled = t[d] * denom_;
    const double node = std::round(scaled);
    if (std::abs(scaled - node) > 1e-9 * std::max(1.0, std::abs(scaled)) || std::abs(node) > half_) {
      ++fallbacks_;
      return psi_(t);
    }
    lin = lin * (2 * half_ + 1) + static_cast<std::size_t>(static_cast<long>(node) + half_);
  }
  if (!filled_[lin]) {
    // evaluate at the exact node so the stored value does not depend on
    // which nearby argument arrived first
    Point exact(dim_);
    for (int d = 0; d < dim_; ++d) exact[d] = std::round(t[d] * denom_) / denom_;
    values_[lin] = psi_(exact);
    filled_[lin] = 1;
  } else {
    ++hits_;
  }
  return values_[lin];
}

namespace {

struct LatticeRange {
  std::vector<long> lo, hi;
};

// Lattice indices j with hj in the box and, if R is finite, within R of x/h.
LatticeRange lattice_range(const QuasiInterpolant& qi, const Point& xlo, const Point& xhi) {
  LatticeRange r;
  r.lo.resize(qi.dim);
  r.hi.resize(qi.dim);
  const double R = qi.truncation_radius;
  for (int d = 0; d < qi.dim; ++d) {
    double lo = qi.sample_domain.lo[d] / qi.h;
    double hi = qi.sample_domain.hi[d] / qi.h;
    if (std::isfinite(R)) {
      lo = std::max(lo, xlo[d] / qi.h - R);
      hi = std::min(hi, xhi[d] / qi.h + R);
    }
    r.lo[d] = static_cast<long>(std::ceil(lo - 1e-9));
    r.hi[d] = static_cast<long>(std::floor(hi + 1e-9));
  }
  return r;
}

void check_interpolant(const QuasiInterpolant& qi) {
  if (!(qi.h > 0.0)) throw std::invalid_argument("quasi-interpolant: h must be > 0");
  if (!qi.psi || !qi.target) throw std::invalid_argument("quasi-interpolant: psi and target are required");
  if (static_cast<int>(qi.sample_domain.lo.size()) != qi.dim || static_cast<int>(qi.sample_domain.hi.size()) != qi.dim) {
    throw std::invalid_argument("quasi-interpolant: sample domain dimension mismatch");
  }
  for (int d = 0; d < qi.dim; ++d) {
    if (!std::isfinite(qi.sample_domain.lo[d]) || !std::isfinite(qi.sample_domain.hi[d])) {
      throw std::invalid_argument("quasi-interpolant: sample domain must be bounded");
    }
  }
  if (!(qi.truncation_radius > 0.0)) throw std::invalid_argument("quasi-interpolant: truncation radius must be > 0");
}

// Sum over the lattice range with f(hj) supplied by `sample`.
template <class Sample>
double lattice_sum(const QuasiInterpolant& qi, const Point& x, const LatticeRange& range, Sample&& sample,
                   bool& any) {
  const int n = qi.dim;
  const double R2 = qi.truncation_radius * qi.truncation_radius;
  const bool finite_r = std::isfinite(qi.truncation_radius);
  std::vector<long> j = range.lo;
  for (int d = 0; d < n; ++d) {
    if (range.lo[d] > range.hi[d]) return 0.0;
  }
  Point t(n);
  double sum = 0.0;
  while (true) {
    double r2 = 0.0;
    for (int d = 0; d < n; ++d) {
      t[d] = x[d] / qi.h - static_cast<double>(j[d]);
      r2 += t[d] * t[d];
    }
    if (!finite_r || r2 <= R2) {
      any = true;
      const double fv = sample(j);
      if (fv != 0.0) sum += fv * qi.psi(t);
    }
    int d = n - 1;
    while (d >= 0 && j[d] == range.hi[d]) {
      j[d] = range.lo[d];
      --d;
    }
    if (d < 0) break;
    ++j[d];
  }
  return sum;
}

}  // namespace

double quasi_interpolate(const QuasiInterpolant& qi, const Point& x) {
  check_interpolant(qi);
  if (static_cast<int>(x.size()) != qi.dim) throw std::invalid_argument("quasi_interpolate: dimension mismatch");
  const LatticeRange range = lattice_range(qi, x, x);
  Point p(qi.dim);
  auto sample = [&](const std::vector<long>& j) {
    for (int d = 0; d < qi.dim; ++d) p[d] = qi.h * static_cast<double>(j[d]);
    return qi.target(p);
  };
  bool any = false;
  const double v = lattice_sum(qi, x, range, sample, any);
  if (!any) throw std::domain_error("quasi_interpolate: no lattice points of the sample domain within the truncation radius");
  return v;
}

Grid uniform_grid_1d(double a, double b, int n) {
  if (n < 2 || !(b > a)) throw std::invalid_argument("uniform_grid_1d: need n >= 2 and b > a");
  Grid g;
  for (int i = 0; i < n; ++i) g.points.push_back({a + (b - a) * i / (n - 1)});
  g.description = std::to_string(n) + " uniform points on [" + format_real(a) + ", " + format_real(b) + "]";
  return g;
}

Grid uniform_grid_2d(double a, double b, int n) {
  if (n < 2 || !(b > a)) throw std::invalid_argument("uniform_grid_2d: need n >= 2 and b > a");
  Grid g;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) g.points.push_back({a + (b - a) * i / (n - 1), a + (b - a) * k / (n - 1)});
  }
  g.description = std::to_string(n) + "x" + std::to_string(n) + " uniform points on [" + format_real(a) + ", " +
                  format_real(b) + "]^2";
  return g;
}

ErrorReport error_report(const QuasiInterpolant& qi, const Grid& grid) {
  check_interpolant(qi);
  if (grid.points.empty()) throw std::invalid_argument("error_report: empty grid");
  const auto start = std::chrono::steady_clock::now();
  const int n = qi.dim;

  Point xlo(n, INFINITY), xhi(n, -INFINITY);
  for (const auto& x : grid.points) {
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("error_report: grid dimension mismatch");
    for (int d = 0; d < n; ++d) {
      xlo[d] = std::min(xlo[d], x[d]);
      xhi[d] = std::max(xhi[d], x[d]);
    }
  }
  // f(hj) tabulated once on every lattice point any grid point can reach
  const LatticeRange table = lattice_range(qi, xlo, xhi);
  std::vector<std::size_t> stride(n, 1);
  std::size_t total = 1;
  for (int d = n - 1; d >= 0; --d) {
    stride[d] = total;
    const long len = std::max(0L, table.hi[d] - table.lo[d] + 1);
    total *= static_cast<std::size_t>(len);
  }
  std::vector<double> fvals(total);
  {
    std::vector<long> j = table.lo;
    Point p(n);
    for (std::size_t lin = 0; lin < total; ++lin) {
      std::size_t rem = lin;
      for (int d = 0; d < n; ++d) {
        j[d] = table.lo[d] + static_cast<long>(rem / stride[d]);
        rem %= stride[d];
        p[d] = qi.h * static_cast<double>(j[d]);
      }
      fvals[lin] = qi.target(p);
    }
  }
  auto sample = [&](const std::vector<long>& j) {
    std::size_t lin = 0;
    for (int d = 0; d < n; ++d) lin += static_cast<std::size_t>(j[d] - table.lo[d]) * stride[d];
    return fvals[lin];
  };

  ErrorReport rep;
  rep.grid = grid.description;
  rep.n_points = grid.points.size();
  double ss = 0.0;
  for (const auto& x : grid.points) {
    const LatticeRange range = lattice_range(qi, x, x);
    bool any = false;
    const double q = lattice_sum(qi, x, range, sample, any);
    if (!any) throw std::domain_error("error_report: grid point without lattice samples in range");
    const double f = qi.target(x);
    const double e = std::abs(q - f);
    rep.f.push_back(f);
    rep.qf.push_back(q);
    rep.max_error = std::max(rep.max_error, e);
    ss += e * e;
  }
  rep.rmse = std::sqrt(ss / static_cast<double>(grid.points.size()));
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string error_csv(const Grid& grid, const ErrorReport& r) {
  std::ostringstream os;
  const std::size_t n = grid.points.empty() ? 1 : grid.points.front().size();
  os << (n == 1 ? "x" : "x,y") << ",f,Qf,abs_err\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    for (double c : grid.points[i]) {
      put(c);
      os << ',';
    }
    put(r.f[i]);
    os << ',';
    put(r.qf[i]);
    os << ',';
    put(std::abs(r.qf[i] - r.f[i]));
    os << '\n';
  }
  return os.str();
}

SweepResult convergence_sweep(const std::function<QuasiInterpolant(double)>& make, const std::vector<double>& hs,
                              const Grid& grid) {
  if (hs.size() < 3) throw std::invalid_argument("convergence_sweep: need at least 3 spacings");
  SweepResult out;
  for (double h : hs) {
    out.h.push_back(h);
    out.max_error.push_back(error_report(make(h), grid).max_error);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double lx = std::log(out.h[i]);
    const double ly = std::log(out.max_error[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

double fourier_psi_1d(const std::function<double(double)>& psi_hat, double t, double y_max, double tol) {
  if (!(y_max > 0.0)) throw std::invalid_argument("fourier_psi_1d: y_max must be > 0");
  const double period = 2.0 * specfun::pi;
  const double panel = std::min(specfun::pi / std::max(std::abs(t), 1.0), 0.25 * specfun::pi);
  const int periods = static_cast<int>(std::ceil(y_max / period));
  auto integrand = [&](double y) { return psi_hat(y) * std::cos(t * y); };
  double sum = 0.0;
  for (int p = 0; p < periods; ++p) {
    const double a = p * period;
    const double b = std::min((p + 1) * period, y_max);
    const quad::Result r = quad::panels(integrand, a, b, panel, tol / periods, 1e-13);
    sum += r.value;
  }
  return sum / specfun::pi;
}

}  // namespace hqi
