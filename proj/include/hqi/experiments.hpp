#ifndef HQI_EXPERIMENTS_HPP
#define HQI_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "hqi/config.hpp"
#include "hqi/gft.hpp"
#include "hqi/kernels.hpp"
#include "hqi/quasi.hpp"
#include "hqi/strangfix.hpp"

#include <json.hpp>

namespace hqi {

/// One kernel of an experiment. `rhs` selects the transform whose expansion
/// defines the coefficients: "self" (the kernel's own transform) or
/// "singular" (its power or power-log part only).
struct KernelSlot {
  std::string name;
  RadialKernel kernel;
  std::string rhs = "self";
  std::optional<double> expect_max;  // reference max error for --check
  double expect_factor = 0.0;        // accept within this factor, if > 0
  double expect_abs = 0.0;           // or within this absolute distance, if > 0
};

enum class CoeffRoute { Moments, Series };

struct ExperimentConfig {
  std::string name = "custom";
  int dim = 1;
  double h = 0.01;
  std::string target = "bump4";
  std::vector<KernelSlot> kernels;

  CoeffRoute route = CoeffRoute::Moments;
  std::vector<LatticePoint> delta_set;
  int max_degree = -1;
  int expansion_order = 6;

  int n_coeffs = 2048;
  int fft_size = 2048;
  GVariant variant = GVariant::Cos;

  double grid_lo = -1.5;
  double grid_hi = 1.5;
  int grid_n = 401;
  Box sample_domain;
  double truncation_radius = INFINITY;
  int cache_denominator = 2;
  double psi_curve_extent = 8.0;
};

/// Target functions by tag: bump4 (1-|x|^2)_+^4, bump3 (1-|x|^2)_+^3,
/// ridge3 (x1+x2)^2|x1+x2| + cos(2x1-x2) sin(x1-2x2) in 2-D, one, cos (product
/// of cosines), x3 (first coordinate cubed).
PointFn target_function(const std::string& tag, int dim);

/// "example1", "example2", "example3".
ExperimentConfig preset(const std::string& name);

/// Starts from the preset named by `experiment` (if present) and applies the
/// remaining keys. Unknown keys are a ConfigError.
ExperimentConfig from_config(const Config& cfg);

/// Flat key/value echo of every field, in a stable order.
std::vector<std::pair<std::string, std::string>> echo(const ExperimentConfig& cfg);

/// Points {-r..r}^dim as a lattice list, or parse "a,b;c,d;..." / "lo..hi".
std::vector<LatticePoint> parse_delta_set(const std::string& text, int dim);

struct CoefficientResult {
  SingularityClass singularity;
  int reproduction_degree = 0;  // M
  std::vector<double> b;        // empty on the series route
  std::vector<LatticePoint> monomials;
  SolveInfo solve;
  CoeffSeq coeffs;
  double normalization = 1.0;
};

/// Coefficients of the quasi-Lagrange function for one kernel.
CoefficientResult compute_coefficients(const ExperimentConfig& cfg, const KernelSlot& slot);

struct KernelRun {
  KernelSlot slot;
  CoefficientResult coeffs;
  ErrorReport report;
  Grid psi_grid;
  std::vector<double> psi_values;
  bool check_passed = true;
  std::string check_note;
};

struct ExperimentResult {
  ExperimentConfig config;
  Grid grid;
  std::vector<KernelRun> runs;
  double seconds = 0.0;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

nlohmann::ordered_json manifest(const ExperimentResult& r);

/// Writes manifest.json, coeffs_<k>.txt, psi_<k>.csv and error_<k>.csv into
/// dir. Files already written are removed again if a later write fails.
void write_artifacts(const ExperimentResult& r, const std::string& dir);

}  // namespace hqi

#endif  // HQI_EXPERIMENTS_HPP
