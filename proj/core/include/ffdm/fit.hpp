#pragma once

#include <limits>
#include <vector>

#include "ffdm/discretize.hpp"
#include "ffdm/solve.hpp"

namespace ffdm {

struct ObservedPoint {
  double x;
  double value;
};

/// Measured profile on [left, right].
struct ObservedProfile {
  std::vector<ObservedPoint> points;
  double left;
  double right;
};

/// Throws InvalidProfile unless there are >= 3 finite points with strictly
/// increasing x inside [left, right].
void validate_profile(const ObservedProfile& profile);

struct FitConfig {
  long grid_intervals = 200;  // N used inside the objective
  int coarse_alpha = 40;
  int coarse_theta = 21;
  double tolerance = 1e-6;     // relative objective spread and simplex diameter
  int max_iterations = 400;
  SchemeWeights scheme{};
  unsigned threads = 0;        // 0: hardware concurrency
};

/// Throws InvalidArgument for grid_intervals < 16 or non-positive tolerances.
void validate_config(const FitConfig& config);

struct FitResult {
  double alpha_star;
  double theta_star;
  double sse;
  int iterations;
  bool converged;
  double best_coarse_sse;  // best value seen on the coarse grid
};

inline constexpr double kInfeasibleLoss = std::numeric_limits<double>::infinity();

/// Piecewise-linear interpolation of nodal values at x in [L, R].
double interpolate(const Domain1D& domain, const std::vector<double>& values, double x);

/// Sum of squared deviations between the BVP solution at (alpha, theta) and
/// the observations. Returns kInfeasibleLoss if (alpha, theta) is not
/// admissible or the solve fails. Profile errors propagate.
double loss(double alpha, double theta, const ObservedProfile& profile, const DirichletBC& bc,
            const FitConfig& config = {});

/// Coarse grid over the admissible (alpha, theta) region followed by a
/// Nelder-Mead refinement with projection back onto that region.
/// Throws NoFeasiblePoint when every coarse sample fails.
FitResult fit(const ObservedProfile& profile, const DirichletBC& bc, const FitConfig& config = {});

struct ParamPoint {
  double alpha;
  double theta;
};

inline constexpr double kMinFitOrder = 1e-3;
inline constexpr double kFitSingularBand = 1e-3;

/// Maps an arbitrary (alpha, theta) onto the admissible region: alpha clamped
/// to [kMinFitOrder, 2] and pushed out of the band around 1, theta clamped to
/// +-min(alpha, 2 - alpha).
ParamPoint project_feasible(ParamPoint p) noexcept;

}  // namespace ffdm
