#include "ffdm/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

#include "ffdm/error.hpp"

namespace ffdm {
namespace {

struct Sample {
  ParamPoint p;
  double f;
};

// Strict ordering on loss; ties go to the smaller alpha, then smaller theta.
bool better(const Sample& a, const Sample& b) {
  if (a.f != b.f) return a.f < b.f;
  if (a.p.alpha != b.p.alpha) return a.p.alpha < b.p.alpha;
  return a.p.theta < b.p.theta;
}

double coarse_alpha(int i, int count) {
  return project_feasible({(i + 0.5) * 2.0 / count, 0.0}).alpha;
}

double coarse_theta(double alpha, int j, int count) {
  if (count < 2) return 0.0;
  const double m = max_skewness(alpha);
  return -m + 2.0 * m * j / (count - 1);
}

}  // namespace

void validate_profile(const ObservedProfile& profile) {
  if (!std::isfinite(profile.left) || !std::isfinite(profile.right) ||
      !(profile.right > profile.left)) {
    throw Error(ErrorCode::InvalidProfile, "profile domain needs finite bounds with R > L");
  }
  if (profile.points.size() < 3) {
    throw Error(ErrorCode::InvalidProfile, "profile needs at least 3 points");
  }
  for (std::size_t i = 0; i < profile.points.size(); ++i) {
    const auto& pt = profile.points[i];
    if (!std::isfinite(pt.x) || !std::isfinite(pt.value)) {
      throw Error(ErrorCode::InvalidProfile, "profile has non-finite entries");
    }
    if (pt.x < profile.left || pt.x > profile.right) {
      throw Error(ErrorCode::InvalidProfile, "profile abscissa outside [L, R]");
    }
    if (i > 0 && !(pt.x > profile.points[i - 1].x)) {
      throw Error(ErrorCode::InvalidProfile, "profile abscissae must be strictly increasing");
    }
  }
}

void validate_config(const FitConfig& config) {
  if (config.grid_intervals < 16) {
    throw Error(ErrorCode::InvalidArgument, "fit grid needs N >= 16");
  }
  if (!(config.tolerance > 0.0) || config.max_iterations < 1 || config.coarse_alpha < 1 ||
      config.coarse_theta < 1) {
    throw Error(ErrorCode::InvalidArgument, "fit tolerances and sample counts must be positive");
  }
  validate_scheme(config.scheme);
}

ParamPoint project_feasible(ParamPoint p) noexcept {
  double a = std::isfinite(p.alpha) ? std::clamp(p.alpha, kMinFitOrder, 2.0) : 2.0;
  if (std::fabs(a - 1.0) < kFitSingularBand) {
    a = a < 1.0 ? 1.0 - kFitSingularBand : 1.0 + kFitSingularBand;
  }
  const double m = max_skewness(a);
  const double t = std::isfinite(p.theta) ? std::clamp(p.theta, -m, m) : 0.0;
  return {a, t};
}

double interpolate(const Domain1D& domain, const std::vector<double>& values, double x) {
  const long n = domain.intervals();
  const double s = (x - domain.left()) / domain.step();
  const long i = std::clamp(static_cast<long>(std::floor(s)), 0L, n - 1);
  const double t = s - static_cast<double>(i);
  const auto a = static_cast<std::size_t>(i);
  return values[a] + t * (values[a + 1] - values[a]);
}

double loss(double alpha, double theta, const ObservedProfile& profile, const DirichletBC& bc,
            const FitConfig& config) {
  validate_profile(profile);
  try {
    const auto params = validate_params(alpha, theta);
    const Domain1D domain(profile.left, profile.right, config.grid_intervals);
    const Solution sol = solve_bvp(domain, params, config.scheme, bc);
    double sse = 0.0;
    for (const auto& pt : profile.points) {
      const double d = interpolate(domain, sol.values, pt.x) - pt.value;
      sse += d * d;
    }
    return std::isfinite(sse) ? sse : kInfeasibleLoss;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidDomain) throw;
    return kInfeasibleLoss;
  }
}

FitResult fit(const ObservedProfile& profile, const DirichletBC& bc, const FitConfig& config) {
  validate_profile(profile);
  validate_config(config);

  // Coarse stage, rows of constant alpha evaluated in parallel.
  const int na = config.coarse_alpha;
  const int nt = config.coarse_theta;
  std::vector<Sample> grid(static_cast<std::size_t>(na) * static_cast<std::size_t>(nt));
  auto eval_row = [&](int i) {
    const double a = coarse_alpha(i, na);
    for (int j = 0; j < nt; ++j) {
      const ParamPoint p{a, coarse_theta(a, j, nt)};
      grid[static_cast<std::size_t>(i) * nt + j] = {p, loss(p.alpha, p.theta, profile, bc, config)};
    }
  };
  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(na));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int i = static_cast<int>(w); i < na; i += static_cast<int>(workers)) eval_row(i);
      });
    }
  }

  const Sample* best = nullptr;
  for (const auto& s : grid) {
    if (!std::isfinite(s.f)) continue;
    if (!best || better(s, *best)) best = &s;
  }
  if (!best) {
    throw Error(ErrorCode::NoFeasiblePoint, "every coarse sample was infeasible or failed");
  }

  // Nelder-Mead refinement.
  auto evaluate = [&](ParamPoint p) {
    p = project_feasible(p);
    return Sample{p, loss(p.alpha, p.theta, profile, bc, config)};
  };
  const double da = 2.0 / na;
  const double dt = nt > 1 ? 2.0 * max_skewness(best->p.alpha) / (nt - 1) : 0.05;
  auto offset = [&](double sa, double st) {
    Sample s = evaluate({best->p.alpha + sa, best->p.theta + st});
    if (s.p.alpha == best->p.alpha && s.p.theta == best->p.theta) {
      s = evaluate({best->p.alpha - sa, best->p.theta - st});
    }
    return s;
  };
  std::array<Sample, 3> simplex{*best, offset(da, 0.0), offset(0.0, std::max(dt, 1e-3))};

  auto centroid_step = [](const ParamPoint& c, const ParamPoint& p, double coef) {
    return ParamPoint{c.alpha + coef * (p.alpha - c.alpha), c.theta + coef * (p.theta - c.theta)};
  };

  int iterations = 0;
  bool converged = false;
  while (iterations < config.max_iterations) {
    std::sort(simplex.begin(), simplex.end(), better);
    double diameter = 0.0;
    for (int v = 1; v < 3; ++v) {
      diameter = std::max(diameter, std::hypot(simplex[v].p.alpha - simplex[0].p.alpha,
                                               simplex[v].p.theta - simplex[0].p.theta));
    }
    // Relative spread, so a vanishing minimum does not stop the search early.
    const double spread = simplex[2].f - simplex[0].f;
    const double scale = 0.5 * (std::fabs(simplex[0].f) + std::fabs(simplex[2].f));
    if (spread <= config.tolerance * scale + 1e-300 && diameter <= config.tolerance) {
      converged = true;
      break;
    }
    ++iterations;

    const ParamPoint c{0.5 * (simplex[0].p.alpha + simplex[1].p.alpha),
                       0.5 * (simplex[0].p.theta + simplex[1].p.theta)};
    const Sample reflected = evaluate(centroid_step(c, simplex[2].p, -1.0));
    if (better(reflected, simplex[0])) {
      const Sample expanded = evaluate(centroid_step(c, simplex[2].p, -2.0));
      simplex[2] = better(expanded, reflected) ? expanded : reflected;
      continue;
    }
    if (better(reflected, simplex[1])) {
      simplex[2] = reflected;
      continue;
    }
    const bool outside = better(reflected, simplex[2]);
    const Sample contracted =
        evaluate(centroid_step(c, simplex[2].p, outside ? -0.5 : 0.5));
    if (better(contracted, outside ? reflected : simplex[2])) {
      simplex[2] = contracted;
      continue;
    }
    for (int v = 1; v < 3; ++v) {
      simplex[v] = evaluate(centroid_step(simplex[0].p, simplex[v].p, 0.5));
    }
  }
  std::sort(simplex.begin(), simplex.end(), better);

  const Sample& winner = better(simplex[0], *best) ? simplex[0] : *best;
  return FitResult{winner.p.alpha, winner.p.theta, winner.f, iterations, converged, best->f};
}

}  // namespace ffdm
