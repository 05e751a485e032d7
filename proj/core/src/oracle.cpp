#include "ffdm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "ffdm/error.hpp"
#include "ffdm/solve.hpp"

namespace ffdm {
namespace {

// Neumaier-compensated accumulation in long double.
class CompensatedSum {
 public:
  void add(long double v) {
    const long double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return static_cast<double>(sum_ + carry_); }

 private:
  long double sum_ = 0.0L;
  long double carry_ = 0.0L;
};

double bruteforce_tail(long j, const WeightFormula& w, long K, int side) {
  CompensatedSum s;
  for (long k = j + 1; k <= K; ++k) s.add(w(side * k));
  return s.value();
}

std::vector<std::pair<std::string, double>> describe(const FractionalParams& p,
                                                     const SchemeWeights& s) {
  return {{"alpha", p.alpha()}, {"theta", p.theta()}, {"lambda1", s.lambda1},
          {"lambda2", s.lambda2}};
}

}  // namespace

double bruteforce_tail_right(long j, const FractionalParams& params, const SchemeWeights& scheme,
                             long K) {
  return bruteforce_tail(j, WeightFormula(params, scheme), K, +1);
}

double bruteforce_tail_left(long j, const FractionalParams& params, const SchemeWeights& scheme,
                            long K) {
  return bruteforce_tail(j, WeightFormula(params, scheme), K, -1);
}

double tail_tolerance(double alpha, long K, double floor) {
  return std::max(floor, 10.0 * std::pow(static_cast<double>(K), -alpha));
}

VerificationReport tail_check(const FractionalParams& params, const SchemeWeights& scheme, long j,
                              long K) {
  const WeightFormula w(params, scheme);
  const double left = std::fabs(w.tail_left(j) - bruteforce_tail(j, w, K, -1));
  const double right = std::fabs(w.tail_right(j) - bruteforce_tail(j, w, K, +1));
  VerificationReport r;
  r.check = "tails";
  r.parameters = describe(params, scheme);
  r.parameters.emplace_back("j", static_cast<double>(j));
  r.parameters.emplace_back("K", static_cast<double>(K));
  r.max_error = std::max(left, right);
  r.tolerance = tail_tolerance(params.alpha(), K);
  r.passed = r.max_error <= r.tolerance;
  return r;
}

std::vector<FractionalParams> pinned_sweep() {
  std::vector<FractionalParams> out;
  for (double a : {0.25, 0.5, 0.75, 1.25, 1.5, 1.75, 2.0}) {
    const double half = 0.5 * max_skewness(a);
    for (double t : {0.0, half, -half}) out.push_back(validate_params(a, t));
  }
  return out;
}

std::vector<VerificationReport> tail_sweep(const SchemeWeights& scheme, long K) {
  const auto sweep = pinned_sweep();
  const std::size_t per = kPinnedTailIndices.size();
  std::vector<VerificationReport> reports(sweep.size() * per);
  const unsigned workers =
      std::clamp(std::thread::hardware_concurrency(), 1u, static_cast<unsigned>(reports.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t n = t; n < reports.size(); n += workers) {
          reports[n] = tail_check(sweep[n / per], scheme, kPinnedTailIndices[n % per], K);
        }
      });
    }
  }
  return reports;
}

VerificationReport reduction_check(const SchemeWeights& scheme, double theta) {
  VerificationReport r;
  r.check = "reduction";
  r.parameters = {{"alpha", 2.0}, {"theta", theta}, {"lambda1", scheme.lambda1},
                  {"lambda2", scheme.lambda2}};
  r.tolerance = 1e-12;
  try {
    const auto params = validate_params(2.0, theta);
    constexpr long kmax = 50;
    const WeightTable table = build_weight_table(params, scheme, kmax);
    double err = 0.0;
    for (long k = -kmax; k <= kmax; ++k) {
      const double expected = k == 0 ? -2.0 : (k == 1 || k == -1 ? 1.0 : 0.0);
      err = std::max(err, std::fabs(table.w(k) - expected));
    }
    for (long j = 1; j <= kmax; ++j) {
      err = std::max({err, std::fabs(table.tail_left(j)), std::fabs(table.tail_right(j))});
    }

    // Classical Dirichlet system, built by hand.
    constexpr long n = 8;
    const DirichletBC bc{2.0, 1.0};
    const AssembledSystem sys = assemble(Domain1D(0.0, 1.0, n), params, scheme, bc);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) {
        double expected = 0.0;
        if (i == 0 || i == n) {
          expected = i == j ? 1.0 : 0.0;
        } else if (i == j) {
          expected = -2.0;
        } else if (i == j + 1 || j == i + 1) {
          expected = 1.0;
        }
        err = std::max(err, std::fabs(sys.matrix(i, j) - expected));
      }
      const double rhs = i == 0 ? bc.left : (i == n ? bc.right : 0.0);
      err = std::max(err, std::fabs(sys.rhs[i] - rhs));
    }
    r.max_error = err;
    r.passed = err <= r.tolerance;
  } catch (const Error& e) {
    r.max_error = std::numeric_limits<double>::infinity();
    r.passed = false;
    r.detail = std::string(to_string(e.code())) + ": " + e.what();
  }
  return r;
}

VerificationReport symmetry_check(const FractionalParams& params, const DirichletBC& bc, long N,
                                  const SchemeWeights& scheme) {
  VerificationReport r;
  r.check = "symmetry";
  r.parameters = describe(params, scheme);
  r.parameters.insert(r.parameters.end(), {{"gL", bc.left}, {"gR", bc.right},
                                           {"N", static_cast<double>(N)}});
  r.tolerance = 1e-9;
  const Domain1D domain(0.0, 1.0, N);
  const Solution forward = solve_bvp(domain, params, scheme, bc);
  const Solution mirror = solve_bvp(domain, params.mirrored(), scheme, {bc.right, bc.left});
  const std::size_t last = forward.values.size() - 1;
  double err = 0.0;
  for (std::size_t i = 0; i <= last; ++i) {
    err = std::max(err, std::fabs(forward.values[i] - mirror.values[last - i]));
  }
  r.max_error = err;
  r.passed = err <= r.tolerance;
  return r;
}

VerificationReport convergence_study(const FractionalParams& params, const DirichletBC& bc,
                                     const std::vector<long>& Ns, const SchemeWeights& scheme) {
  VerificationReport r;
  r.check = "convergence";
  r.parameters = describe(params, scheme);
  r.parameters.insert(r.parameters.end(), {{"gL", bc.left}, {"gR", bc.right}});
  for (long n : Ns) r.parameters.emplace_back("N", static_cast<double>(n));

  if (Ns.size() < 3) {
    throw Error(ErrorCode::InvalidDomain, "convergence study needs at least three grids");
  }
  for (std::size_t k = 1; k < Ns.size(); ++k) {
    if (Ns[k] <= Ns[k - 1] || Ns[k] % Ns[k - 1] != 0) {
      throw Error(ErrorCode::InvalidDomain,
                  "convergence grids must increase with each N dividing the next");
    }
  }

  std::vector<double> coarse = solve_bvp(Domain1D(0.0, 1.0, Ns[0]), params, scheme, bc).values;
  for (std::size_t k = 1; k < Ns.size(); ++k) {
    std::vector<double> fine = solve_bvp(Domain1D(0.0, 1.0, Ns[k]), params, scheme, bc).values;
    const auto stride = static_cast<std::size_t>(Ns[k] / Ns[k - 1]);
    double d = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      d = std::max(d, std::fabs(coarse[i] - fine[i * stride]));
    }
    r.series.push_back(d);
    coarse = std::move(fine);
  }
  for (std::size_t k = 1; k < r.series.size(); ++k) {
    const double ratio = static_cast<double>(Ns[k + 1]) / static_cast<double>(Ns[k]);
    r.orders.push_back(std::log(r.series[k - 1] / r.series[k]) / std::log(ratio));
  }

  const double largest = *std::max_element(r.series.begin(), r.series.end());
  if (largest <= kExactConvergenceFloor) {
    r.max_error = largest;
    r.tolerance = kExactConvergenceFloor;
    r.detail = "differences at round-off level; scheme exact for this case";
  } else {
    // Largest successive ratio; strictly decreasing means every ratio < 1.
    double worst = 0.0;
    for (std::size_t k = 1; k < r.series.size(); ++k) {
      worst = std::max(worst, r.series[k] / r.series[k - 1]);
    }
    r.max_error = worst;
    r.tolerance = std::nextafter(1.0, 0.0);
    r.detail = "max ratio of successive differences; must stay below 1";
  }
  r.passed = r.max_error <= r.tolerance;
  return r;
}

}  // namespace ffdm
