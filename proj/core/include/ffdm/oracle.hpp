#pragma once

// Brute-force and property verifiers. Everything here recomputes a quantity
// along a second route (direct partial sums, mirrored solves, grid
// refinement) so it can be checked against the closed forms in kernel.hpp.

#include <string>
#include <utility>
#include <vector>

#include "ffdm/discretize.hpp"
#include "ffdm/kernel.hpp"

namespace ffdm {

struct VerificationReport {
  std::string check;
  std::vector<std::pair<std::string, double>> parameters;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;           // free-form, e.g. a surfaced validation error
  std::vector<double> series;   // check-specific sequence (convergence differences)
  std::vector<double> orders;   // empirical orders for the convergence study
};

/// sum_{k=j+1}^{K} w_k evaluated term by term (compensated, long double).
double bruteforce_tail_right(long j, const FractionalParams& params, const SchemeWeights& scheme,
                             long K);
/// sum_{k=-K}^{-j-1} w_k.
double bruteforce_tail_left(long j, const FractionalParams& params, const SchemeWeights& scheme,
                            long K);

/// Truncation-aware tolerance max(floor, 10 K^-alpha).
double tail_tolerance(double alpha, long K, double floor = 1e-6);

/// Closed-form vs brute-force tails on both sides for a single (params, j).
VerificationReport tail_check(const FractionalParams& params, const SchemeWeights& scheme, long j,
                              long K = 1'000'000);

/// The pinned (alpha, theta) sweep: alpha in {0.25, 0.5, 0.75, 1.25, 1.5,
/// 1.75, 2}, theta in {0, +-min(alpha, 2 - alpha)/2}.
std::vector<FractionalParams> pinned_sweep();
inline const std::vector<long> kPinnedTailIndices{1, 2, 5, 20};

/// Tail checks over pinned_sweep() x kPinnedTailIndices, run in parallel.
std::vector<VerificationReport> tail_sweep(const SchemeWeights& scheme = {}, long K = 1'000'000);

/// The alpha = 2 table and assembled system against the classical 1, -2, 1
/// central difference scheme (tolerance 1e-12). A theta that is invalid at
/// alpha = 2 yields a failed report carrying the validation message.
VerificationReport reduction_check(const SchemeWeights& scheme = {}, double theta = 0.0);

/// solve(theta, gL, gR) reversed node by node against solve(-theta, gR, gL);
/// tolerance 1e-9.
VerificationReport symmetry_check(const FractionalParams& params, const DirichletBC& bc, long N,
                                  const SchemeWeights& scheme = {});

/// Self-convergence on [0, 1] over successively refined grids (each N divides
/// the next). Passes when the max differences at shared nodes strictly
/// decrease, or when they all sit below 1e-10 (the scheme is exact there).
VerificationReport convergence_study(const FractionalParams& params, const DirichletBC& bc,
                                     const std::vector<long>& Ns,
                                     const SchemeWeights& scheme = {});

inline constexpr double kExactConvergenceFloor = 1e-10;

}  // namespace ffdm
