#pragma once

#include <cstdint>
#include <vector>

#include "hermclust/hermitian.hpp"

namespace hermclust {

/// Eigenvalue with a unit-norm eigenvector over the operator's compact indices.
struct EigenPair {
  double value = 0.0;
  VectorXc vector;
  double residual = 0.0;  ///< ||L f - value f||
  Index iterations = 0;
  bool converged = false;
};

struct SolverConfig {
  double tolerance = 1e-8;
  /// 0 selects max(1000, 10 n ln n) for an n-dimensional operator.
  Index max_iterations = 0;
  std::uint64_t seed = 0;
  /// When false, an unconverged solve returns its best iterate with
  /// converged == false instead of throwing.
  bool require_convergence = true;

  Index iteration_budget(Index n) const;
};

/// Smallest eigenpair of L by power iteration on 2I - L.
///
/// All eigenvalues of L lie in [0, 2], so the top eigenvector of 2I - L is the
/// bottom eigenvector of L. The returned vector is phase-normalized: its
/// largest-magnitude entry is real and positive. Throws ConvergenceError when
/// the residual tolerance is not met within the iteration budget (unless
/// cfg.require_convergence is false).
EigenPair bottom_eigenpair(const HermitianLaplacianOp& op, const SolverConfig& cfg = {});

/// Smallest eigenpair of L restricted to the orthogonal complement of
/// bottom.vector, by the same shifted iteration with every iterate deflated.
EigenPair second_eigenpair(const HermitianLaplacianOp& op, const EigenPair& bottom,
                           const SolverConfig& cfg = {});

double second_eigenvalue(const HermitianLaplacianOp& op, const EigenPair& bottom,
                         const SolverConfig& cfg = {});

/// lambda_2 - lambda_1 below this is reported as a degenerate eigengap.
inline constexpr double kDegenerateGap = 1e-6;

/// Full dense Hermitian eigendecomposition, eigenvalues ascending.
std::vector<EigenPair> dense_eigen_oracle(const HermitianLaplacianOp& op, Index guard = 1024);

/// Rotates v so that its largest-magnitude entry (first one on ties) is real positive.
void normalize_phase(VectorXc& v);

}  // namespace hermclust
