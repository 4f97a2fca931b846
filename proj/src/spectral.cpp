#include "hermclust/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "hermclust/random.hpp"

namespace hermclust {

Index SolverConfig::iteration_budget(Index n) const {
  if (max_iterations > 0) return max_iterations;
  const double scaled = 10.0 * static_cast<double>(n) * std::log(std::max<double>(n, 2));
  return std::max<Index>(1000, static_cast<Index>(std::ceil(scaled)));
}

void normalize_phase(VectorXc& v) {
  if (v.size() == 0) return;
  Index best = 0;
  double best_abs = std::abs(v[0]);
  for (Index i = 1; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs == 0.0) return;
  v *= std::conj(v[best]) / best_abs;
  v[best] = Complex(best_abs, 0.0);
}

namespace {

void check_operator(const HermitianLaplacianOp& op, const SolverConfig& cfg) {
  if (op.dim() < 2)
    throw InputError("eigensolver needs an operator over at least 2 vertices, got " +
                     std::to_string(op.dim()));
  if (!(cfg.tolerance > 0.0)) throw InputError("solver tolerance must be positive");
}

VectorXc start_vector(Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  VectorXc x(n);
  for (Index i = 0; i < n; ++i) x[i] = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  x.array() -= x.mean();  // remove the all-equal component
  return x.normalized();
}

// Projects x onto the complement of the unit vector q.
void deflate(VectorXc& x, const VectorXc* q) {
  if (q) x -= *q * q->dot(x);
}

// Power iteration on 2I - P L P, where P projects out `deflated` (if given).
EigenPair shifted_power_iteration(const HermitianLaplacianOp& op, const SolverConfig& cfg,
                                  const VectorXc* deflated) {
  const Index budget = cfg.iteration_budget(op.dim());
  VectorXc x = start_vector(op.dim(), cfg.seed);
  deflate(x, deflated);
  x.normalize();

  VectorXc lx(op.dim());
  EigenPair best;
  best.residual = std::numeric_limits<double>::infinity();
  for (Index it = 1; it <= budget; ++it) {
    op.apply(x, lx);
    deflate(lx, deflated);
    const double lambda = x.dot(lx).real();
    const double residual = (lx - lambda * x).norm();
    if (residual < best.residual) {
      best.value = lambda;
      best.vector = x;
      best.residual = residual;
    }
    best.iterations = it;
    if (residual <= cfg.tolerance) {
      best.converged = true;
      break;
    }
    x = 2.0 * x - lx;
    deflate(x, deflated);
    x.normalize();
  }
  if (!best.converged && cfg.require_convergence) {
    throw ConvergenceError("power iteration did not reach residual " + std::to_string(cfg.tolerance) +
                               " in " + std::to_string(budget) + " iterations (best " +
                               std::to_string(best.residual) + ")",
                           best.residual);
  }
  // Pin the phase, then report value and residual of the vector actually returned.
  normalize_phase(best.vector);
  op.apply(best.vector, lx);
  deflate(lx, deflated);
  best.value = best.vector.dot(lx).real();
  best.residual = (lx - best.value * best.vector).norm();
  return best;
}

}  // namespace

EigenPair bottom_eigenpair(const HermitianLaplacianOp& op, const SolverConfig& cfg) {
  check_operator(op, cfg);
  return shifted_power_iteration(op, cfg, nullptr);
}

EigenPair second_eigenpair(const HermitianLaplacianOp& op, const EigenPair& bottom,
                           const SolverConfig& cfg) {
  check_operator(op, cfg);
  if (!bottom.converged || bottom.vector.size() != op.dim())
    throw InputError("second eigenpair needs a converged bottom eigenpair of the same operator");
  // A different stream from the bottom solve keeps the start vector off f1.
  SolverConfig shifted = cfg;
  shifted.seed = mix64(cfg.seed + 1);
  return shifted_power_iteration(op, shifted, &bottom.vector);
}

double second_eigenvalue(const HermitianLaplacianOp& op, const EigenPair& bottom,
                         const SolverConfig& cfg) {
  return second_eigenpair(op, bottom, cfg).value;
}

std::vector<EigenPair> dense_eigen_oracle(const HermitianLaplacianOp& op, Index guard) {
  if (op.dim() > guard)
    throw SizeGuardError("dense eigendecomposition of dimension " + std::to_string(op.dim()) +
                         " exceeds the guard of " + std::to_string(guard));
  const MatrixXc l = dense_laplacian(op, guard);
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(l);
  if (solver.info() != Eigen::Success) throw Error("dense Hermitian eigendecomposition failed");
  std::vector<EigenPair> pairs(static_cast<std::size_t>(op.dim()));
  for (Index i = 0; i < op.dim(); ++i) {
    auto& p = pairs[static_cast<std::size_t>(i)];
    p.value = solver.eigenvalues()[i];
    p.vector = solver.eigenvectors().col(i);
    normalize_phase(p.vector);
    p.residual = (l * p.vector - p.value * p.vector).norm();
    p.converged = true;
  }
  return pairs;
}

}  // namespace hermclust
