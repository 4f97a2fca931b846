#pragma once

#include <vector>

#include "hermclust/digraph.hpp"

namespace hermclust {

/// The primitive ceil(2*pi*k)-th root of unity used to encode edge direction.
struct RootOfUnity {
  int k = 0;
  int order = 0;
  Complex value{1.0, 0.0};

  /// value^j, evaluated directly from the angle rather than by repeated products.
  Complex pow(Index j) const;
};

RootOfUnity root_of_unity(int k);

/// What the operator does with vertices of zero total degree.
enum class IsolatedPolicy {
  exclude,   ///< compact them out of the operator's index space
  identity,  ///< keep them with an identity row (D^{-1/2} taken as 0 there)
};

/// Matrix-free normalized Hermitian Laplacian L = I - D^{-1/2} A D^{-1/2}.
///
/// A(u, v) = w(u, v) * omega and A(v, u) = conj(A(u, v)) for every edge u -> v.
/// By default vertices of zero total degree are compacted out: the operator
/// acts on vectors indexed 0..dim()-1, and expand()/compact() translate to and
/// from original vertex ids. The graph is held by reference and must outlive the
/// operator.
class HermitianLaplacianOp {
 public:
  HermitianLaplacianOp(const WeightedDigraph& g, const RootOfUnity& root,
                       IsolatedPolicy isolated = IsolatedPolicy::exclude);
  HermitianLaplacianOp(const WeightedDigraph& g, int k,
                       IsolatedPolicy isolated = IsolatedPolicy::exclude)
      : HermitianLaplacianOp(g, root_of_unity(k), isolated) {}

  const WeightedDigraph& graph() const noexcept { return *graph_; }
  const RootOfUnity& root() const noexcept { return root_; }
  IsolatedPolicy isolated_policy() const noexcept { return isolated_; }
  int k() const noexcept { return root_.k; }

  /// Number of vertices the operator acts on.
  Index dim() const noexcept { return static_cast<Index>(original_.size()); }
  /// Original id of compact index i.
  Index original_id(Index i) const { return original_[static_cast<std::size_t>(i)]; }
  /// Compact index of original vertex u, or -1 if u was excluded.
  Index compact_id(Index u) const { return compact_[static_cast<std::size_t>(u)]; }

  /// 1/sqrt(d_u) over compact indices (0 on identity-policy isolated vertices).
  const VectorXd& inv_sqrt_degree() const noexcept { return inv_sqrt_degree_; }

  /// out = L x. Edge-by-edge accumulation in a fixed order, so results are reproducible.
  void apply(const VectorXc& x, VectorXc& out) const;

  /// Full-length vector (zeros on excluded vertices) from a compact one, and back.
  template <typename Scalar>
  Vector<Scalar> expand(const Vector<Scalar>& x) const {
    Vector<Scalar> full = Vector<Scalar>::Zero(graph_->num_vertices());
    for (Index i = 0; i < dim(); ++i) full[original_id(i)] = x[i];
    return full;
  }
  template <typename Scalar>
  Vector<Scalar> compact(const Vector<Scalar>& full) const {
    Vector<Scalar> x(dim());
    for (Index i = 0; i < dim(); ++i) x[i] = full[original_id(i)];
    return x;
  }

 private:
  const WeightedDigraph* graph_;
  RootOfUnity root_;
  IsolatedPolicy isolated_;
  std::vector<Index> original_;
  std::vector<Index> compact_;
  VectorXd inv_sqrt_degree_;
  // Edges in compact indices with w(u,v) / sqrt(d_u d_v) folded in.
  std::vector<Index> src_;
  std::vector<Index> dst_;
  std::vector<double> scaled_weight_;
};

VectorXc laplacian_matvec(const HermitianLaplacianOp& op, const VectorXc& x);

/// x* L x / x* x for nonzero x.
double rayleigh_quotient(const HermitianLaplacianOp& op, const VectorXc& x);

/// Entrywise materialization of L over the compact indices.
MatrixXc dense_laplacian(const HermitianLaplacianOp& op, Index guard = kDenseGuard);

}  // namespace hermclust
