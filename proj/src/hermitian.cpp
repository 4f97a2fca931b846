#include "hermclust/hermitian.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hermclust {

Complex RootOfUnity::pow(Index j) const {
  const Index r = ((j % order) + order) % order;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / order);
}

RootOfUnity root_of_unity(int k) {
  if (k < 2) throw InputError("root of unity needs k >= 2, got " + std::to_string(k));
  RootOfUnity r;
  r.k = k;
  r.order = static_cast<int>(std::ceil(2.0 * std::numbers::pi * k));
  r.value = std::polar(1.0, 2.0 * std::numbers::pi / r.order);
  return r;
}

HermitianLaplacianOp::HermitianLaplacianOp(const WeightedDigraph& g, const RootOfUnity& root,
                                           IsolatedPolicy isolated)
    : graph_(&g), root_(root), isolated_(isolated) {
  const Index n = g.num_vertices();
  compact_.assign(static_cast<std::size_t>(n), -1);
  for (Index u = 0; u < n; ++u) {
    if (g.is_isolated(u) && isolated == IsolatedPolicy::exclude) continue;
    compact_[static_cast<std::size_t>(u)] = static_cast<Index>(original_.size());
    original_.push_back(u);
  }
  inv_sqrt_degree_.resize(dim());
  for (Index i = 0; i < dim(); ++i) {
    const double d = g.degree()[original_id(i)];
    inv_sqrt_degree_[i] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }

  src_.reserve(static_cast<std::size_t>(g.num_edges()));
  dst_.reserve(static_cast<std::size_t>(g.num_edges()));
  scaled_weight_.reserve(static_cast<std::size_t>(g.num_edges()));
  for (const Edge& e : g.edges()) {
    const Index cu = compact_id(e.src);
    const Index cv = compact_id(e.dst);
    src_.push_back(cu);
    dst_.push_back(cv);
    scaled_weight_.push_back(e.weight * inv_sqrt_degree_[cu] * inv_sqrt_degree_[cv]);
  }
}

void HermitianLaplacianOp::apply(const VectorXc& x, VectorXc& out) const {
  if (x.size() != dim())
    throw InputError("matvec dimension mismatch: expected " + std::to_string(dim()) + ", got " +
                     std::to_string(x.size()));
  out = x;
  const Complex w = root_.value;
  const Complex wbar = std::conj(w);
  for (std::size_t e = 0; e < src_.size(); ++e) {
    const Index u = src_[e];
    const Index v = dst_[e];
    const double c = scaled_weight_[e];
    out[u] -= c * w * x[v];
    out[v] -= c * wbar * x[u];
  }
}

VectorXc laplacian_matvec(const HermitianLaplacianOp& op, const VectorXc& x) {
  VectorXc out;
  op.apply(x, out);
  return out;
}

double rayleigh_quotient(const HermitianLaplacianOp& op, const VectorXc& x) {
  const double norm2 = x.squaredNorm();
  if (!(norm2 > 0.0)) throw InputError("Rayleigh quotient of the zero vector");
  const Complex q = x.dot(laplacian_matvec(op, x));  // Eigen's dot conjugates the left operand.
  if (std::abs(q.imag()) > 1e-10 * norm2)
    throw Error("x* L x has a non-negligible imaginary part; operator is not Hermitian");
  return q.real() / norm2;
}

MatrixXc dense_laplacian(const HermitianLaplacianOp& op, Index guard) {
  if (op.dim() > guard)
    throw SizeGuardError("dense Laplacian of dimension " + std::to_string(op.dim()) +
                         " exceeds the guard of " + std::to_string(guard));
  MatrixXc l = MatrixXc::Identity(op.dim(), op.dim());
  const auto& g = op.graph();
  const auto& isd = op.inv_sqrt_degree();
  const Complex w = op.root().value;
  for (const Edge& e : g.edges()) {
    const Index u = op.compact_id(e.src);
    const Index v = op.compact_id(e.dst);
    const Complex a = e.weight * isd[u] * isd[v] * w;
    l(u, v) -= a;
    l(v, u) -= std::conj(a);
  }
  return l;
}

}  // namespace hermclust
