#include "witness_forge/seesaw.hpp"

#include <cmath>
#include <numeric>

namespace witness_forge {

Vector kron_vectors(const std::vector<Vector>& parts) {
  Vector out = Vector::Ones(1);
  for (const auto& p : parts) {
    Vector next(out.size() * p.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * p.size(), p.size()) = out(i) * p;
    out = std::move(next);
  }
  return out;
}

ProductSeesaw::ProductSeesaw(Matrix w, std::vector<int> block_dims) : w_(std::move(w)), dims_(std::move(block_dims)) {
  const int total = std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
  if (total != w_.rows() || w_.rows() != w_.cols())
    throw Error(ErrorCode::DimensionMismatch, "block dimensions do not match the operator");
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < dims_.size(); ++j)
      if (j != k) order.push_back(j);
    order.push_back(k);
    block_last_.push_back(detail::permute_matrix(w_, detail::permutation_map(dims_, order)));
  }
}

Matrix ProductSeesaw::contract(const std::vector<Vector>& parts, std::size_t k) const {
  std::vector<Vector> others;
  for (std::size_t j = 0; j < parts.size(); ++j)
    if (j != k) others.push_back(parts[j]);
  const Vector u = kron_vectors(others);
  const Matrix& w = block_last_[k];
  const Eigen::Index dk = dims_[k];
  const Eigen::Index n = w.rows();
  const Eigen::Index no = u.size();

  // y(row, j) = sum_c u_c w(row, c*dk + j)
  Matrix y = Matrix::Zero(n, dk);
  for (Eigen::Index c = 0; c < no; ++c) {
    if (u(c) == 0.0) continue;
    y.noalias() += u(c) * w.middleCols(c * dk, dk);
  }
  // m(i, j) = sum_r conj(u_r) y(r*dk + i, j)
  Matrix m = Matrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < no; ++r) {
    if (u(r) == 0.0) continue;
    m.noalias() += std::conj(u(r)) * y.middleRows(r * dk, dk);
  }
  return 0.5 * (m + m.adjoint());
}

double ProductSeesaw::value(const std::vector<Vector>& parts) const {
  const Vector v = kron_vectors(parts);
  return v.dot(w_ * v).real() / v.squaredNorm();
}

std::vector<Vector> ProductSeesaw::random_start(Rng& rng) const {
  std::vector<Vector> parts;
  for (int d : dims_) parts.push_back(random_unit_vector(rng, d));
  return parts;
}

ProductSeesaw::Point ProductSeesaw::run(std::vector<Vector> start, int max_iterations, double convergence_tol,
                                        bool record_history) const {
  Point p;
  p.parts = std::move(start);
  for (auto& v : p.parts) v /= v.norm();
  p.value = value(p.parts);
  if (record_history) p.history.push_back(p.value);
  for (int it = 0; it < max_iterations; ++it) {
    const double before = p.value;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      auto pair = min_eigenpair(contract(p.parts, k));
      // The current part is feasible for this block, so the minimum cannot
      // exceed the current value; guard against rounding drift.
      if (pair.value <= p.value) {
        p.parts[k] = pair.vector;
        p.value = pair.value;
      }
      if (record_history) p.history.push_back(p.value);
    }
    p.iterations = it + 1;
    if (before - p.value < convergence_tol * std::max(1.0, std::abs(p.value))) break;
  }
  return p;
}

PartyLayout party_layout(const LabeledOperator& op) {
  const auto& sys = op.system();
  const auto order_labels = sys.party_major_order();
  std::vector<std::size_t> order;
  for (const auto& l : order_labels) order.push_back(sys.position(l));
  PartyLayout layout;
  layout.original_of_party_major = detail::permutation_map(sys.dims(), order);
  layout.matrix = detail::permute_matrix(op.matrix(), layout.original_of_party_major);
  layout.parties = sys.parties();
  for (Party p : layout.parties) layout.dims.push_back(sys.party_dim(p));
  return layout;
}

Vector product_vector(const LabeledOperator& op, const std::vector<Vector>& parts) {
  const auto layout = party_layout(op);
  if (parts.size() != layout.dims.size()) throw Error(ErrorCode::DimensionMismatch, "wrong number of parts");
  for (std::size_t k = 0; k < parts.size(); ++k)
    if (parts[k].size() != layout.dims[k]) throw Error(ErrorCode::DimensionMismatch, "part has wrong dimension");
  const Vector pm = kron_vectors(parts);
  Vector out(pm.size());
  for (std::size_t i = 0; i < layout.original_of_party_major.size(); ++i)
    out(layout.original_of_party_major[i]) = pm(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace witness_forge
