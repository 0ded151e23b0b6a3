#pragma once

#include <vector>

#include "witness_forge/operator.hpp"
#include "witness_forge/search.hpp"

namespace witness_forge {

/// Block-coordinate minimization of <v_1,...,v_k| W |v_1,...,v_k> over unit
/// product vectors. W is given in a layout where block 0 is the slowest index.
/// Each block update is the minimal eigenvector of W contracted with the
/// other blocks, so the objective never increases.
class ProductSeesaw {
 public:
  ProductSeesaw(Matrix w, std::vector<int> block_dims);

  struct Point {
    std::vector<Vector> parts;
    double value = 0.0;
    int iterations = 0;
    /// Objective after every block update (only when requested).
    std::vector<double> history;
  };

  const std::vector<int>& block_dims() const { return dims_; }

  /// Operator on block k obtained by contracting every other block.
  Matrix contract(const std::vector<Vector>& parts, std::size_t k) const;
  /// Normalized objective at a product point.
  double value(const std::vector<Vector>& parts) const;

  Point run(std::vector<Vector> start, int max_iterations, double convergence_tol, bool record_history = false) const;

  /// Random unit start for every block.
  std::vector<Vector> random_start(Rng& rng) const;

 private:
  Matrix w_;
  std::vector<int> dims_;
  std::vector<Matrix> block_last_;  // W with block k moved to the fastest index
};

/// Kronecker product of the parts, in order.
Vector kron_vectors(const std::vector<Vector>& parts);

/// Party-major layout of an operator: matrix, participating parties and the
/// per-party dimensions (each party's factors sorted by index).
struct PartyLayout {
  Matrix matrix;
  std::vector<Party> parties;
  std::vector<int> dims;
  /// Maps party-major basis index -> index in the operator's own layout.
  std::vector<int> original_of_party_major;
};
PartyLayout party_layout(const LabeledOperator& op);

/// Full product vector in the operator's own factor order.
Vector product_vector(const LabeledOperator& op, const std::vector<Vector>& parts);

}  // namespace witness_forge
