#pragma once

// Correspondence between completely positive maps and positive operators.
//
// For a map with Kraus operators O_k : H_in -> H_out the operator is
//   E = nu * sum_k vec(O_k) vec(O_k)^dagger,   nu = 1 / dim(H_in)^2,
// with vec index (out, in), i.e. E = nu (E (x) id)(P (x) ... (x) P) up to the
// ordering of factors. Inside E the output factors come first and input
// factors follow, their indices shifted past the largest output index so
// every party keeps its output and input factors under one letter.
// The map is recovered by E(rho) = tr_in(E (1 (x) rho^T)) / nu.

#include <string>
#include <vector>

#include "witness_forge/operator.hpp"
#include "witness_forge/witness.hpp"

namespace witness_forge {

struct KrausMap {
  PartySystem input;
  PartySystem output;
  std::vector<Matrix> terms;  // dim(output) x dim(input), in the systems' own factor order
  bool local = false;         // every term is a product of per-party operators

  static KrausMap general(PartySystem input, PartySystem output, std::vector<Matrix> terms);
  /// Each term lists one operator per party of input u output (sorted A < B < C),
  /// mapping that party's input factors to its output factors (dimension 1 when
  /// the party is absent on that side).
  static KrausMap separable(PartySystem input, PartySystem output, const std::vector<std::vector<Matrix>>& local_terms);

  /// sum_k O_k rho O_k^dagger.
  LabeledOperator apply(const LabeledOperator& rho) const;
};

struct ChoiOperator {
  LabeledOperator op;
  PartySystem input;
  PartySystem output;
  std::vector<FactorLabel> input_labels;  // labels of the input factors inside op
  double normalization = 1.0;             // nu
};

/// Shifted labels used for the input factors inside a Choi operator.
std::vector<FactorLabel> choi_input_labels(const PartySystem& input, const PartySystem& output);

ChoiOperator map_to_choi(const KrausMap& map);
/// Wraps an operator already laid out as (output factors, shifted input factors).
ChoiOperator choi_from_operator(const LabeledOperator& op, PartySystem input, PartySystem output, double normalization);

LabeledOperator apply_via_choi(const ChoiOperator& e, const LabeledOperator& rho);

enum class Separability { Separable, Entangled, PptOnly };
std::string to_string(Separability s);

struct ChoiCut {
  std::string name;
  std::vector<FactorLabel> transposed;
  double min_eigenvalue = 0.0;
  bool ppt = true;
};

struct PProperties {
  std::vector<ChoiCut> cuts;
  bool ppt_preserving = true;
  /// Exact only when one cut splits the space into sides of product dimension <= 6.
  Separability separability = Separability::PptOnly;
};

/// Cuts are the party cuts when the map involves two or more parties; a
/// single-party map is cut between its output and input factors.
PProperties check_p_properties(const ChoiOperator& e, double tol = kPsdTol);

struct PairingIdentity {
  double lhs = 0.0;  // tr[P^{T_t} E(rho)], map applied through the Choi operator
  double rhs = 0.0;  // tr[W_rho (E^T)^{T_t}] / nu
};

/// Evaluates both sides of the pairing identity for the witness of `rho`
/// (party-major, indices from 1). E must map rho's system to the two ancilla
/// qubits of construction c.
PairingIdentity witness_pairing_identity(const LabeledOperator& rho, const ChoiOperator& e, Construction c);

}  // namespace witness_forge
