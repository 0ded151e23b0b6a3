#pragma once

// Constructors for the states and projectors used throughout the toolkit.
// Every state is kept unnormalized; use normalize() for density matrices.

#include "witness_forge/operator.hpp"

namespace witness_forge {

enum class CopyGrouping { CopyMajor, PartyMajor };

/// sum_k |k,k>, squared norm d.
Vector max_entangled_vector(int d);

/// |Phi_d><Phi_d| on (first, second), trace d.
LabeledOperator max_entangled_projector(int d, FactorLabel first = {Party::A, 1}, FactorLabel second = {Party::B, 1});

/// P = |Phi_2><Phi_2| on two qubits: rank 1, trace 2, P^2 = 2P.
LabeledOperator projector_p(FactorLabel first = {Party::A, 1}, FactorLabel second = {Party::B, 1});

/// |001> + |010> + |100>.
Vector w_vector();
/// |01> + |10>.
Vector psi_plus_vector();

/// |Psi_W><Psi_W| on A1, B1, C1.
LabeledOperator w_state();
/// |Psi+><Psi+| on (first, second).
LabeledOperator psi_plus(FactorLabel first = {Party::A, 1}, FactorLabel second = {Party::B, 1});
/// (sum_i |iii>)(sum_j <jjj|) on A1, B1, C1, each of dimension d.
LabeledOperator ghz(int d);

/// 1l_8 + alpha |Psi_W><Psi_W| on A1, B1, C1. Rejects alpha < 0.
LabeledOperator rho_alpha(double alpha);

/// The three-qubit system A1, B1, C1.
PartySystem three_qubits();

/// rho^{(x) n} with fresh factor indices: the j-th factor of party p in copy k
/// gets index (k - 1) * m_p + j, m_p being the number of factors p has in rho.
/// PartyMajor sorts the result by (party, index).
LabeledOperator n_copies(const LabeledOperator& rho, int n, CopyGrouping grouping);

/// <h| rho |h>_p: contracts every factor of `party` with h (indexed in the order
/// those factors appear in rho's system). Result keeps the remaining factors.
LabeledOperator project_party(const LabeledOperator& rho, Party party, const Vector& h);
LabeledOperator project_onto_alice(const LabeledOperator& rho, const Vector& h);

/// Basis vector |k> of dimension d.
Vector basis_vector(int d, int k);

}  // namespace witness_forge
