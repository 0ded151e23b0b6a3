#pragma once

// N-copy distillability by Schmidt-rank-two search on the partially
// transposed state, the exact two-qubit test, and activation checks against
// supplied PPT operators.

#include <optional>
#include <string>

#include "witness_forge/choi.hpp"
#include "witness_forge/operator.hpp"
#include "witness_forge/search.hpp"
#include "witness_forge/witness.hpp"

namespace witness_forge {

/// Bipartite: A | B. BC: B | C with A assisting, AB: A | B with C assisting,
/// AC: A | C with B assisting.
enum class Cut { Bipartite, BC, AB, AC };
std::string to_string(Cut c);
Cut cut_from_string(const std::string& s);

struct CutLayout {
  std::optional<Party> assisting;
  Party left;
  Party right;
  Party transposed;
};
CutLayout layout_of(Cut c);
/// Witness construction whose no-EW condition matches distillability across `c`.
Construction construction_of(Cut c);

/// |Psi> = |e1, f1> + |e2, f2>; the pairs need not be orthogonal.
struct SchmidtRank2Vector {
  Vector e1, e2;  // left party's space (all its copies)
  Vector f1, f2;  // right party's space

  /// Kronecker layout: left index slow, right index fast.
  Vector to_vector() const;
  /// Same vector with {e1, e2} and {f1, f2} orthogonal, f_i of unit norm and
  /// |e1| >= |e2|.
  SchmidtRank2Vector canonical() const;
};

enum class DistillStatus { Distillable, Inconclusive };
std::string to_string(DistillStatus s);

struct DistillVerdict {
  DistillStatus status = DistillStatus::Inconclusive;
  int copies = 1;
  Cut cut = Cut::Bipartite;
  /// <Psi,h| (rho^{(x)N})^{T_t} |Psi,h> / (<Psi|Psi><h|h>) at the best point.
  double best_value = 0.0;
  SchmidtRank2Vector psi;
  std::optional<Vector> alice_vector;  // assisting party's |h>, tripartite cuts only
  int restarts_used = 0;
  std::string note;
};

/// (rho^{(x)N})^{T_t} in (assisting, left, right) layout, each party's
/// copies grouped; rho^{(x)N} is built party-major.
LabeledOperator distill_operator(const LabeledOperator& rho, int copies, Cut cut);

DistillVerdict distill_search_bipartite(const LabeledOperator& rho, int copies, const SearchConfig& cfg);
/// Tripartite search; `cut` selects BC (default), AB or AC.
DistillVerdict distill_search_bc(const LabeledOperator& rho, int copies, const SearchConfig& cfg, Cut cut = Cut::BC);

/// Normalized quadratic form for a candidate (Psi, h), evaluated from scratch:
/// the full vector is assembled in rho^{(x)N}'s party-major basis.
double evaluate_distill_certificate(const LabeledOperator& rho, int copies, Cut cut, const SchmidtRank2Vector& psi,
                                    const std::optional<Vector>& h = std::nullopt);

/// Per-party unit vectors (parties sorted) of a product point of the witness
/// for construction_of(v.cut) whose expectation equals the certificate value
/// up to normalization: the assisting party takes h, the ancilla parties take
/// (e1; e2) and (f1; f2).
std::vector<Vector> witness_point_from_distill(const DistillVerdict& v);

/// Exact test on C^2 (x) C^2: rho^{T_B} has an eigenvalue below -tol.
bool two_qubit_distillable(const LabeledOperator& rho, double tol = 1e-9);

/// Checks whether E (a PPT-preserving map from rho^{(x)N} to the two ancilla
/// qubits of the cut's construction) detects the witness of rho^{(x)N}.
/// Proven iff E is PSD and PPT on every party cut and both sides of the
/// pairing identity are below -tol; Inconclusive otherwise.
Verdict verify_activation(const LabeledOperator& rho, int copies, const ChoiOperator& e, Cut cut, double tol = 1e-9);
/// Same with E given as an operator on (output qubits, shifted inputs),
/// normalization 1 / dim(input)^2.
Verdict verify_activation(const LabeledOperator& rho, int copies, const LabeledOperator& e, Cut cut,
                          double tol = 1e-9);

}  // namespace witness_forge
