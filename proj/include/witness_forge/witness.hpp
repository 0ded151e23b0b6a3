#pragma once

// Witness operators built from a state, the product-state search deciding
// their positivity on product vectors, and decomposition certificates.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "witness_forge/operator.hpp"
#include "witness_forge/search.hpp"

namespace witness_forge {

/// Which operator is built from the state X:
///   BipartiteWX  P_{A1,B1} (x) X^{T_A}
///   TripartiteA  P_{B1,C1} (x) X^{T_C}   (B-C entanglement, A assists)
///   TripartiteB  P_{A1,C1} (x) X^{T_A}   (A-C entanglement, B assists)
///   TripartiteC  P_{A1,B1} (x) X^{T_B}   (A-B entanglement, C assists)
enum class Construction { BipartiteWX, TripartiteA, TripartiteB, TripartiteC };

std::string to_string(Construction c);
Construction construction_from_string(const std::string& s);

struct ConstructionLayout {
  std::array<Party, 2> ancilla;  // the two parties holding the P ancilla pair
  Party transposed;
  std::optional<Party> assisting;
};
ConstructionLayout layout_of(Construction c);

/// Parties (r, q) of the decomposition X = R^{T_r} + Q^{T_q} whose existence
/// makes the witness decomposable.
std::pair<Party, Party> decomposition_parties(Construction c);

struct WitnessOperator {
  LabeledOperator op;
  Construction construction;
  int copies = 1;
  /// X^{(x)N}, party-major, state factors indexed from 2 (index 1 is the ancilla).
  LabeledOperator source;
  double min_eigenvalue = 0.0;
  /// Min eigenvalue of the transposed source; its sign must agree with the witness.
  double source_transposed_min_eigenvalue = 0.0;
  bool psd = false;
};

/// Requires X positive semidefinite with the party set matching `c`.
WitnessOperator build_witness(const LabeledOperator& x, Construction c, int copies = 1);
/// Rebuilds the metadata of an operator written by build_witness.
WitnessOperator witness_from_operator(const LabeledOperator& op, Construction c, int copies);

enum class Status { Proven, Refuted, Inconclusive };
std::string to_string(Status s);

struct ProductCertificate {
  std::vector<Party> parties;
  std::vector<Vector> parts;  // unit vectors, one per party
  Vector full;                // in the witness' own factor order
  double value = 0.0;         // <v|W|v> / <v|v>
};

struct SpectralCertificate {
  double min_eigenvalue = 0.0;
};

/// (R, Q) with target = R^{T_r} + Q^{T_q}.
struct DecompositionCertificate {
  LabeledOperator R;
  LabeledOperator Q;
  LabeledOperator target;
  Party r_party = Party::C;
  Party q_party = Party::B;
  double residual = 0.0;
  double min_eig_R = 0.0;
  double min_eig_Q = 0.0;
};

DecompositionCertificate make_decomposition_certificate(LabeledOperator R, LabeledOperator Q, LabeledOperator target,
                                                        Party r_party = Party::C, Party q_party = Party::B);

/// A PPT operator detected by a witness: tr(W E) < 0.
struct DetectionCertificate {
  LabeledOperator detector;
  double pairing = 0.0;
  std::vector<CutReport> cuts;
};

using Certificate =
    std::variant<std::monostate, ProductCertificate, SpectralCertificate, DecompositionCertificate, DetectionCertificate>;

struct Verdict {
  Status status = Status::Inconclusive;
  Certificate certificate;
  double best_value = 0.0;
  int restarts_used = 0;
  std::string note;
};

/// Searches for a product vector with negative expectation. Refuted carries
/// the vector; Inconclusive carries the lowest value reached.
Verdict min_product_expectation(const WitnessOperator& w, const SearchConfig& cfg);
/// Generic form: parties are the operator's parties, extra seeds are
/// per-party start vectors tried before the random restarts.
Verdict min_product_expectation(const LabeledOperator& w, const SearchConfig& cfg,
                                const std::vector<std::vector<Vector>>& seeds = {});

/// Structured starting points derived from the witness source: the most
/// negative eigenvector of the (projected) transposed source, truncated to
/// Schmidt rank two, spread over the ancilla pair.
std::vector<std::vector<Vector>> structured_witness_seeds(const WitnessOperator& w);

enum class WitnessClass { NotAWitness, NoEW, EW_Undetermined, DEW_Certified, NDEW_Certified };
std::string to_string(WitnessClass c);

struct ClassifyEvidence {
  std::optional<DecompositionCertificate> decomposition;
  std::optional<LabeledOperator> detector;
};

struct Classification {
  WitnessClass kind = WitnessClass::EW_Undetermined;
  Verdict verdict;
};

Classification classify_witness(const WitnessOperator& w, const SearchConfig& cfg, const ClassifyEvidence& evidence = {});

/// Recomputes min eigenvalues and residual from R, Q and target. Proven iff
/// both are PSD within `tol` (normalized) and the residual is <= tol_res.
/// Otherwise Inconclusive: a failed certificate decides nothing.
Verdict verify_decomposition(const DecompositionCertificate& cert, double tol = kPsdTol, double tol_res = 1e-12);

/// Default weight y of the two-copy certificate.
inline constexpr double kDefaultY = 0.4953;
/// Upper end of the alpha range where the two-copy certificate holds at the default y.
inline constexpr double kTwoCopyAlphaMax = 0.8507;

enum class RangePolicy { Enforce, Allow };

/// Explicit certificate for rho_alpha^{(x)copies}, copies in {1, 2}:
///   copies = 1: R = alpha |Psi+><Psi+|_{AB} (x) |0><0|_C
///   copies = 2: R = y (s (x) R1 + R1 (x) s), s = rho_{1/sqrt2}^{T_C}, R1 = |Psi+><Psi+| (x) |0><0|
/// and Q = (rho^{(x)N})^{T_B} - R^{T_A}, so that (rho^{(x)N})^{T_C} = R + Q^{T_A}.
/// The returned certificate is in the target = R^{T_C} + Q'^{T_B} form with
/// Q' the full transpose of Q. Two-copy operators use the party-major layout.
DecompositionCertificate paper_certificate(double alpha, int copies, double y = kDefaultY,
                                           RangePolicy policy = RangePolicy::Enforce);

/// Alternating projections between the PSD cones for (R, Q) and the affine
/// set target = R^{T_r} + Q^{T_q}. Proven with a certificate on convergence,
/// Inconclusive otherwise; never Refuted.
Verdict search_decomposition(const LabeledOperator& target, const SearchConfig& cfg, Party r_party, Party q_party);
/// Defaults: (C, B) for three parties, (A, B) for two.
Verdict search_decomposition(const LabeledOperator& target, const SearchConfig& cfg);

struct SpanningSet {
  std::vector<Vector> vectors;  // unit product vectors with |<v|W|v>| <= tol_zero
  std::vector<double> values;
  int span_rank = 0;
  int dimension = 0;
};

/// Collects zeros of the product expectation from seesaw runs. span_rank equal
/// to the dimension means the zeros span the space.
SpanningSet compute_spanning_set(const LabeledOperator& w, const SearchConfig& cfg);

/// Rank of the Gram matrix of `vectors` with eigenvalue threshold `tol`.
int span_rank(const std::vector<Vector>& vectors, double tol);

}  // namespace witness_forge
