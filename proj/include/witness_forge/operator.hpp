#pragma once

// Dense Hermitian operators over labeled tensor factors.
//
// Basis convention: the leftmost factor of a PartySystem is the slowest
// varying index (row-major Kronecker order), so tensor(a, b) has entries
// a(i, j) * b(k, l) at row i * dim(b) + k, column j * dim(b) + l.

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "witness_forge/error.hpp"

namespace witness_forge {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest total dimension accepted for a PartySystem.
inline constexpr int kMaxTotalDim = 4096;
/// Relative Hermiticity tolerance: max|M - M^dagger| <= kHermTol * max|M|.
inline constexpr double kHermTol = 1e-10;
/// Default PSD tolerance, applied after normalizing by max|M|.
inline constexpr double kPsdTol = 1e-9;

enum class Party : std::uint8_t { A = 0, B = 1, C = 2 };

char party_char(Party p);
Party party_from_char(char c);

struct FactorLabel {
  Party party = Party::A;
  int index = 1;

  auto operator<=>(const FactorLabel&) const = default;
};

std::string to_string(const FactorLabel& label);

struct Factor {
  FactorLabel label;
  int dim = 2;

  bool operator==(const Factor&) const = default;
};

/// Ordered list of labeled tensor factors. Labels are unique and every
/// dimension is at least 2.
class PartySystem {
 public:
  PartySystem() = default;
  explicit PartySystem(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  int total_dim() const { return total_dim_; }

  std::optional<std::size_t> find(const FactorLabel& label) const;
  /// Position of `label`; throws UnknownLabel.
  std::size_t position(const FactorLabel& label) const;
  int dim_of(const FactorLabel& label) const { return factors_[position(label)].dim; }

  std::vector<FactorLabel> labels() const;
  std::vector<FactorLabel> labels_of(Party p) const;
  std::vector<int> dims() const;
  /// Distinct parties present, sorted A < B < C.
  std::vector<Party> parties() const;
  bool has_party(Party p) const;
  /// Product of the dimensions of all factors belonging to `p` (1 if absent).
  int party_dim(Party p) const;

  /// Labels sorted by (party, index): the party-major order.
  std::vector<FactorLabel> party_major_order() const;

  bool operator==(const PartySystem&) const = default;

 private:
  std::vector<Factor> factors_;
  int total_dim_ = 1;
};

PartySystem concat(const PartySystem& a, const PartySystem& b);

/// Dense complex Hermitian matrix whose rows and columns are indexed by the
/// computational basis of `system`.
class LabeledOperator {
 public:
  /// Validates squareness, dimension product and Hermiticity.
  LabeledOperator(PartySystem system, Matrix entries);

  static LabeledOperator identity(PartySystem system);
  static LabeledOperator zero(PartySystem system);
  /// |v><v| on `system`.
  static LabeledOperator projector(PartySystem system, const Vector& v);

  const PartySystem& system() const { return system_; }
  const Matrix& matrix() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }

  double max_abs() const;
  double trace() const;

  LabeledOperator operator+(const LabeledOperator& other) const;
  LabeledOperator operator-(const LabeledOperator& other) const;
  LabeledOperator operator*(double s) const;

 private:
  PartySystem system_;
  Matrix entries_;
};

inline LabeledOperator operator*(double s, const LabeledOperator& op) { return op * s; }

struct Spectrum {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns

  double min() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }
  double max() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0; }
};

/// Kronecker product; the result system is a.factors ++ b.factors.
LabeledOperator tensor(const LabeledOperator& a, const LabeledOperator& b);

LabeledOperator partial_transpose(const LabeledOperator& op, const std::vector<FactorLabel>& targets);
/// Transposes every factor belonging to `party` (T_A on copies means T_{A1} T_{A2} ...).
LabeledOperator partial_transpose(const LabeledOperator& op, Party party);

/// Traces out `targets`; the remaining factors keep their order.
LabeledOperator partial_trace(const LabeledOperator& op, const std::vector<FactorLabel>& targets);

LabeledOperator permute_factors(const LabeledOperator& op, const std::vector<FactorLabel>& new_order);
/// Permutes into party-major order (sorted by party, then index).
LabeledOperator to_party_major(const LabeledOperator& op);

/// Returns a copy with every factor label rewritten by `relabel`.
template <class F>
LabeledOperator relabel(const LabeledOperator& op, F&& relabel_fn) {
  std::vector<Factor> factors = op.system().factors();
  for (auto& f : factors) f.label = relabel_fn(f.label);
  return LabeledOperator(PartySystem(std::move(factors)), op.matrix());
}

Spectrum eigen(const LabeledOperator& op);
double min_eigenvalue(const LabeledOperator& op);
/// True iff min eigenvalue >= -tol * max|op|.
bool is_psd(const LabeledOperator& op, double tol = kPsdTol);

/// Re tr(a b) for operators on the same system.
double trace_product(const LabeledOperator& a, const LabeledOperator& b);
/// <v|op|v> (real part); v is not normalized.
double expectation(const LabeledOperator& op, const Vector& v);
/// max |a - b| entrywise; systems must match.
double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b);

LabeledOperator normalize(const LabeledOperator& op);

/// PPT status of one party cut (the party's factors versus the rest).
struct CutReport {
  Party party = Party::A;
  double min_eigenvalue = 0.0;
  bool ppt = true;
};
/// One entry per party present; `tol` follows is_psd.
std::vector<CutReport> party_cut_report(const LabeledOperator& op, double tol = kPsdTol);
bool ppt_on_all_cuts(const LabeledOperator& op, double tol = kPsdTol);

namespace detail {

void check_hermitian(const Matrix& m);

/// Index tables for a factor layout (row-major, leftmost slowest).
std::vector<int> strides(const std::vector<int>& dims);

/// For each basis index of the permuted layout, the index in the original
/// layout. `order[k]` is the original position of the k-th new factor.
std::vector<int> permutation_map(const std::vector<int>& dims, const std::vector<std::size_t>& order);

Matrix permute_matrix(const Matrix& m, const std::vector<int>& old_of_new);
Vector permute_vector(const Vector& v, const std::vector<int>& old_of_new);

}  // namespace detail

}  // namespace witness_forge
