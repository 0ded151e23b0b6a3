#include "witness_forge/operator.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace witness_forge {

char party_char(Party p) { return static_cast<char>('A' + static_cast<int>(p)); }

Party party_from_char(char c) {
  switch (c) {
    case 'A': case 'a': return Party::A;
    case 'B': case 'b': return Party::B;
    case 'C': case 'c': return Party::C;
    default: throw Error(ErrorCode::BadParameter, std::string("unknown party '") + c + "'");
  }
}

std::string to_string(const FactorLabel& label) {
  return std::string(1, party_char(label.party)) + std::to_string(label.index);
}

// ---------------------------------------------------------------------------
// PartySystem

PartySystem::PartySystem(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<FactorLabel> seen;
  long long total = 1;
  for (const auto& f : factors_) {
    if (f.label.index < 1)
      throw Error(ErrorCode::BadParameter, "factor index must be positive: " + to_string(f.label));
    if (f.dim < 2)
      throw Error(ErrorCode::BadDimension, "factor " + to_string(f.label) + " has dimension < 2");
    if (!seen.insert(f.label).second)
      throw Error(ErrorCode::DuplicateLabel, "label " + to_string(f.label) + " appears twice");
    total *= f.dim;
    if (total > kMaxTotalDim)
      throw Error(ErrorCode::BadDimension, "total dimension exceeds " + std::to_string(kMaxTotalDim));
  }
  total_dim_ = static_cast<int>(total);
}

std::optional<std::size_t> PartySystem::find(const FactorLabel& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return i;
  return std::nullopt;
}

std::size_t PartySystem::position(const FactorLabel& label) const {
  auto pos = find(label);
  if (!pos) throw Error(ErrorCode::UnknownLabel, "label " + to_string(label) + " not in system");
  return *pos;
}

std::vector<FactorLabel> PartySystem::labels() const {
  std::vector<FactorLabel> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

std::vector<FactorLabel> PartySystem::labels_of(Party p) const {
  std::vector<FactorLabel> out;
  for (const auto& f : factors_)
    if (f.label.party == p) out.push_back(f.label);
  return out;
}

std::vector<int> PartySystem::dims() const {
  std::vector<int> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.dim);
  return out;
}

std::vector<Party> PartySystem::parties() const {
  std::vector<Party> out;
  for (Party p : {Party::A, Party::B, Party::C})
    if (has_party(p)) out.push_back(p);
  return out;
}

bool PartySystem::has_party(Party p) const {
  return std::any_of(factors_.begin(), factors_.end(), [p](const Factor& f) { return f.label.party == p; });
}

int PartySystem::party_dim(Party p) const {
  int d = 1;
  for (const auto& f : factors_)
    if (f.label.party == p) d *= f.dim;
  return d;
}

std::vector<FactorLabel> PartySystem::party_major_order() const {
  auto out = labels();
  std::sort(out.begin(), out.end());
  return out;
}

PartySystem concat(const PartySystem& a, const PartySystem& b) {
  std::vector<Factor> factors = a.factors();
  factors.insert(factors.end(), b.factors().begin(), b.factors().end());
  return PartySystem(std::move(factors));
}

// ---------------------------------------------------------------------------
// index helpers

namespace detail {

void check_hermitian(const Matrix& m) {
  const double scale = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  const double dev = m.size() ? (m - m.adjoint()).cwiseAbs().maxCoeff() : 0.0;
  if (dev > kHermTol * scale)
    throw Error(ErrorCode::NotHermitian,
                "max|M - M^dagger| = " + std::to_string(dev) + " exceeds tolerance");
}

std::vector<int> strides(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

std::vector<int> permutation_map(const std::vector<int>& dims, const std::vector<std::size_t>& order) {
  const int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  const auto old_strides = strides(dims);
  std::vector<int> new_dims;
  for (auto k : order) new_dims.push_back(dims[k]);
  const auto new_strides = strides(new_dims);

  std::vector<int> old_of_new(static_cast<std::size_t>(total));
  for (int n = 0; n < total; ++n) {
    int old = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int digit = (n / new_strides[k]) % new_dims[k];
      old += digit * old_strides[order[k]];
    }
    old_of_new[static_cast<std::size_t>(n)] = old;
  }
  return old_of_new;
}

Matrix permute_matrix(const Matrix& m, const std::vector<int>& old_of_new) {
  const auto n = static_cast<Eigen::Index>(old_of_new.size());
  Matrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) out(r, c) = m(old_of_new[r], old_of_new[c]);
  return out;
}

Vector permute_vector(const Vector& v, const std::vector<int>& old_of_new) {
  Vector out(static_cast<Eigen::Index>(old_of_new.size()));
  for (std::size_t i = 0; i < old_of_new.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(old_of_new[i]);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// LabeledOperator

LabeledOperator::LabeledOperator(PartySystem system, Matrix entries)
    : system_(std::move(system)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw Error(ErrorCode::NotSquare, "matrix is " + std::to_string(entries_.rows()) + "x" +
                                          std::to_string(entries_.cols()));
  if (entries_.rows() != system_.total_dim())
    throw Error(ErrorCode::DimensionMismatch, "matrix dimension " + std::to_string(entries_.rows()) +
                                                  " does not match factor product " +
                                                  std::to_string(system_.total_dim()));
  detail::check_hermitian(entries_);
}

LabeledOperator LabeledOperator::identity(PartySystem system) {
  const int d = system.total_dim();
  return {std::move(system), Matrix::Identity(d, d)};
}

LabeledOperator LabeledOperator::zero(PartySystem system) {
  const int d = system.total_dim();
  return {std::move(system), Matrix::Zero(d, d)};
}

LabeledOperator LabeledOperator::projector(PartySystem system, const Vector& v) {
  if (v.size() != system.total_dim())
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match system dimension");
  return {std::move(system), v * v.adjoint()};
}

double LabeledOperator::max_abs() const { return entries_.size() ? entries_.cwiseAbs().maxCoeff() : 0.0; }

double LabeledOperator::trace() const { return entries_.trace().real(); }

LabeledOperator LabeledOperator::operator+(const LabeledOperator& other) const {
  if (!(system_ == other.system_)) throw Error(ErrorCode::DimensionMismatch, "operator sum on different systems");
  return {system_, entries_ + other.entries_};
}

LabeledOperator LabeledOperator::operator-(const LabeledOperator& other) const {
  if (!(system_ == other.system_))
    throw Error(ErrorCode::DimensionMismatch, "operator difference on different systems");
  return {system_, entries_ - other.entries_};
}

LabeledOperator LabeledOperator::operator*(double s) const { return {system_, entries_ * s}; }

// ---------------------------------------------------------------------------
// operations

LabeledOperator tensor(const LabeledOperator& a, const LabeledOperator& b) {
  for (const auto& f : b.system().factors())
    if (a.system().find(f.label))
      throw Error(ErrorCode::DuplicateLabel, "label " + to_string(f.label) + " present in both operands");
  PartySystem system = concat(a.system(), b.system());
  const auto& ma = a.matrix();
  const auto& mb = b.matrix();
  const Eigen::Index db = mb.rows();
  Matrix out(ma.rows() * db, ma.cols() * db);
  for (Eigen::Index j = 0; j < ma.cols(); ++j)
    for (Eigen::Index i = 0; i < ma.rows(); ++i) out.block(i * db, j * db, db, db) = ma(i, j) * mb;
  return {std::move(system), std::move(out)};
}

LabeledOperator partial_transpose(const LabeledOperator& op, const std::vector<FactorLabel>& targets) {
  if (targets.empty()) throw Error(ErrorCode::BadParameter, "partial transpose needs at least one target");
  const auto dims = op.system().dims();
  const auto st = detail::strides(dims);
  std::vector<std::size_t> positions;
  for (const auto& t : targets) positions.push_back(op.system().position(t));

  const Matrix& m = op.matrix();
  const Eigen::Index n = m.rows();
  Matrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      Eigen::Index r2 = r, c2 = c;
      for (auto k : positions) {
        const int dr = static_cast<int>((r / st[k]) % dims[k]);
        const int dc = static_cast<int>((c / st[k]) % dims[k]);
        r2 += static_cast<Eigen::Index>(dc - dr) * st[k];
        c2 += static_cast<Eigen::Index>(dr - dc) * st[k];
      }
      out(r2, c2) = m(r, c);
    }
  }
  return {op.system(), std::move(out)};
}

LabeledOperator partial_transpose(const LabeledOperator& op, Party party) {
  auto targets = op.system().labels_of(party);
  if (targets.empty())
    throw Error(ErrorCode::UnknownLabel, std::string("party ") + party_char(party) + " not in system");
  return partial_transpose(op, targets);
}

LabeledOperator partial_trace(const LabeledOperator& op, const std::vector<FactorLabel>& targets) {
  const auto& sys = op.system();
  std::vector<bool> traced(sys.size(), false);
  for (const auto& t : targets) traced[sys.position(t)] = true;
  if (std::all_of(traced.begin(), traced.end(), [](bool b) { return b; }))
    throw Error(ErrorCode::CannotTraceAll, "use the scalar trace to trace out every factor");
  if (targets.empty()) return op;

  const auto dims = sys.dims();
  const auto st = detail::strides(dims);
  std::vector<Factor> kept_factors;
  std::vector<std::size_t> kept_pos, traced_pos;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (traced[i]) {
      traced_pos.push_back(i);
    } else {
      kept_pos.push_back(i);
      kept_factors.push_back(sys.factors()[i]);
    }
  }
  auto offsets = [&](const std::vector<std::size_t>& pos) {
    std::vector<int> sub_dims;
    for (auto p : pos) sub_dims.push_back(dims[p]);
    const auto sub_st = detail::strides(sub_dims);
    const int count = std::accumulate(sub_dims.begin(), sub_dims.end(), 1, std::multiplies<>());
    std::vector<int> off(static_cast<std::size_t>(count), 0);
    for (int idx = 0; idx < count; ++idx)
      for (std::size_t k = 0; k < pos.size(); ++k)
        off[static_cast<std::size_t>(idx)] += ((idx / sub_st[k]) % sub_dims[k]) * st[pos[k]];
    return off;
  };
  const auto keep_off = offsets(kept_pos);
  const auto trace_off = offsets(traced_pos);

  const Matrix& m = op.matrix();
  const auto nk = static_cast<Eigen::Index>(keep_off.size());
  Matrix out = Matrix::Zero(nk, nk);
  for (Eigen::Index c = 0; c < nk; ++c)
    for (Eigen::Index r = 0; r < nk; ++r) {
      cplx acc = 0.0;
      for (int t : trace_off) acc += m(keep_off[r] + t, keep_off[c] + t);
      out(r, c) = acc;
    }
  return {PartySystem(std::move(kept_factors)), std::move(out)};
}

LabeledOperator permute_factors(const LabeledOperator& op, const std::vector<FactorLabel>& new_order) {
  const auto& sys = op.system();
  if (new_order.size() != sys.size())
    throw Error(ErrorCode::NotAPermutation, "new order has the wrong number of factors");
  std::vector<std::size_t> order;
  std::vector<bool> used(sys.size(), false);
  std::vector<Factor> factors;
  for (const auto& label : new_order) {
    auto pos = sys.find(label);
    if (!pos || used[*pos])
      throw Error(ErrorCode::NotAPermutation, "label " + to_string(label) + " missing or repeated");
    used[*pos] = true;
    order.push_back(*pos);
    factors.push_back(sys.factors()[*pos]);
  }
  const auto map = detail::permutation_map(sys.dims(), order);
  return {PartySystem(std::move(factors)), detail::permute_matrix(op.matrix(), map)};
}

LabeledOperator to_party_major(const LabeledOperator& op) {
  return permute_factors(op, op.system().party_major_order());
}

Spectrum eigen(const LabeledOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const LabeledOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
  return solver.eigenvalues()(0);
}

bool is_psd(const LabeledOperator& op, double tol) {
  const double scale = op.max_abs();
  if (scale == 0.0) return true;
  return min_eigenvalue(op) >= -tol * scale;
}

double trace_product(const LabeledOperator& a, const LabeledOperator& b) {
  if (!(a.system() == b.system())) throw Error(ErrorCode::DimensionMismatch, "trace product on different systems");
  // tr(AB) = sum_ij A_ij B_ji
  return (a.matrix().cwiseProduct(b.matrix().transpose())).sum().real();
}

double expectation(const LabeledOperator& op, const Vector& v) {
  if (v.size() != op.dim()) throw Error(ErrorCode::DimensionMismatch, "vector length does not match operator");
  return v.dot(op.matrix() * v).real();
}

double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b) {
  if (!(a.system() == b.system())) throw Error(ErrorCode::DimensionMismatch, "comparing different systems");
  return a.dim() ? (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() : 0.0;
}

LabeledOperator normalize(const LabeledOperator& op) {
  const double tr = op.trace();
  if (tr == 0.0) throw Error(ErrorCode::BadParameter, "cannot normalize an operator with zero trace");
  return op * (1.0 / tr);
}

std::vector<CutReport> party_cut_report(const LabeledOperator& op, double tol) {
  std::vector<CutReport> out;
  for (Party p : op.system().parties()) {
    const auto pt = partial_transpose(op, p);
    const double scale = pt.max_abs();
    const double m = min_eigenvalue(pt);
    out.push_back({p, m, scale == 0.0 || m >= -tol * scale});
  }
  return out;
}

bool ppt_on_all_cuts(const LabeledOperator& op, double tol) {
  for (const auto& c : party_cut_report(op, tol))
    if (!c.ppt) return false;
  return true;
}

}  // namespace witness_forge
