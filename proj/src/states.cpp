#include "witness_forge/states.hpp"

#include <map>

namespace witness_forge {

Vector basis_vector(int d, int k) {
  if (d < 1 || k < 0 || k >= d) throw Error(ErrorCode::BadParameter, "basis index out of range");
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

Vector max_entangled_vector(int d) {
  if (d < 2) throw Error(ErrorCode::BadDimension, "maximally entangled vector needs d >= 2");
  Vector v = Vector::Zero(d * d);
  for (int k = 0; k < d; ++k) v(k * d + k) = 1.0;
  return v;
}

LabeledOperator max_entangled_projector(int d, FactorLabel first, FactorLabel second) {
  return LabeledOperator::projector(PartySystem({{first, d}, {second, d}}), max_entangled_vector(d));
}

LabeledOperator projector_p(FactorLabel first, FactorLabel second) { return max_entangled_projector(2, first, second); }

Vector w_vector() {
  Vector v = Vector::Zero(8);
  v(1) = v(2) = v(4) = 1.0;
  return v;
}

Vector psi_plus_vector() {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1.0;
  return v;
}

PartySystem three_qubits() { return PartySystem({{{Party::A, 1}, 2}, {{Party::B, 1}, 2}, {{Party::C, 1}, 2}}); }

LabeledOperator w_state() { return LabeledOperator::projector(three_qubits(), w_vector()); }

LabeledOperator psi_plus(FactorLabel first, FactorLabel second) {
  return LabeledOperator::projector(PartySystem({{first, 2}, {second, 2}}), psi_plus_vector());
}

LabeledOperator ghz(int d) {
  if (d < 2) throw Error(ErrorCode::BadDimension, "GHZ needs d >= 2");
  Vector v = Vector::Zero(d * d * d);
  for (int i = 0; i < d; ++i) v(i * d * d + i * d + i) = 1.0;
  return LabeledOperator::projector(
      PartySystem({{{Party::A, 1}, d}, {{Party::B, 1}, d}, {{Party::C, 1}, d}}), v);
}

LabeledOperator rho_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::BadParameter, "rho_alpha needs alpha >= 0");
  const Vector w = w_vector();
  return {three_qubits(), Matrix::Identity(8, 8) + alpha * (w * w.adjoint())};
}

LabeledOperator n_copies(const LabeledOperator& rho, int n, CopyGrouping grouping) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "number of copies must be >= 1");
  const auto& factors = rho.system().factors();
  std::map<Party, int> per_party;
  for (const auto& f : factors) ++per_party[f.label.party];

  auto copy_k = [&](int k) {
    std::map<Party, int> seen;
    std::vector<Factor> fs;
    for (const auto& f : factors) {
      const int j = ++seen[f.label.party];
      fs.push_back({{f.label.party, (k - 1) * per_party[f.label.party] + j}, f.dim});
    }
    return LabeledOperator(PartySystem(std::move(fs)), rho.matrix());
  };

  LabeledOperator out = copy_k(1);
  for (int k = 2; k <= n; ++k) out = tensor(out, copy_k(k));
  if (grouping == CopyGrouping::PartyMajor) out = to_party_major(out);
  return out;
}

LabeledOperator project_party(const LabeledOperator& rho, Party party, const Vector& h) {
  const auto& sys = rho.system();
  const auto targets = sys.labels_of(party);
  if (targets.empty()) throw Error(ErrorCode::UnknownLabel, std::string("party ") + party_char(party) + " not in state");
  if (targets.size() == sys.size())
    throw Error(ErrorCode::BadParameter, "projection would leave no remaining factors");
  const int da = sys.party_dim(party);
  if (h.size() != da)
    throw Error(ErrorCode::DimensionMismatch, "measurement vector has length " + std::to_string(h.size()) +
                                                  ", party dimension is " + std::to_string(da));
  if (h.norm() == 0.0) throw Error(ErrorCode::BadParameter, "zero measurement vector");

  std::vector<FactorLabel> order = targets;
  std::vector<Factor> rest;
  for (const auto& f : sys.factors())
    if (f.label.party != party) {
      order.push_back(f.label);
      rest.push_back(f);
    }
  const Matrix m = permute_factors(rho, order).matrix();
  const Eigen::Index r = m.rows() / da;
  Matrix out = Matrix::Zero(r, r);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < da; ++b) {
      const cplx w = std::conj(h(a)) * h(b);
      if (w != 0.0) out += w * m.block(a * r, b * r, r, r);
    }
  // Conjugate-symmetric accumulation can leave rounding-level asymmetry.
  out = 0.5 * (out + out.adjoint()).eval();
  return {PartySystem(std::move(rest)), std::move(out)};
}

LabeledOperator project_onto_alice(const LabeledOperator& rho, const Vector& h) {
  return project_party(rho, Party::A, h);
}

}  // namespace witness_forge
