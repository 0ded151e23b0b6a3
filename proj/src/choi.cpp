#include "witness_forge/choi.hpp"

#include <algorithm>
#include <set>

#include "witness_forge/seesaw.hpp"
#include "witness_forge/states.hpp"

namespace witness_forge {

std::string to_string(Separability s) {
  switch (s) {
    case Separability::Separable: return "separable";
    case Separability::Entangled: return "entangled";
    case Separability::PptOnly: return "ppt-necessary-only";
  }
  return "?";
}

namespace {

// Original basis index -> party-major basis index.
std::vector<int> party_major_of_original(const PartySystem& sys) {
  std::vector<std::size_t> order;
  for (const auto& l : sys.party_major_order()) order.push_back(sys.position(l));
  const auto orig_of_pm = detail::permutation_map(sys.dims(), order);
  std::vector<int> out(orig_of_pm.size());
  for (std::size_t i = 0; i < orig_of_pm.size(); ++i) out[static_cast<std::size_t>(orig_of_pm[i])] = static_cast<int>(i);
  return out;
}

}  // namespace

KrausMap KrausMap::general(PartySystem input, PartySystem output, std::vector<Matrix> terms) {
  if (terms.empty()) throw Error(ErrorCode::ShapeMismatch, "a map needs at least one Kraus term");
  for (const auto& t : terms)
    if (t.rows() != output.total_dim() || t.cols() != input.total_dim())
      throw Error(ErrorCode::ShapeMismatch, "Kraus term is " + std::to_string(t.rows()) + "x" +
                                                std::to_string(t.cols()) + ", expected " +
                                                std::to_string(output.total_dim()) + "x" +
                                                std::to_string(input.total_dim()));
  return {std::move(input), std::move(output), std::move(terms), false};
}

KrausMap KrausMap::separable(PartySystem input, PartySystem output,
                             const std::vector<std::vector<Matrix>>& local_terms) {
  std::set<Party> party_set;
  for (Party p : input.parties()) party_set.insert(p);
  for (Party p : output.parties()) party_set.insert(p);
  const std::vector<Party> parties(party_set.begin(), party_set.end());

  const auto in_pm = party_major_of_original(input);
  const auto out_pm = party_major_of_original(output);
  std::vector<Matrix> terms;
  for (const auto& term : local_terms) {
    if (term.size() != parties.size())
      throw Error(ErrorCode::ShapeMismatch, "each local term needs one operator per party");
    Matrix k = Matrix::Ones(1, 1);
    for (std::size_t i = 0; i < parties.size(); ++i) {
      const Matrix& m = term[i];
      if (m.rows() != output.party_dim(parties[i]) || m.cols() != input.party_dim(parties[i]))
        throw Error(ErrorCode::ShapeMismatch,
                    std::string("local operator for party ") + party_char(parties[i]) + " has the wrong shape");
      Matrix next(k.rows() * m.rows(), k.cols() * m.cols());
      for (Eigen::Index r = 0; r < k.rows(); ++r)
        for (Eigen::Index c = 0; c < k.cols(); ++c) next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = k(r, c) * m;
      k = std::move(next);
    }
    Matrix o(output.total_dim(), input.total_dim());
    for (Eigen::Index r = 0; r < o.rows(); ++r)
      for (Eigen::Index c = 0; c < o.cols(); ++c) o(r, c) = k(out_pm[r], in_pm[c]);
    terms.push_back(std::move(o));
  }
  KrausMap map = general(std::move(input), std::move(output), std::move(terms));
  map.local = true;
  return map;
}

LabeledOperator KrausMap::apply(const LabeledOperator& rho) const {
  if (!(rho.system() == input)) throw Error(ErrorCode::ShapeMismatch, "state does not live on the map's input");
  Matrix out = Matrix::Zero(output.total_dim(), output.total_dim());
  for (const auto& o : terms) out.noalias() += o * rho.matrix() * o.adjoint();
  return {output, 0.5 * (out + out.adjoint())};
}

std::vector<FactorLabel> choi_input_labels(const PartySystem& input, const PartySystem& output) {
  int offset = 0;
  for (const auto& f : output.factors()) offset = std::max(offset, f.label.index);
  std::vector<FactorLabel> out;
  for (const auto& f : input.factors()) out.push_back({f.label.party, f.label.index + offset});
  return out;
}

namespace {

PartySystem choi_system(const PartySystem& input, const PartySystem& output, const std::vector<FactorLabel>& in_labels) {
  std::vector<Factor> factors = output.factors();
  for (std::size_t i = 0; i < in_labels.size(); ++i) factors.push_back({in_labels[i], input.factors()[i].dim});
  return PartySystem(std::move(factors));
}

}  // namespace

ChoiOperator map_to_choi(const KrausMap& map) {
  const int din = map.input.total_dim();
  const int dout = map.output.total_dim();
  const double nu = 1.0 / (static_cast<double>(din) * din);
  Matrix e = Matrix::Zero(static_cast<Eigen::Index>(din) * dout, static_cast<Eigen::Index>(din) * dout);
  for (const auto& o : map.terms) {
    if (o.rows() != dout || o.cols() != din) throw Error(ErrorCode::ShapeMismatch, "Kraus term has the wrong shape");
    // Row-major vec: index out * din + in.
    Vector v(static_cast<Eigen::Index>(din) * dout);
    for (int i = 0; i < dout; ++i)
      for (int a = 0; a < din; ++a) v(static_cast<Eigen::Index>(i) * din + a) = o(i, a);
    e.noalias() += v * v.adjoint();
  }
  e *= nu;
  auto in_labels = choi_input_labels(map.input, map.output);
  PartySystem sys = choi_system(map.input, map.output, in_labels);
  return {LabeledOperator(std::move(sys), 0.5 * (e + e.adjoint())), map.input, map.output, std::move(in_labels), nu};
}

ChoiOperator choi_from_operator(const LabeledOperator& op, PartySystem input, PartySystem output, double normalization) {
  if (!(normalization > 0.0)) throw Error(ErrorCode::BadParameter, "normalization must be positive");
  auto in_labels = choi_input_labels(input, output);
  const PartySystem expected = choi_system(input, output, in_labels);
  if (!(op.system() == expected))
    throw Error(ErrorCode::ShapeMismatch, "operator factors are not (output factors, shifted input factors)");
  return {op, std::move(input), std::move(output), std::move(in_labels), normalization};
}

LabeledOperator apply_via_choi(const ChoiOperator& e, const LabeledOperator& rho) {
  if (!(rho.system() == e.input)) throw Error(ErrorCode::ShapeMismatch, "state does not live on the map's input");
  const Eigen::Index din = e.input.total_dim();
  const Eigen::Index dout = e.output.total_dim();
  const Matrix& m = e.op.matrix();
  const Matrix& r = rho.matrix();
  Matrix out = Matrix::Zero(dout, dout);
  // out(i, j) = sum_{k,l} E[(i,k),(j,l)] rho(k, l)
  for (Eigen::Index j = 0; j < dout; ++j)
    for (Eigen::Index i = 0; i < dout; ++i)
      out(i, j) = m.block(i * din, j * din, din, din).cwiseProduct(r).sum();
  out /= e.normalization;
  return {e.output, 0.5 * (out + out.adjoint())};
}

PProperties check_p_properties(const ChoiOperator& e, double tol) {
  PProperties props;
  const auto& sys = e.op.system();
  const auto parties = sys.parties();
  auto make_cut = [&](std::string name, std::vector<FactorLabel> labels) {
    const auto pt = partial_transpose(e.op, labels);
    const double m = min_eigenvalue(pt);
    const double scale = pt.max_abs();
    return ChoiCut{std::move(name), std::move(labels), m, scale == 0.0 || m >= -tol * scale};
  };

  int side_a = 0, side_b = 0;
  if (parties.size() >= 2) {
    for (Party p : parties) props.cuts.push_back(make_cut(std::string(1, party_char(p)) + "|rest", sys.labels_of(p)));
    if (parties.size() == 2) {
      side_a = sys.party_dim(parties[0]);
      side_b = sys.party_dim(parties[1]);
    }
  } else {
    std::string name;
    for (const auto& f : e.output.factors()) name += to_string(f.label);
    name += "|";
    for (const auto& l : e.input_labels) name += to_string(l);
    props.cuts.push_back(make_cut(name, e.input_labels));
    side_a = e.output.total_dim();
    side_b = e.input.total_dim();
  }
  props.ppt_preserving = std::all_of(props.cuts.begin(), props.cuts.end(), [](const ChoiCut& c) { return c.ppt; });
  if (!props.ppt_preserving) {
    props.separability = Separability::Entangled;
  } else if (side_a > 0 && side_a * side_b <= 6) {
    props.separability = Separability::Separable;
  } else {
    props.separability = Separability::PptOnly;
  }
  return props;
}

PairingIdentity witness_pairing_identity(const LabeledOperator& rho, const ChoiOperator& e, Construction c) {
  const auto lay = layout_of(c);
  const WitnessOperator w = build_witness(rho, c, 1);
  const std::vector<FactorLabel> anc = {{lay.ancilla[0], 1}, {lay.ancilla[1], 1}};
  if (e.output.size() != 2 || !e.output.find(anc[0]) || !e.output.find(anc[1]) || e.output.dim_of(anc[0]) != 2 ||
      e.output.dim_of(anc[1]) != 2)
    throw Error(ErrorCode::ShapeMismatch, "map output must be the two ancilla qubits of construction " + to_string(c));

  LabeledOperator e_aligned = e.op;
  try {
    e_aligned = permute_factors(e.op, w.op.system().labels());
  } catch (const Error&) {
    throw Error(ErrorCode::ShapeMismatch, "Choi operator factors do not match the witness factors");
  }
  if (!(e_aligned.system() == w.op.system()))
    throw Error(ErrorCode::ShapeMismatch, "Choi operator dimensions do not match the witness");

  PairingIdentity out;
  const LabeledOperator mapped = apply_via_choi(e, rho);
  const LabeledOperator p_t =
      permute_factors(partial_transpose(projector_p(anc[0], anc[1]), {{lay.transposed, 1}}), mapped.system().labels());
  out.lhs = trace_product(p_t, mapped);

  const LabeledOperator e_t(e_aligned.system(), e_aligned.matrix().transpose());
  out.rhs = trace_product(w.op, partial_transpose(e_t, lay.transposed)) / e.normalization;
  return out;
}

}  // namespace witness_forge
