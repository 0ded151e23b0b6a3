#include "witness_forge/distill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "witness_forge/states.hpp"

namespace witness_forge {

std::string to_string(Cut c) {
  switch (c) {
    case Cut::Bipartite: return "bipartite";
    case Cut::BC: return "BC";
    case Cut::AB: return "AB";
    case Cut::AC: return "AC";
  }
  return "?";
}

Cut cut_from_string(const std::string& s) {
  if (s == "bipartite") return Cut::Bipartite;
  if (s == "BC" || s == "bc") return Cut::BC;
  if (s == "AB" || s == "ab") return Cut::AB;
  if (s == "AC" || s == "ac") return Cut::AC;
  throw Error(ErrorCode::BadParameter, "unknown cut '" + s + "' (bipartite, BC, AB, AC)");
}

CutLayout layout_of(Cut c) {
  switch (c) {
    case Cut::Bipartite: return {std::nullopt, Party::A, Party::B, Party::A};
    case Cut::BC: return {Party::A, Party::B, Party::C, Party::C};
    case Cut::AB: return {Party::C, Party::A, Party::B, Party::B};
    case Cut::AC: return {Party::B, Party::A, Party::C, Party::A};
  }
  throw Error(ErrorCode::BadParameter, "unknown cut");
}

Construction construction_of(Cut c) {
  switch (c) {
    case Cut::Bipartite: return Construction::BipartiteWX;
    case Cut::BC: return Construction::TripartiteA;
    case Cut::AC: return Construction::TripartiteB;
    case Cut::AB: return Construction::TripartiteC;
  }
  throw Error(ErrorCode::BadParameter, "unknown cut");
}

std::string to_string(DistillStatus s) { return s == DistillStatus::Distillable ? "Distillable" : "Inconclusive"; }

Vector SchmidtRank2Vector::to_vector() const {
  const Eigen::Index dl = e1.size(), dr = f1.size();
  Vector v(dl * dr);
  for (Eigen::Index b = 0; b < dl; ++b) v.segment(b * dr, dr) = e1(b) * f1 + e2(b) * f2;
  return v;
}

namespace {

// Coefficient matrix M with Psi[b * dr + c] = M(b, c), truncated to rank two.
SchmidtRank2Vector split_rank2(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  auto col = [](const Matrix& x, Eigen::Index k) { return k < x.cols() ? Vector(x.col(k)) : Vector::Zero(x.rows()); };
  SchmidtRank2Vector out;
  const double s0 = s.size() > 0 ? s(0) : 0.0;
  const double s1 = s.size() > 1 ? s(1) : 0.0;
  out.e1 = s0 * col(u, 0);
  out.e2 = s1 * col(u, 1);
  out.f1 = col(v, 0).conjugate();
  out.f2 = col(v, 1).conjugate();
  return out;
}

Matrix coefficient_matrix(const Vector& psi, Eigen::Index dl, Eigen::Index dr) {
  Matrix m(dl, dr);
  for (Eigen::Index b = 0; b < dl; ++b) m.row(b) = psi.segment(b * dr, dr).transpose();
  return m;
}

// Orthonormal pair spanning {a1, a2}, completed deterministically when the
// span has dimension below two.
std::pair<Vector, Vector> orthonormal_pair(const Vector& a1, const Vector& a2) {
  const Eigen::Index d = a1.size();
  constexpr double eps = 1e-12;
  Vector o1 = a1.norm() > eps ? Vector(a1.normalized()) : a2.norm() > eps ? Vector(a2.normalized()) : basis_vector(static_cast<int>(d), 0);
  Vector o2 = a2 - o1.dot(a2) * o1;
  if (o2.norm() <= eps * std::max(1.0, a2.norm())) {
    Eigen::Index k = 0;
    o1.cwiseAbs().minCoeff(&k);
    o2 = basis_vector(static_cast<int>(d), static_cast<int>(k));
    o2 -= o1.dot(o2) * o1;
  }
  return {o1, o2.normalized()};
}

// Minimizes over the left pair with the right pair fixed (orthonormal f).
EigenPair update_left(const Matrix& y, Eigen::Index dl, Eigen::Index dr, const Vector& f1, const Vector& f2) {
  Matrix l = Matrix::Zero(dl * dr, 2 * dl);
  for (Eigen::Index b = 0; b < dl; ++b) {
    l.block(b * dr, b, dr, 1) = f1;
    l.block(b * dr, dl + b, dr, 1) = f2;
  }
  const Matrix m = l.adjoint() * y * l;
  return min_eigenpair(0.5 * (m + m.adjoint()));
}

EigenPair update_right(const Matrix& y, Eigen::Index dl, Eigen::Index dr, const Vector& e1, const Vector& e2) {
  Matrix l = Matrix::Zero(dl * dr, 2 * dr);
  for (Eigen::Index b = 0; b < dl; ++b) {
    l.block(b * dr, 0, dr, dr).diagonal().setConstant(e1(b));
    l.block(b * dr, dr, dr, dr).diagonal().setConstant(e2(b));
  }
  const Matrix m = l.adjoint() * y * l;
  return min_eigenpair(0.5 * (m + m.adjoint()));
}

// <h| Y |h> on the assisting block (slowest index).
Matrix contract_assisting(const Matrix& y, const Vector& h, Eigen::Index rest) {
  Matrix out = Matrix::Zero(rest, rest);
  for (Eigen::Index a = 0; a < h.size(); ++a) {
    if (h(a) == 0.0) continue;
    for (Eigen::Index b = 0; b < h.size(); ++b) {
      if (h(b) == 0.0) continue;
      out.noalias() += std::conj(h(a)) * h(b) * y.block(a * rest, b * rest, rest, rest);
    }
  }
  return 0.5 * (out + out.adjoint());
}

// Operator on the assisting block for a fixed normalized Psi.
Matrix assisting_operator(const Matrix& y, const Vector& psi, Eigen::Index da) {
  const Eigen::Index rest = psi.size();
  Matrix out(da, da);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < da; ++b) out(a, b) = psi.dot(y.block(a * rest, b * rest, rest, rest) * psi);
  return 0.5 * (out + out.adjoint());
}

struct Candidate {
  SchmidtRank2Vector psi;
  Vector h;
  double value = std::numeric_limits<double>::infinity();
};

class Rank2Search {
 public:
  Rank2Search(Matrix y, Eigen::Index da, Eigen::Index dl, Eigen::Index dr)
      : y_(std::move(y)), da_(da), dl_(dl), dr_(dr) {}

  double value(const Candidate& c) const {
    const Vector v = full(c);
    return v.dot(y_ * v).real() / v.squaredNorm();
  }

  Candidate run(Candidate c, int max_iterations, double conv_tol) const {
    double current = value(c);
    for (int it = 0; it < max_iterations; ++it) {
      const double before = current;
      const Matrix yh = da_ > 1 ? contract_assisting(y_, c.h, dl_ * dr_) : y_;

      auto [f1, f2] = orthonormal_pair(c.psi.f1, c.psi.f2);
      const EigenPair pe = update_left(yh, dl_, dr_, f1, f2);
      c.psi = {pe.vector.head(dl_), pe.vector.tail(dl_), f1, f2};
      current = pe.value;

      auto [e1, e2] = orthonormal_pair(c.psi.e1, c.psi.e2);
      const EigenPair pf = update_right(yh, dl_, dr_, e1, e2);
      c.psi = {e1, e2, pf.vector.head(dr_), pf.vector.tail(dr_)};
      current = pf.value;

      if (da_ > 1) {
        const Vector psi = c.psi.to_vector().normalized();
        const EigenPair ph = min_eigenpair(assisting_operator(y_, psi, da_));
        c.h = ph.vector;
        current = ph.value;
      }
      if (before - current < conv_tol) break;
    }
    c.value = value(c);
    return c;
  }

  Candidate random_start(Rng& rng) const {
    Candidate c;
    c.h = da_ > 1 ? random_unit_vector(rng, static_cast<int>(da_)) : Vector::Ones(1);
    c.psi.e1 = random_unit_vector(rng, static_cast<int>(dl_));
    c.psi.e2 = random_unit_vector(rng, static_cast<int>(dl_));
    c.psi.f1 = random_unit_vector(rng, static_cast<int>(dr_));
    c.psi.f2 = random_unit_vector(rng, static_cast<int>(dr_));
    return c;
  }

  // Assisting party fixed to each basis vector, Psi from the most negative
  // eigenvector of the projected operator.
  std::vector<Candidate> structured_starts() const {
    std::vector<Candidate> out;
    for (Eigen::Index k = 0; k < da_; ++k) {
      Candidate c;
      c.h = basis_vector(static_cast<int>(da_), static_cast<int>(k));
      const Matrix yh = da_ > 1 ? contract_assisting(y_, c.h, dl_ * dr_) : y_;
      const EigenPair p = min_eigenpair(yh);
      c.psi = split_rank2(coefficient_matrix(p.vector, dl_, dr_));
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  Vector full(const Candidate& c) const {
    const Vector psi = c.psi.to_vector();
    Vector v(da_ * psi.size());
    for (Eigen::Index a = 0; a < da_; ++a) v.segment(a * psi.size(), psi.size()) = c.h(a) * psi;
    return v;
  }

  Matrix y_;
  Eigen::Index da_, dl_, dr_;
};

void check_parties(const LabeledOperator& rho, std::size_t expected) {
  if (rho.system().parties().size() != expected || rho.system().parties().back() != static_cast<Party>(expected - 1))
    throw Error(ErrorCode::WrongPartyCount, "expected a state on parties " + std::string(expected == 2 ? "A, B" : "A, B, C") +
                                                ", got " + std::to_string(rho.system().parties().size()) + " parties");
}

DistillVerdict run_search(const LabeledOperator& rho, int copies, const SearchConfig& cfg, Cut cut) {
  const auto lay = layout_of(cut);
  const LabeledOperator y = distill_operator(rho, copies, cut);
  const auto& sys = y.system();
  const Eigen::Index da = lay.assisting ? sys.party_dim(*lay.assisting) : 1;
  const Eigen::Index dl = sys.party_dim(lay.left);
  const Eigen::Index dr = sys.party_dim(lay.right);
  const Rank2Search search(y.matrix(), da, dl, dr);

  std::vector<Candidate> seeds;
  if (cfg.structured_seeds) seeds = search.structured_starts();
  const int n_seeds = static_cast<int>(seeds.size());
  const int total = n_seeds + std::max(cfg.restarts, 0);
  const auto results = run_restarts<Candidate>(cfg, total, [&](int i) {
    if (i < n_seeds) return search.run(seeds[static_cast<std::size_t>(i)], cfg.max_iterations, cfg.convergence_tol);
    Rng rng = restart_rng(cfg, static_cast<std::uint64_t>(i - n_seeds));
    return search.run(search.random_start(rng), cfg.max_iterations, cfg.convergence_tol);
  });
  if (results.empty()) throw Error(ErrorCode::BadParameter, "no restarts requested");
  const Candidate& best = results[argmin_by_value(results)];

  DistillVerdict v;
  v.copies = copies;
  v.cut = cut;
  v.psi = best.psi;
  if (lay.assisting) v.alice_vector = best.h;
  v.restarts_used = total;
  v.best_value = evaluate_distill_certificate(rho, copies, cut, v.psi, v.alice_vector);
  if (v.best_value < -cfg.tol_neg) {
    v.status = DistillStatus::Distillable;
    v.note = "Schmidt-rank-2 vector with negative expectation on the partial transpose";
  } else {
    v.status = DistillStatus::Inconclusive;
    v.note = "no negative Schmidt-rank-2 expectation found; distillability with these copies not decided";
  }
  return v;
}

}  // namespace

SchmidtRank2Vector SchmidtRank2Vector::canonical() const {
  const SchmidtRank2Vector c = split_rank2(coefficient_matrix(to_vector(), e1.size(), f1.size()));
  return c;
}

LabeledOperator distill_operator(const LabeledOperator& rho, int copies, Cut cut) {
  const auto lay = layout_of(cut);
  const LabeledOperator x = n_copies(rho, copies, CopyGrouping::PartyMajor);
  const LabeledOperator xt = partial_transpose(x, lay.transposed);
  std::vector<FactorLabel> order;
  if (lay.assisting)
    for (const auto& l : x.system().labels_of(*lay.assisting)) order.push_back(l);
  for (const auto& l : x.system().labels_of(lay.left)) order.push_back(l);
  for (const auto& l : x.system().labels_of(lay.right)) order.push_back(l);
  return permute_factors(xt, order);
}

DistillVerdict distill_search_bipartite(const LabeledOperator& rho, int copies, const SearchConfig& cfg) {
  check_parties(rho, 2);
  if (copies < 1) throw Error(ErrorCode::BadParameter, "copies must be >= 1");
  return run_search(rho, copies, cfg, Cut::Bipartite);
}

DistillVerdict distill_search_bc(const LabeledOperator& rho, int copies, const SearchConfig& cfg, Cut cut) {
  check_parties(rho, 3);
  if (cut == Cut::Bipartite) throw Error(ErrorCode::BadParameter, "tripartite search needs cut BC, AB or AC");
  if (copies < 1) throw Error(ErrorCode::BadParameter, "copies must be >= 1");
  return run_search(rho, copies, cfg, cut);
}

double evaluate_distill_certificate(const LabeledOperator& rho, int copies, Cut cut, const SchmidtRank2Vector& psi,
                                    const std::optional<Vector>& h) {
  const auto lay = layout_of(cut);
  const LabeledOperator x = partial_transpose(n_copies(rho, copies, CopyGrouping::PartyMajor), lay.transposed);
  const auto& sys = x.system();
  const int dl = sys.party_dim(lay.left), dr = sys.party_dim(lay.right);
  const int da = lay.assisting ? sys.party_dim(*lay.assisting) : 1;
  if (psi.e1.size() != dl || psi.e2.size() != dl || psi.f1.size() != dr || psi.f2.size() != dr)
    throw Error(ErrorCode::DimensionMismatch, "Schmidt vectors do not match the party dimensions");
  if (lay.assisting && (!h || h->size() != da))
    throw Error(ErrorCode::DimensionMismatch, "assisting vector missing or of wrong dimension");

  // x is party-major, so a basis index is sum_p digit_p * stride_p over the
  // parties present in order A, B, C.
  const auto parties = sys.parties();
  std::vector<int> stride(3, 0);
  int s = 1;
  for (auto it = parties.rbegin(); it != parties.rend(); ++it) {
    stride[static_cast<int>(*it)] = s;
    s *= sys.party_dim(*it);
  }
  Vector v = Vector::Zero(sys.total_dim());
  const int sa = lay.assisting ? stride[static_cast<int>(*lay.assisting)] : 0;
  const int sl = stride[static_cast<int>(lay.left)], sr = stride[static_cast<int>(lay.right)];
  for (int a = 0; a < da; ++a) {
    const cplx ha = lay.assisting ? (*h)(a) : cplx(1.0);
    for (int l = 0; l < dl; ++l)
      for (int r = 0; r < dr; ++r)
        v(a * sa + l * sl + r * sr) = ha * (psi.e1(l) * psi.f1(r) + psi.e2(l) * psi.f2(r));
  }
  const double norm2 = v.squaredNorm();
  if (norm2 == 0.0) throw Error(ErrorCode::BadParameter, "certificate vector is zero");
  return expectation(x, v) / norm2;
}

std::vector<Vector> witness_point_from_distill(const DistillVerdict& v) {
  const auto lay = layout_of(v.cut);
  const auto cl = layout_of(construction_of(v.cut));
  auto stack = [](const Vector& a, const Vector& b) {
    Vector out(a.size() + b.size());
    out << a, b;
    return out;
  };
  // The ancilla factor has index 1, so it is the slowest index of its party.
  std::vector<std::pair<Party, Vector>> parts;
  parts.emplace_back(lay.left, stack(v.psi.e1, v.psi.e2));
  parts.emplace_back(lay.right, stack(v.psi.f1, v.psi.f2));
  if (lay.assisting) {
    if (!v.alice_vector) throw Error(ErrorCode::BadParameter, "verdict has no assisting vector");
    parts.emplace_back(*lay.assisting, *v.alice_vector);
  }
  if (!((cl.ancilla[0] == lay.left && cl.ancilla[1] == lay.right) || (cl.ancilla[0] == lay.right && cl.ancilla[1] == lay.left)))
    throw Error(ErrorCode::BadParameter, "cut and construction disagree");
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vector> out;
  for (auto& [p, vec] : parts) out.push_back(vec.normalized());
  return out;
}

bool two_qubit_distillable(const LabeledOperator& rho, double tol) {
  const auto& sys = rho.system();
  if (sys.size() != 2 || sys.factors()[0].dim != 2 || sys.factors()[1].dim != 2 ||
      sys.factors()[0].label.party == sys.factors()[1].label.party)
    throw Error(ErrorCode::WrongDimensions, "expected two qubits held by different parties");
  return min_eigenvalue(partial_transpose(rho, {sys.factors()[1].label})) < -tol;
}

Verdict verify_activation(const LabeledOperator& rho, int copies, const ChoiOperator& e, Cut cut, double tol) {
  if (copies < 1) throw Error(ErrorCode::BadParameter, "copies must be >= 1");
  const Construction c = construction_of(cut);
  const LabeledOperator x = n_copies(rho, copies, CopyGrouping::PartyMajor);
  if (!(e.input == x.system()))
    throw Error(ErrorCode::DimensionMismatch, "map input does not match rho^{(x)" + std::to_string(copies) + "}");

  const double m = min_eigenvalue(e.op);
  if (m < -tol * std::max(1.0, e.op.max_abs()))
    throw Error(ErrorCode::NotPSD, "operator is not positive semidefinite (min eigenvalue " + std::to_string(m) + ")");
  auto cuts = party_cut_report(e.op, tol);
  for (const auto& r : cuts)
    if (!r.ppt)
      throw Error(ErrorCode::NotPPT, std::string("operator is not PPT across party ") + party_char(r.party) +
                                         " (min eigenvalue " + std::to_string(r.min_eigenvalue) + ")");

  PairingIdentity pi;
  try {
    pi = witness_pairing_identity(x, e, c);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::ShapeMismatch) throw Error(ErrorCode::DimensionMismatch, err.what());
    throw;
  }

  Verdict v;
  v.best_value = pi.rhs;
  v.restarts_used = 0;
  v.certificate = DetectionCertificate{e.op, pi.rhs, std::move(cuts)};
  const bool detected = pi.lhs < -tol && pi.rhs < -tol;
  v.status = detected ? Status::Proven : Status::Inconclusive;
  v.note = "pairing via map " + std::to_string(pi.lhs) + ", via witness " + std::to_string(pi.rhs) +
           (detected ? "; PPT operator detects the witness: activable" : "; no detection");
  return v;
}

Verdict verify_activation(const LabeledOperator& rho, int copies, const LabeledOperator& e, Cut cut, double tol) {
  const auto cl = layout_of(construction_of(cut));
  const PartySystem input = n_copies(rho, copies, CopyGrouping::PartyMajor).system();
  std::vector<Factor> out_factors = {{{cl.ancilla[0], 1}, 2}, {{cl.ancilla[1], 1}, 2}};
  std::sort(out_factors.begin(), out_factors.end(), [](const Factor& a, const Factor& b) { return a.label < b.label; });
  const PartySystem output(out_factors);
  const double din = input.total_dim();
  std::optional<ChoiOperator> choi;
  try {
    choi = choi_from_operator(e, input, output, 1.0 / (din * din));
  } catch (const Error& err) {
    throw Error(ErrorCode::DimensionMismatch, err.what());
  }
  return verify_activation(rho, copies, *choi, cut, tol);
}

}  // namespace witness_forge
