#include "witness_forge/witness.hpp"

#include <cmath>

#include "witness_forge/seesaw.hpp"
#include "witness_forge/states.hpp"

namespace witness_forge {

std::string to_string(Construction c) {
  switch (c) {
    case Construction::BipartiteWX: return "bipartite";
    case Construction::TripartiteA: return "a";
    case Construction::TripartiteB: return "b";
    case Construction::TripartiteC: return "c";
  }
  return "?";
}

Construction construction_from_string(const std::string& s) {
  if (s == "bipartite") return Construction::BipartiteWX;
  if (s == "a") return Construction::TripartiteA;
  if (s == "b") return Construction::TripartiteB;
  if (s == "c") return Construction::TripartiteC;
  throw Error(ErrorCode::BadParameter, "unknown construction '" + s + "'");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Proven: return "Proven";
    case Status::Refuted: return "Refuted";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(WitnessClass c) {
  switch (c) {
    case WitnessClass::NotAWitness: return "NotAWitness";
    case WitnessClass::NoEW: return "NoEW";
    case WitnessClass::EW_Undetermined: return "EW_Undetermined";
    case WitnessClass::DEW_Certified: return "DEW_Certified";
    case WitnessClass::NDEW_Certified: return "NDEW_Certified";
  }
  return "?";
}

ConstructionLayout layout_of(Construction c) {
  switch (c) {
    case Construction::BipartiteWX: return {{Party::A, Party::B}, Party::A, std::nullopt};
    case Construction::TripartiteA: return {{Party::B, Party::C}, Party::C, Party::A};
    case Construction::TripartiteB: return {{Party::A, Party::C}, Party::A, Party::B};
    case Construction::TripartiteC: return {{Party::A, Party::B}, Party::B, Party::C};
  }
  throw Error(ErrorCode::BadParameter, "unknown construction");
}

std::pair<Party, Party> decomposition_parties(Construction c) {
  const auto lay = layout_of(c);
  const Party other = lay.ancilla[0] == lay.transposed ? lay.ancilla[1] : lay.ancilla[0];
  return {lay.transposed, other};
}

namespace {

void check_parties(const PartySystem& sys, Construction c) {
  const auto parties = sys.parties();
  const bool bipartite = c == Construction::BipartiteWX;
  const std::vector<Party> expected =
      bipartite ? std::vector<Party>{Party::A, Party::B} : std::vector<Party>{Party::A, Party::B, Party::C};
  if (parties != expected)
    throw Error(ErrorCode::WrongPartyCount, std::string(bipartite ? "bipartite" : "tripartite") +
                                                " construction needs parties " + (bipartite ? "A,B" : "A,B,C"));
}

LabeledOperator full_transpose(const LabeledOperator& op) { return {op.system(), op.matrix().transpose()}; }

Matrix psd_project(const Matrix& m, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  RealVector lambda = solver.eigenvalues().cwiseMax(floor);
  const Matrix& v = solver.eigenvectors();
  Matrix out = v * lambda.asDiagonal() * v.adjoint();
  return 0.5 * (out + out.adjoint());
}

bool psd_within(double min_eig, double scale, double tol) { return scale == 0.0 || min_eig >= -tol * scale; }

}  // namespace

// ---------------------------------------------------------------------------
// construction

WitnessOperator build_witness(const LabeledOperator& x, Construction c, int copies) {
  if (copies < 1) throw Error(ErrorCode::BadParameter, "copies must be >= 1");
  check_parties(x.system(), c);
  if (!is_psd(x)) throw Error(ErrorCode::NotPSD, "witness source must be positive semidefinite");

  const auto lay = layout_of(c);
  LabeledOperator source = relabel(n_copies(x, copies, CopyGrouping::PartyMajor),
                                   [](FactorLabel l) { return FactorLabel{l.party, l.index + 1}; });
  const LabeledOperator transposed = partial_transpose(source, lay.transposed);
  LabeledOperator op = tensor(projector_p({lay.ancilla[0], 1}, {lay.ancilla[1], 1}), transposed);

  const double min_w = min_eigenvalue(op);
  const double min_t = min_eigenvalue(transposed);
  const bool psd = psd_within(min_w, op.max_abs(), kPsdTol);
  return {std::move(op), c, copies, std::move(source), min_w, min_t, psd};
}

WitnessOperator witness_from_operator(const LabeledOperator& op, Construction c, int copies) {
  if (copies < 1) throw Error(ErrorCode::BadParameter, "copies must be >= 1");
  const auto lay = layout_of(c);
  const std::vector<FactorLabel> ancilla = {{lay.ancilla[0], 1}, {lay.ancilla[1], 1}};
  for (const auto& a : ancilla)
    if (op.system().dim_of(a) != 2) throw Error(ErrorCode::BadDimension, "ancilla factors must be qubits");

  const LabeledOperator transposed = partial_trace(op, ancilla) * 0.5;
  std::vector<FactorLabel> order = ancilla;
  for (const auto& l : transposed.system().labels()) order.push_back(l);
  const LabeledOperator ordered = permute_factors(op, order);
  const LabeledOperator rebuilt = tensor(projector_p(ancilla[0], ancilla[1]), transposed);
  if (max_abs_diff(ordered, rebuilt) > 1e-10 * std::max(1.0, op.max_abs()))
    throw Error(ErrorCode::BadParameter, "operator is not of the form P (x) X^T for construction " + to_string(c));

  LabeledOperator source = partial_transpose(transposed, lay.transposed);
  check_parties(source.system(), c);
  const double min_w = min_eigenvalue(ordered);
  const double min_t = min_eigenvalue(transposed);
  const bool psd = psd_within(min_w, ordered.max_abs(), kPsdTol);
  return {ordered, c, copies, std::move(source), min_w, min_t, psd};
}

// ---------------------------------------------------------------------------
// product search

std::vector<std::vector<Vector>> structured_witness_seeds(const WitnessOperator& w) {
  const auto lay = layout_of(w.construction);
  const LabeledOperator y = partial_transpose(w.source, lay.transposed);

  // Spread the rank-2 truncation of psi (on p1 (x) p2) over ancilla (x) state.
  auto ancilla_parts = [](const Vector& psi, int d1, int d2) {
    Matrix m(d1, d2);
    for (int a = 0; a < d1; ++a)
      for (int b = 0; b < d2; ++b) m(a, b) = psi(a * d2 + b);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vector e(2 * d1), f(2 * d2);
    for (int k = 0; k < 2; ++k) {
      const double s = std::sqrt(k < svd.singularValues().size() ? svd.singularValues()(k) : 0.0);
      e.segment(k * d1, d1) = s * svd.matrixU().col(k);
      f.segment(k * d2, d2) = s * svd.matrixV().col(k).conjugate();
    }
    if (e.norm() == 0.0 || f.norm() == 0.0) return std::pair<Vector, Vector>{Vector::Ones(2 * d1), Vector::Ones(2 * d2)};
    return std::pair<Vector, Vector>{e, f};
  };

  const int d1 = y.system().party_dim(lay.ancilla[0]);
  const int d2 = y.system().party_dim(lay.ancilla[1]);
  std::vector<std::vector<Vector>> seeds;
  if (!lay.assisting) {
    const auto spec = eigen(y);
    auto [e, f] = ancilla_parts(spec.eigenvectors.col(0), d1, d2);
    seeds.push_back({e, f});
    return seeds;
  }
  const Party s = *lay.assisting;
  const int ds = y.system().party_dim(s);
  for (int k = 0; k < ds; ++k) {
    const Vector h = basis_vector(ds, k);
    const auto spec = eigen(project_party(y, s, h));
    auto [e, f] = ancilla_parts(spec.eigenvectors.col(0), d1, d2);
    std::vector<Vector> parts(3);
    auto slot = [](Party p) { return static_cast<std::size_t>(p); };
    parts[slot(s)] = h;
    parts[slot(lay.ancilla[0])] = e;
    parts[slot(lay.ancilla[1])] = f;
    seeds.push_back(std::move(parts));
  }
  return seeds;
}

Verdict min_product_expectation(const LabeledOperator& w, const SearchConfig& cfg,
                                const std::vector<std::vector<Vector>>& seeds) {
  const auto layout = party_layout(w);
  const ProductSeesaw seesaw(layout.matrix, layout.dims);
  for (const auto& s : seeds) {
    if (s.size() != layout.dims.size()) throw Error(ErrorCode::DimensionMismatch, "seed has wrong number of parts");
    for (std::size_t k = 0; k < s.size(); ++k)
      if (s[k].size() != layout.dims[k]) throw Error(ErrorCode::DimensionMismatch, "seed part has wrong dimension");
  }
  const int n_seeds = static_cast<int>(seeds.size());
  const int total = n_seeds + std::max(cfg.restarts, 0);
  if (total == 0) throw Error(ErrorCode::BadParameter, "no restarts requested");

  auto results = run_restarts<ProductSeesaw::Point>(cfg, total, [&](int i) {
    if (i < n_seeds) return seesaw.run(seeds[static_cast<std::size_t>(i)], cfg.max_iterations, cfg.convergence_tol);
    Rng rng = restart_rng(cfg, static_cast<std::uint64_t>(i));
    return seesaw.run(seesaw.random_start(rng), cfg.max_iterations, cfg.convergence_tol);
  });
  const auto& best = results[argmin_by_value(results)];

  ProductCertificate cert;
  cert.parties = layout.parties;
  cert.parts = best.parts;
  cert.full = product_vector(w, best.parts);
  cert.value = expectation(w, cert.full) / cert.full.squaredNorm();

  Verdict v;
  v.best_value = cert.value;
  v.restarts_used = total;
  if (cert.value < -cfg.tol_neg) {
    v.status = Status::Refuted;
    v.note = "product vector with negative expectation: positivity on product states fails";
    v.certificate = std::move(cert);
  } else {
    v.status = Status::Inconclusive;
    v.note = "no negative product expectation found; nonnegative floor is evidence, not proof";
  }
  return v;
}

Verdict min_product_expectation(const WitnessOperator& w, const SearchConfig& cfg) {
  std::vector<std::vector<Vector>> seeds;
  if (cfg.structured_seeds) {
    // Seeds are built in the party-major layout of the state factors, which
    // matches the party-major layout of the witness (ancilla index 1 first).
    seeds = structured_witness_seeds(w);
  }
  return min_product_expectation(w.op, cfg, seeds);
}

// ---------------------------------------------------------------------------
// decompositions

DecompositionCertificate make_decomposition_certificate(LabeledOperator R, LabeledOperator Q, LabeledOperator target,
                                                        Party r_party, Party q_party) {
  if (!(R.system() == target.system()) || !(Q.system() == target.system()))
    throw Error(ErrorCode::DimensionMismatch, "R, Q and target must share one system");
  const double min_r = min_eigenvalue(R);
  const double min_q = min_eigenvalue(Q);
  const LabeledOperator recon = partial_transpose(R, r_party) + partial_transpose(Q, q_party);
  const double residual = max_abs_diff(target, recon);
  return {std::move(R), std::move(Q), std::move(target), r_party, q_party, residual, min_r, min_q};
}

Verdict verify_decomposition(const DecompositionCertificate& cert, double tol, double tol_res) {
  DecompositionCertificate checked =
      make_decomposition_certificate(cert.R, cert.Q, cert.target, cert.r_party, cert.q_party);
  const bool r_ok = psd_within(checked.min_eig_R, checked.R.max_abs(), tol);
  const bool q_ok = psd_within(checked.min_eig_Q, checked.Q.max_abs(), tol);
  const bool res_ok = checked.residual <= tol_res;

  Verdict v;
  v.best_value = std::min(checked.min_eig_R, checked.min_eig_Q);
  v.status = (r_ok && q_ok && res_ok) ? Status::Proven : Status::Inconclusive;
  if (v.status == Status::Proven) {
    v.note = "R and Q positive semidefinite, residual within bound";
  } else {
    v.note = std::string(r_ok ? "" : "R not PSD; ") + (q_ok ? "" : "Q not PSD; ") +
             (res_ok ? "" : "residual exceeds bound; ") + "certificate rejected";
  }
  v.certificate = std::move(checked);
  return v;
}

DecompositionCertificate paper_certificate(double alpha, int copies, double y, RangePolicy policy) {
  if (copies != 1 && copies != 2) throw Error(ErrorCode::BadParameter, "copies must be 1 or 2");
  if (!(alpha >= 0.0)) throw Error(ErrorCode::BadParameter, "alpha must be >= 0");
  const double lower = 1.0 / std::sqrt(2.0);
  const double upper = copies == 1 ? 1.0 : kTwoCopyAlphaMax;
  if (policy == RangePolicy::Enforce && !(alpha > lower && alpha <= upper))
    throw Error(ErrorCode::OutOfProvenRange, "alpha = " + std::to_string(alpha) + " outside ]1/sqrt2, " +
                                                 std::to_string(upper) + "] for " + std::to_string(copies) +
                                                 " cop" + (copies == 1 ? "y" : "ies"));

  const LabeledOperator rho = rho_alpha(alpha);
  const LabeledOperator zero_c =
      LabeledOperator::projector(PartySystem({{{Party::C, 1}, 2}}), basis_vector(2, 0));
  const LabeledOperator r1 = tensor(psi_plus({Party::A, 1}, {Party::B, 1}), zero_c);

  LabeledOperator target = rho;
  LabeledOperator r = r1 * alpha;
  if (copies == 2) {
    auto second = [](FactorLabel l) { return FactorLabel{l.party, 2}; };
    const LabeledOperator s = partial_transpose(rho_alpha(lower), Party::C);
    const LabeledOperator t1 = to_party_major(tensor(s, relabel(r1, second)));
    const LabeledOperator t2 = to_party_major(tensor(r1, relabel(s, second)));
    r = (t1 + t2) * y;
    target = n_copies(rho, 2, CopyGrouping::PartyMajor);
  }
  const LabeledOperator q = partial_transpose(target, Party::B) - partial_transpose(r, Party::A);
  return make_decomposition_certificate(std::move(r), full_transpose(q), std::move(target), Party::C, Party::B);
}

Verdict search_decomposition(const LabeledOperator& target, const SearchConfig& cfg, Party r_party, Party q_party) {
  const double scale = std::max(target.max_abs(), 1e-300);
  const PartySystem& sys = target.system();
  auto pt = [&](const Matrix& m, Party p) { return partial_transpose(LabeledOperator(sys, m), p).matrix(); };

  Verdict v;
  v.restarts_used = 1;
  auto prove = [&](const Matrix& r, const Matrix& q, const std::string& note) {
    auto cert = make_decomposition_certificate(LabeledOperator(sys, r), LabeledOperator(sys, q), target, r_party,
                                               q_party);
    Verdict checked = verify_decomposition(cert, cfg.psd_tol, cfg.residual_tol);
    if (checked.status != Status::Proven) return false;
    v.status = Status::Proven;
    v.best_value = checked.best_value;
    v.certificate = std::move(checked.certificate);
    v.note = note;
    return true;
  };

  const Matrix zero = Matrix::Zero(target.dim(), target.dim());
  const Matrix t_r = pt(target.matrix(), r_party);
  const Matrix t_q = pt(target.matrix(), q_party);
  if (prove(t_r, zero, "Q = 0 branch: target^{T_r} is PSD")) return v;
  if (prove(zero, t_q, "R = 0 branch: target^{T_q} is PSD")) return v;

  // Projecting onto slightly shrunken cones gives finite termination when the
  // feasible set has interior.
  const double margin = 10.0 * cfg.psd_tol * scale;
  Matrix r = 0.5 * t_r;
  Matrix q = 0.5 * t_q;
  double worst = 0.0;
  for (int it = 0; it < cfg.decomposition_iterations; ++it) {
    const Matrix rp = psd_project(r, margin);
    const Matrix qp = psd_project(q, margin);
    const Matrix half = 0.5 * (target.matrix() - pt(rp, r_party) - pt(qp, q_party));
    r = rp + pt(half, r_party);
    q = qp + pt(half, q_party);
    r = 0.5 * (r + r.adjoint()).eval();
    q = 0.5 * (q + q.adjoint()).eval();
    const double min_r = Eigen::SelfAdjointEigenSolver<Matrix>(r, Eigen::EigenvaluesOnly).eigenvalues()(0);
    const double min_q = Eigen::SelfAdjointEigenSolver<Matrix>(q, Eigen::EigenvaluesOnly).eigenvalues()(0);
    worst = std::min(min_r, min_q);
    v.restarts_used = it + 1;
    if (min_r >= -cfg.psd_tol * std::max(r.cwiseAbs().maxCoeff(), 1e-300) &&
        min_q >= -cfg.psd_tol * std::max(q.cwiseAbs().maxCoeff(), 1e-300)) {
      if (prove(r, q, "alternating projections converged after " + std::to_string(it + 1) + " iterations")) {
        v.restarts_used = it + 1;
        return v;
      }
    }
  }
  v.status = Status::Inconclusive;
  v.best_value = worst;
  v.note = "no decomposition found within the iteration cap; existence not decided";
  return v;
}

Verdict search_decomposition(const LabeledOperator& target, const SearchConfig& cfg) {
  const auto parties = target.system().parties();
  if (parties.size() == 3) return search_decomposition(target, cfg, Party::C, Party::B);
  if (parties.size() == 2) return search_decomposition(target, cfg, parties[0], parties[1]);
  throw Error(ErrorCode::WrongPartyCount, "decomposition search needs two or three parties");
}

// ---------------------------------------------------------------------------
// classification

namespace {

bool certificate_matches(const WitnessOperator& w, const DecompositionCertificate& cert) {
  const auto [r_party, q_party] = decomposition_parties(w.construction);
  if (cert.r_party != r_party || cert.q_party != q_party) return false;
  const auto& a = cert.target.system().factors();
  const auto& b = w.source.system().factors();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].label.party != b[i].label.party || a[i].dim != b[i].dim) return false;
  const double diff = (cert.target.matrix() - w.source.matrix()).cwiseAbs().maxCoeff();
  return diff <= 1e-12 * std::max(1.0, w.source.max_abs());
}

}  // namespace

Classification classify_witness(const WitnessOperator& w, const SearchConfig& cfg, const ClassifyEvidence& evidence) {
  Classification out;
  if (w.psd) {
    out.kind = WitnessClass::NotAWitness;
    out.verdict.status = Status::Proven;
    out.verdict.best_value = w.min_eigenvalue;
    out.verdict.certificate = SpectralCertificate{w.min_eigenvalue};
    out.verdict.note = "operator is positive semidefinite: it has no negative eigenvalue, so it is not a witness";
    return out;
  }

  // A verified decomposition makes the operator decomposable, which already
  // implies positivity on product vectors.
  if (evidence.decomposition && certificate_matches(w, *evidence.decomposition)) {
    Verdict v = verify_decomposition(*evidence.decomposition, cfg.psd_tol, cfg.residual_tol);
    if (v.status == Status::Proven) {
      out.kind = WitnessClass::DEW_Certified;
      v.note = "decomposable witness: " + v.note;
      out.verdict = std::move(v);
      return out;
    }
  }

  Verdict search = min_product_expectation(w, cfg);
  if (search.status == Status::Refuted) {
    out.kind = WitnessClass::NoEW;
    out.verdict = std::move(search);
    return out;
  }

  if (evidence.detector) {
    const LabeledOperator e = permute_factors(*evidence.detector, w.op.system().labels());
    auto cuts = party_cut_report(e, cfg.psd_tol);
    const bool ppt = is_psd(e, cfg.psd_tol) && std::all_of(cuts.begin(), cuts.end(), [](const CutReport& c) {
                       return c.ppt;
                     });
    const double pairing = trace_product(w.op, e);
    if (ppt && pairing < -cfg.tol_neg) {
      out.kind = WitnessClass::NDEW_Certified;
      out.verdict.status = Status::Proven;
      out.verdict.best_value = pairing;
      out.verdict.restarts_used = search.restarts_used;
      out.verdict.certificate = DetectionCertificate{e, pairing, std::move(cuts)};
      out.verdict.note = "detects a PPT operator, so the operator is not decomposable";
      return out;
    }
  }

  out.kind = WitnessClass::EW_Undetermined;
  out.verdict = std::move(search);
  return out;
}

// ---------------------------------------------------------------------------
// spanning sets

int span_rank(const std::vector<Vector>& vectors, double tol) {
  if (vectors.empty()) return 0;
  const Eigen::Index dim = vectors.front().size();
  Matrix v(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = vectors[i].normalized();
  // Nonzero spectrum of V V^dagger equals that of the Gram matrix V^dagger V.
  const Matrix gram = dim <= v.cols() ? Matrix(v * v.adjoint()) : Matrix(v.adjoint() * v);
  const RealVector ev = Eigen::SelfAdjointEigenSolver<Matrix>(gram, Eigen::EigenvaluesOnly).eigenvalues();
  return static_cast<int>((ev.array() > tol).count());
}

SpanningSet compute_spanning_set(const LabeledOperator& w, const SearchConfig& cfg) {
  const auto layout = party_layout(w);
  const ProductSeesaw seesaw(layout.matrix, layout.dims);
  auto results = run_restarts<ProductSeesaw::Point>(cfg, cfg.restarts, [&](int i) {
    Rng rng = restart_rng(cfg, static_cast<std::uint64_t>(i));
    return seesaw.run(seesaw.random_start(rng), cfg.max_iterations, cfg.convergence_tol);
  });
  SpanningSet out;
  out.dimension = w.dim();
  for (const auto& p : results) {
    Vector full = product_vector(w, p.parts);
    full.normalize();
    const double value = expectation(w, full);
    if (std::abs(value) <= cfg.tol_zero) {
      out.vectors.push_back(std::move(full));
      out.values.push_back(value);
    }
  }
  out.span_rank = span_rank(out.vectors, cfg.gram_rank_tol);
  return out;
}

}  // namespace witness_forge
