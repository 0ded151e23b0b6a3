#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "witness_forge/seesaw.hpp"
#include "witness_forge/states.hpp"
#include "witness_forge/witness.hpp"

using namespace witness_forge;

namespace {

SearchConfig quick(int restarts = 40) {
  SearchConfig cfg;
  cfg.restarts = restarts;
  return cfg;
}

PartySystem two_parties(int da, int db, int index = 1) {
  return PartySystem({{{Party::A, index}, da}, {{Party::B, index}, db}});
}

// Tiles unextendible product basis on 3x3 and its bound entangled state.
std::vector<Vector> tiles() {
  auto v3 = [](double a, double b, double c) { return Vector((Vector(3) << a, b, c).finished()); };
  const double s = 1.0 / std::sqrt(2.0), t = 1.0 / std::sqrt(3.0);
  return {oracle::kron(v3(1, 0, 0), v3(s, -s, 0)), oracle::kron(v3(s, -s, 0), v3(0, 0, 1)),
          oracle::kron(v3(0, 0, 1), v3(0, s, -s)), oracle::kron(v3(0, s, -s), v3(1, 0, 0)),
          oracle::kron(v3(t, t, t), v3(t, t, t))};
}

}  // namespace

TEST_CASE("construction layouts") {
  CHECK(construction_from_string("a") == Construction::TripartiteA);
  CHECK(to_string(Construction::BipartiteWX) == "bipartite");
  CHECK_THROWS_AS(construction_from_string("d"), Error);
  CHECK(decomposition_parties(Construction::TripartiteA) == std::pair{Party::C, Party::B});
  CHECK(decomposition_parties(Construction::BipartiteWX) == std::pair{Party::A, Party::B});
}

TEST_CASE("build witness examples") {
  const auto id = LabeledOperator::identity(two_parties(2, 2));
  const auto w = build_witness(id, Construction::BipartiteWX);
  CHECK(w.psd);
  CHECK(w.op.system().total_dim() == 16);

  const auto wa = build_witness(rho_alpha(0.9), Construction::TripartiteA);
  CHECK_FALSE(wa.psd);
  CHECK(wa.op.system().labels() == std::vector<FactorLabel>{{Party::B, 1}, {Party::C, 1}, {Party::A, 2},
                                                             {Party::B, 2}, {Party::C, 2}});
  const Matrix expected =
      oracle::kron(oracle::max_entangled(2), oracle::partial_transpose(oracle::rho_alpha(0.9), {2, 2, 2}, {2}));
  CHECK(oracle::max_abs(wa.op.matrix() - expected) <= 1e-15);
  CHECK(wa.min_eigenvalue == doctest::Approx(2.0 * (1.0 - 0.9 * std::sqrt(2.0))).epsilon(1e-12));

  CHECK(build_witness(rho_alpha(0.5), Construction::TripartiteA).psd);

  const auto wb = build_witness(rho_alpha(0.9), Construction::TripartiteB);
  const Matrix expected_b =
      oracle::kron(oracle::max_entangled(2), oracle::partial_transpose(oracle::rho_alpha(0.9), {2, 2, 2}, {0}));
  CHECK(oracle::max_abs(wb.op.matrix() - expected_b) <= 1e-15);

  try {
    build_witness(rho_alpha(0.9), Construction::BipartiteWX);
    FAIL("three parties accepted by the bipartite construction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongPartyCount);
  }
  Matrix m = Matrix::Identity(4, 4);
  m(0, 0) = -1;
  try {
    build_witness(LabeledOperator(two_parties(2, 2), m), Construction::BipartiteWX);
    FAIL("non-PSD source accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
  }
}

TEST_CASE("two-copy witness uses the party-major source") {
  const auto w = build_witness(rho_alpha(0.8), Construction::TripartiteA, 2);
  CHECK(w.op.system().total_dim() == 256);
  const auto x = n_copies(rho_alpha(0.8), 2, CopyGrouping::PartyMajor);
  CHECK(oracle::max_abs(w.source.matrix() - x.matrix()) == 0.0);
  const auto back = witness_from_operator(w.op, Construction::TripartiteA, 2);
  CHECK(max_abs_diff(back.source, w.source) <= 1e-14);
}

TEST_CASE("witness positivity follows the transposed source") {
  std::mt19937_64 rng(21);
  int psd = 0, not_psd = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int rank = 1 + trial % 8;
    Matrix x = oracle::random_density(rng, 8, rank);
    x += (trial % 3) * 0.05 * Matrix::Identity(8, 8);
    const LabeledOperator rho(three_qubits(), x);
    for (Construction c : {Construction::TripartiteA, Construction::TripartiteB, Construction::TripartiteC}) {
      const auto w = build_witness(rho, c);
      const bool pt_psd = is_psd(partial_transpose(rho, layout_of(c).transposed));
      CHECK(w.psd == pt_psd);
      (w.psd ? psd : not_psd)++;
    }
  }
  CHECK(psd > 0);
  CHECK(not_psd > 0);
}

TEST_CASE("product search on P^{T_A}") {
  const auto swap = partial_transpose(projector_p(), Party::A);
  const auto v = min_product_expectation(swap, quick());
  CHECK(v.status == Status::Inconclusive);
  CHECK(v.best_value >= -1e-12);
  CHECK(std::abs(v.best_value) <= 1e-10);
}

TEST_CASE("product search refutes the witness of a distillable state") {
  const auto w = build_witness(rho_alpha(1.2), Construction::TripartiteA);
  const auto v = min_product_expectation(w, quick());
  REQUIRE(v.status == Status::Refuted);
  const auto& cert = std::get<ProductCertificate>(v.certificate);
  CHECK(cert.value < -1e-9);
  // independent quadratic form on the assembled vector
  const Vector& full = cert.full;
  const Matrix ref = oracle::kron(oracle::max_entangled(2), oracle::partial_transpose(oracle::rho_alpha(1.2), {2, 2, 2}, {2}));
  const double direct = (full.adjoint() * ref * full)(0, 0).real() / full.squaredNorm();
  CHECK(direct == doctest::Approx(v.best_value).epsilon(1e-10));
  CHECK(std::abs(direct - v.best_value) <= 1e-10);
  // the product point from h = |0>, truncated projected eigenvector gives -0.1
  CHECK(v.best_value <= -0.099999999999999978 + 1e-9);
}

TEST_CASE("product search stays nonnegative below the distillability threshold") {
  const auto w = build_witness(rho_alpha(0.9), Construction::TripartiteA);
  const auto v = min_product_expectation(w, quick(200));
  CHECK(v.status == Status::Inconclusive);
  CHECK(v.best_value >= -1e-8);
  CHECK(v.restarts_used >= 200);
}

TEST_CASE("seesaw objective never increases") {
  std::mt19937_64 rng(22);
  const Matrix g = oracle::random_matrix(rng, 12, 12);
  const Matrix w = 0.5 * (g + g.adjoint());
  const ProductSeesaw seesaw(w, {2, 3, 2});
  Rng r(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = seesaw.run(seesaw.random_start(r), 100, 0.0, true);
    for (std::size_t k = 1; k < p.history.size(); ++k) CHECK(p.history[k] <= p.history[k - 1] + 1e-12);
    CHECK(p.value == doctest::Approx(seesaw.value(p.parts)).epsilon(1e-12));
  }
}

TEST_CASE("searches do not depend on the thread count") {
  const auto w = build_witness(rho_alpha(1.1), Construction::TripartiteA);
  SearchConfig one = quick(30), four = quick(30);
  four.threads = 4;
  const auto a = min_product_expectation(w, one);
  const auto b = min_product_expectation(w, four);
  CHECK(a.best_value == b.best_value);
  CHECK(std::get<ProductCertificate>(a.certificate).full == std::get<ProductCertificate>(b.certificate).full);
}

TEST_CASE("classification") {
  const auto w09 = build_witness(rho_alpha(0.9), Construction::TripartiteA);
  ClassifyEvidence ev;
  ev.decomposition = paper_certificate(0.9, 1);
  const auto c = classify_witness(w09, quick(), ev);
  CHECK(c.kind == WitnessClass::DEW_Certified);
  CHECK(c.verdict.status == Status::Proven);

  CHECK(classify_witness(w09, quick()).kind == WitnessClass::EW_Undetermined);
  CHECK(classify_witness(build_witness(rho_alpha(1.2), Construction::TripartiteA), quick()).kind == WitnessClass::NoEW);

  const auto pid = build_witness(LabeledOperator::identity(two_parties(2, 2)), Construction::BipartiteWX);
  const auto cp = classify_witness(pid, quick());
  CHECK(cp.kind == WitnessClass::NotAWitness);
  CHECK(std::holds_alternative<SpectralCertificate>(cp.verdict.certificate));

  // a certificate for another state is ignored
  ClassifyEvidence wrong;
  wrong.decomposition = paper_certificate(0.8, 1);
  CHECK(classify_witness(w09, quick(), wrong).kind == WitnessClass::EW_Undetermined);
}

TEST_CASE("detection of a PPT entangled state") {
  const PartySystem s({{{Party::A, 1}, 3}, {{Party::B, 1}, 3}});
  Matrix proj = Matrix::Zero(9, 9);
  for (const auto& v : tiles()) proj += v * v.adjoint();
  const LabeledOperator upb(s, 0.5 * (proj + proj.adjoint()));
  const LabeledOperator bound(s, (Matrix::Identity(9, 9) - upb.matrix()) / 4.0);
  REQUIRE(ppt_on_all_cuts(bound));

  SearchConfig cfg = quick(100);
  cfg.structured_seeds = false;
  const double eps = min_product_expectation(upb, cfg).best_value;
  REQUIRE(eps > 1e-3);
  const LabeledOperator wop = upb - LabeledOperator::identity(s) * (0.9 * eps);
  const WitnessOperator w{wop, Construction::BipartiteWX, 1, bound, min_eigenvalue(wop), 0.0, is_psd(wop)};

  ClassifyEvidence ev;
  ev.detector = bound;
  const auto c = classify_witness(w, cfg, ev);
  CHECK(c.kind == WitnessClass::NDEW_Certified);
  const auto& det = std::get<DetectionCertificate>(c.verdict.certificate);
  CHECK(det.pairing == doctest::Approx(-0.9 * eps).epsilon(1e-9));
  CHECK(det.pairing < -1e-9);

  // an NPPT operator never certifies
  ClassifyEvidence npt;
  npt.detector = LabeledOperator(s, oracle::max_entangled(3));
  CHECK(classify_witness(w, cfg, npt).kind == WitnessClass::EW_Undetermined);
}

TEST_CASE("paper certificates") {
  for (double a : {0.72, 0.8, 0.9, 1.0}) {
    const auto cert = paper_certificate(a, 1);
    CHECK(verify_decomposition(cert).status == Status::Proven);
    CHECK(cert.residual <= 1e-12);
  }
  for (double a : {0.3, 1.05, 1.5, 3.0}) {
    const auto cert = paper_certificate(a, 1, kDefaultY, RangePolicy::Allow);
    CHECK(cert.residual <= 1e-12);
  }
  const auto out = paper_certificate(1.05, 1, kDefaultY, RangePolicy::Allow);
  CHECK(verify_decomposition(out).status == Status::Inconclusive);
  CHECK(out.min_eig_Q == doctest::Approx(-0.05).epsilon(1e-10));
  try {
    paper_certificate(1.05, 1);
    FAIL("outside range accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfProvenRange);
  }

  const auto c85 = paper_certificate(0.85, 2, kDefaultY);
  CHECK(verify_decomposition(c85).status == Status::Proven);
  CHECK(c85.min_eig_Q == doctest::Approx(0.0010829526194934733).epsilon(1e-8));
  const auto c86 = paper_certificate(0.86, 2, kDefaultY, RangePolicy::Allow);
  CHECK(verify_decomposition(c86).status == Status::Inconclusive);
  CHECK(c86.min_eig_Q == doctest::Approx(-0.012816265477247603).epsilon(1e-8));
}

TEST_CASE("one-copy certificate has the closed form") {
  // rho^{T_C} = R + Q^{T_A}, R = alpha P+ (x) 0-projector, Q = rho^{T_B} - R^{T_A}
  for (double a : {0.75, 0.9, 1.0, 1.2}) {
    const auto cert = paper_certificate(a, 1, kDefaultY, RangePolicy::Allow);
    const Matrix rho = oracle::rho_alpha(a);
    Vector pp = Vector::Zero(4);
    pp(1) = pp(2) = 1;
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1;
    const Matrix r = a * oracle::kron(Matrix(pp * pp.adjoint()), z);
    const Matrix q = oracle::partial_transpose(rho, {2, 2, 2}, {1}) - oracle::partial_transpose(r, {2, 2, 2}, {0});
    const Matrix lhs = oracle::partial_transpose(rho, {2, 2, 2}, {2});
    CHECK(oracle::max_abs(lhs - r - oracle::partial_transpose(q, {2, 2, 2}, {0})) <= 1e-12);
    CHECK(cert.min_eig_Q == doctest::Approx(oracle::min_eig(q)).epsilon(1e-10));
    CHECK(cert.min_eig_R == doctest::Approx(oracle::min_eig(r)).epsilon(1e-10));
  }
}

TEST_CASE("verify decomposition edge cases") {
  const auto zero = LabeledOperator::zero(three_qubits());
  CHECK(verify_decomposition(make_decomposition_certificate(zero, zero, zero)).status == Status::Proven);
  const auto other = LabeledOperator::zero(PartySystem({{{Party::A, 1}, 2}, {{Party::B, 1}, 2}}));
  try {
    make_decomposition_certificate(zero, other, zero);
    FAIL("mismatched shapes accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("decomposition search") {
  SearchConfig cfg = quick();
  const auto v = search_decomposition(rho_alpha(0.9), cfg);
  REQUIRE(v.status == Status::Proven);
  const auto& cert = std::get<DecompositionCertificate>(v.certificate);
  CHECK(cert.r_party == Party::C);
  CHECK(cert.q_party == Party::B);
  CHECK(verify_decomposition(cert).status == Status::Proven);
  // independent reconstruction
  const Matrix recon = oracle::partial_transpose(cert.R.matrix(), {2, 2, 2}, {2}) +
                       oracle::partial_transpose(cert.Q.matrix(), {2, 2, 2}, {1});
  CHECK(oracle::max_abs(recon - oracle::rho_alpha(0.9)) <= 1e-12);
  CHECK(oracle::min_eig(cert.R.matrix()) >= -1e-9 * oracle::max_abs(cert.R.matrix()));
  CHECK(oracle::min_eig(cert.Q.matrix()) >= -1e-9 * oracle::max_abs(cert.Q.matrix()));

  // PSD target: trivial branch
  const auto t = search_decomposition(partial_transpose(rho_alpha(0.5), Party::C), cfg);
  CHECK(t.status == Status::Proven);

  // two-qubit NPPT state: no decomposition exists, none may be fabricated
  const auto p = psi_plus();
  const LabeledOperator sigma(p.system(), Matrix::Identity(4, 4) + 1.2 * p.matrix());
  cfg.decomposition_iterations = 2000;
  const auto s = search_decomposition(sigma, cfg);
  CHECK(s.status == Status::Inconclusive);
  CHECK(std::holds_alternative<std::monostate>(s.certificate));
}

TEST_CASE("spanning sets") {
  const auto swap = partial_transpose(projector_p(), Party::A);
  const auto s = compute_spanning_set(swap, quick());
  CHECK(s.span_rank == 4);
  CHECK(s.dimension == 4);
  for (std::size_t k = 0; k < s.vectors.size(); ++k) {
    CHECK(std::abs(s.values[k]) <= 1e-7);
    CHECK(std::abs(expectation(swap, s.vectors[k])) <= 1e-7);
  }

  const auto none = compute_spanning_set(LabeledOperator::identity(PartySystem({{{Party::A, 1}, 2}, {{Party::B, 1}, 2}})), quick());
  CHECK(none.vectors.empty());
  CHECK(none.span_rank == 0);

  const auto w = build_witness(rho_alpha(0.9), Construction::TripartiteA);
  const auto full = compute_spanning_set(partial_transpose(w.op, Party::B), quick(200));
  CHECK(full.span_rank == 32);
}
