// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

#include "oracle.hpp"
#include "witness_forge/choi.hpp"
#include "witness_forge/distill.hpp"
#include "witness_forge/report.hpp"
#include "witness_forge/states.hpp"
#include "witness_forge/witness.hpp"

using namespace witness_forge;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %2d %-28s %7.2fs (budget %gs)  %s%s\n", pass ? "PASS" : "FAIL", id, name, secs, budget_s,
              o.detail.c_str(), in_time ? "" : "  [over budget]");
  std::fflush(stdout);
}

SearchConfig config(int restarts) {
  SearchConfig cfg;
  cfg.restarts = restarts;
  return cfg;
}

PartySystem bipartite(int da, int db) { return PartySystem({{{Party::A, 1}, da}, {{Party::B, 1}, db}}); }

// Random low-rank state mixed with white noise at a uniform weight; both PPT
// and NPPT draws are common.
Matrix random_mixed(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Matrix r = oracle::random_density(rng, d, 1 + static_cast<int>(rng() % 3));
  const double p = u(rng);
  return p * r / r.trace().real() + (1.0 - p) * Matrix::Identity(d, d) / d;
}

// All-cuts-PPT state: separable mixture, or a random state moved toward the
// identity until every partial transpose is PSD.
Matrix random_ppt(std::mt19937_64& rng, const std::vector<int>& dims, int k) {
  if (k % 2 == 0) return oracle::random_separable(rng, dims, 1 + k % 5);
  int d = 1;
  for (int x : dims) d *= x;
  Matrix m = oracle::random_density(rng, d, 1 + static_cast<int>(rng() % d));
  for (;;) {
    bool ppt = true;
    for (int p = 0; p < static_cast<int>(dims.size()) && ppt; ++p)
      ppt = oracle::min_eig(oracle::partial_transpose(m, dims, {p})) >= 1e-6;
    if (ppt) return m;
    m = 0.8 * m + 0.2 * Matrix::Identity(d, d) / d;
  }
}

std::string run_cli(const std::string& args, int& code) {
  const char* bin = std::getenv("WITNESS_FORGE_CLI");
  if (!bin) throw std::runtime_error("WITNESS_FORGE_CLI not set");
  FILE* p = popen((std::string(bin) + " " + args).c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  code = pclose(p);
  return out;
}

}  // namespace

int main() {
  criterion(1, "nppt-threshold", 1.0, [] {
    const double v = nppt_threshold().value;
    const double err = std::abs(v - 1.0 / std::sqrt(2.0));
    return Outcome{err <= 1e-6, fmt("alpha=%.10f", v) + fmt(" |err|=%.1e <= 1e-6", err)};
  });

  criterion(2, "projected-threshold", 1.0, [] {
    const double v = projected_threshold().value;
    const double err = std::abs(v - 1.0);
    return Outcome{err <= 1e-6, fmt("alpha=%.10f", v) + fmt(" |err|=%.1e <= 1e-6", err)};
  });

  criterion(3, "one-copy-certificate", 1.0, [] {
    bool ok = true;
    double worst_res = 0.0, worst_eig = 1.0;
    for (double a : {0.72, 0.8, 0.9, 1.0}) {
      const auto c = paper_certificate(a, 1);
      ok = ok && verify_decomposition(c, 1e-9, 1e-12).status == Status::Proven && c.residual <= 1e-12;
      worst_res = std::max(worst_res, c.residual);
      worst_eig = std::min({worst_eig, c.min_eig_R, c.min_eig_Q});
    }
    const auto out = paper_certificate(1.05, 1, kDefaultY, RangePolicy::Allow);
    const bool fails = verify_decomposition(out, 1e-9, 1e-12).status != Status::Proven && out.min_eig_Q < -1e-9;
    return Outcome{ok && fails, fmt("min eig over range=%.3g", worst_eig) + fmt(" max residual=%.1e", worst_res) +
                                    fmt("; alpha=1.05 min eig Q=%.4f", out.min_eig_Q)};
  });

  criterion(4, "two-copy-boundary", 10.0, [] {
    const double v = two_copy_alpha0(0.4953).value;
    return Outcome{std::abs(v - 0.8507) <= 2e-3, fmt("alpha0=%.8f", v) + " (0.8507 +- 2e-3)"};
  });

  criterion(5, "distillability-detection", 30.0, [] {
    const auto v = distill_search_bc(rho_alpha(1.2), 1, config(200));
    const double re = evaluate_distill_certificate(rho_alpha(1.2), 1, Cut::BC, v.psi, v.alice_vector);
    const bool ok = v.status == DistillStatus::Distillable && v.best_value <= -0.15 && re <= -0.15;
    return Outcome{ok, fmt("value=%.12f", v.best_value) + fmt(" re-evaluated=%.12f <= -0.15", re)};
  });

  criterion(6, "ppt-soundness", 60.0, [] {
    std::mt19937_64 rng(6006);
    const SearchConfig cfg = config(20);
    double floor = INFINITY;
    int positives = 0, searches = 0;
    for (int k = 0; k < 200; ++k) {
      if (k < 100) {
        const LabeledOperator rho(bipartite(2, 2), random_ppt(rng, {2, 2}, k));
        const auto d = distill_search_bipartite(rho, 1, cfg);
        const auto w = min_product_expectation(build_witness(rho, Construction::BipartiteWX), cfg);
        floor = std::min({floor, d.best_value, w.best_value});
        positives += (d.status == DistillStatus::Distillable) + (w.status == Status::Refuted);
        searches += 2;
      } else {
        const LabeledOperator rho(three_qubits(), random_ppt(rng, {2, 2, 2}, k));
        for (Cut c : {Cut::BC, Cut::AB, Cut::AC}) {
          const auto d = distill_search_bc(rho, 1, cfg, c);
          const auto w = min_product_expectation(build_witness(rho, construction_of(c)), cfg);
          floor = std::min({floor, d.best_value, w.best_value});
          positives += (d.status == DistillStatus::Distillable) + (w.status == Status::Refuted);
          searches += 2;
        }
      }
    }
    return Outcome{positives == 0 && floor >= -1e-9,
                   std::to_string(searches) + " searches, " + std::to_string(positives) + " positives" +
                       fmt(", floor=%.3e >= -1e-9", floor)};
  });

  criterion(7, "two-qubit-equivalence", 30.0, [] {
    std::mt19937_64 rng(7007);
    const SearchConfig cfg = config(20);
    int disagree = 0, yes = 0;
    for (int k = 0; k < 200; ++k) {
      const LabeledOperator rho(bipartite(2, 2), random_mixed(rng, 4));
      const bool exact = two_qubit_distillable(rho);
      const bool found = distill_search_bipartite(rho, 1, cfg).status == DistillStatus::Distillable;
      disagree += exact != found;
      yes += exact;
    }
    return Outcome{disagree == 0, std::to_string(disagree) + " disagreements over 200 (" + std::to_string(yes) +
                                      " NPPT)"};
  });

  criterion(8, "pairing-identity", 10.0, [] {
    std::mt19937_64 rng(8008);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const bool tri = k % 2 == 1;
      const PartySystem in = tri ? three_qubits() : bipartite(2, 2 + k % 3);
      const Construction c = tri ? (k % 3 == 0 ? Construction::TripartiteA
                                               : (k % 3 == 1 ? Construction::TripartiteB : Construction::TripartiteC))
                                 : Construction::BipartiteWX;
      const auto lay = layout_of(c);
      const PartySystem out({{{std::min(lay.ancilla[0], lay.ancilla[1]), 1}, 2},
                             {{std::max(lay.ancilla[0], lay.ancilla[1]), 1}, 2}});
      std::vector<Matrix> kraus;
      for (int t = 0; t < 1 + k % 4; ++t) kraus.push_back(oracle::random_matrix(rng, 4, in.total_dim()));
      const auto e = map_to_choi(KrausMap::general(in, out, kraus));
      const LabeledOperator rho(in, oracle::random_density(rng, in.total_dim(), 1 + k % in.total_dim()));
      const auto pi = witness_pairing_identity(rho, e, c);
      worst = std::max(worst, std::abs(pi.lhs - pi.rhs) / std::max(1.0, std::abs(pi.lhs)));
    }
    return Outcome{worst <= 1e-10, fmt("max scaled |lhs-rhs|=%.2e <= 1e-10", worst)};
  });

  criterion(9, "choi-roundtrip", 10.0, [] {
    std::mt19937_64 rng(9009);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const PartySystem in = k % 2 ? bipartite(2, 2) : PartySystem({{{Party::A, 1}, 2 + k % 3}});
      const PartySystem out = k % 3 ? PartySystem({{{Party::B, 1}, 2 + k % 2}}) : bipartite(2, 2);
      std::vector<Matrix> kraus;
      for (int t = 0; t < 1 + k % 3; ++t) kraus.push_back(oracle::random_matrix(rng, out.total_dim(), in.total_dim()));
      const auto e = map_to_choi(KrausMap::general(in, out, kraus));
      const Matrix rho = oracle::random_density(rng, in.total_dim(), 1 + k % in.total_dim());
      const Matrix direct = oracle::apply_kraus(kraus, rho);
      const Matrix via = apply_via_choi(e, LabeledOperator(in, rho)).matrix();
      worst = std::max(worst, oracle::max_abs(via - direct) / std::max(1.0, oracle::max_abs(direct)));
    }
    return Outcome{worst <= 1e-10, fmt("max scaled deviation=%.2e <= 1e-10", worst)};
  });

  criterion(10, "bipartite-witness-coherence", 30.0, [] {
    std::mt19937_64 rng(10010);
    const SearchConfig cfg = config(20);
    int mismatch = 0, ppt = 0, not_witness = 0;
    for (int k = 0; k < 200; ++k) {
      const int da = 2, db = 2 + k % 2;
      const LabeledOperator x(bipartite(da, db), random_mixed(rng, da * db));
      const bool x_ppt = oracle::min_eig(oracle::partial_transpose(x.matrix(), {da, db}, {0})) >= -kPsdTol;
      const auto w = build_witness(x, Construction::BipartiteWX);
      mismatch += w.psd != x_ppt;
      if (x_ppt) {
        ++ppt;
        not_witness += classify_witness(w, cfg).kind == WitnessClass::NotAWitness;
      }
    }
    return Outcome{mismatch == 0 && not_witness == ppt && ppt > 0,
                   std::to_string(mismatch) + " PSD/PPT mismatches over 200; " + std::to_string(not_witness) + "/" +
                       std::to_string(ppt) + " PPT inputs classified NotAWitness"};
  });

  criterion(11, "spanning-set-rank", 5.0, [] {
    const auto s = compute_spanning_set(partial_transpose(projector_p(), Party::A), config(200));
    return Outcome{s.span_rank == 4, "span_rank=" + std::to_string(s.span_rank) + " of 4 (" +
                                         std::to_string(s.vectors.size()) + " vectors)"};
  });

  criterion(12, "reproduce-determinism", 120.0, [] {
    int c1 = 0, c2 = 0;
    const std::string a = run_cli("--json --seed 42 reproduce-paper", c1);
    const std::string b = run_cli("--json --seed 42 reproduce-paper", c2);
    const bool ok = c1 == 0 && c2 == 0 && !a.empty() && a == b;
    return Outcome{ok, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
