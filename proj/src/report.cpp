#include "witness_forge/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "witness_forge/io.hpp"
#include "witness_forge/states.hpp"

namespace witness_forge {

BisectionResult bisect(const std::function<double(double)>& f, double lo, double hi, const BisectionOptions& opt) {
  if (!(lo < hi)) throw Error(ErrorCode::BadParameter, "bisection needs lo < hi");
  const bool neg_lo = f(lo) < 0.0;
  const bool neg_hi = f(hi) < 0.0;
  if (neg_lo == neg_hi) throw Error(ErrorCode::BadParameter, "no sign change in the bisection bracket");
  BisectionResult r{0.0, lo, hi, 0};
  while (r.iterations < opt.max_iterations && r.hi - r.lo >= opt.interval_tol) {
    const double mid = 0.5 * (r.lo + r.hi);
    if ((f(mid) < 0.0) == neg_lo)
      r.lo = mid;
    else
      r.hi = mid;
    ++r.iterations;
  }
  r.value = 0.5 * (r.lo + r.hi);
  return r;
}

BisectionResult nppt_threshold(const BisectionOptions& opt) {
  return bisect([](double a) { return min_eigenvalue(partial_transpose(rho_alpha(a), Party::C)); }, 0.5, 1.0, opt);
}

BisectionResult projected_threshold(const BisectionOptions& opt) {
  return bisect(
      [](double a) {
        return min_eigenvalue(partial_transpose(project_onto_alice(rho_alpha(a), basis_vector(2, 0)), Party::B));
      },
      0.5, 1.5, opt);
}

BisectionResult two_copy_alpha0(double y, const BisectionOptions& opt) {
  return bisect([y](double a) { return paper_certificate(a, 2, y, RangePolicy::Allow).min_eig_Q; }, 0.75, 1.0, opt);
}

namespace {

GridPoint grid_point(double alpha, int copies, double y) {
  const auto cert = paper_certificate(alpha, copies, y, RangePolicy::Allow);
  const Verdict v = verify_decomposition(cert);
  return {alpha, cert.min_eig_R, cert.min_eig_Q, cert.residual, v.status == Status::Proven};
}

WitnessReportEntry witness_entry(std::string name, double alpha, int copies, const SearchConfig& cfg,
                                 std::optional<DecompositionCertificate> cert) {
  const WitnessOperator w = build_witness(rho_alpha(alpha), Construction::TripartiteA, copies);
  ClassifyEvidence ev;
  ev.decomposition = std::move(cert);
  const Classification c = classify_witness(w, cfg, ev);
  return {std::move(name), alpha, copies, to_string(w.construction), to_string(c.kind), to_string(c.verdict.status),
          c.verdict.best_value};
}

DistillReportEntry distill_entry(double alpha, int copies, const SearchConfig& cfg) {
  const DistillVerdict v = distill_search_bc(rho_alpha(alpha), copies, cfg, Cut::BC);
  return {alpha, copies, to_string(v.cut), to_string(v.status), v.best_value};
}

json bisection_json(const BisectionResult& b) {
  return {{"value", b.value}, {"lo", b.lo}, {"hi", b.hi}, {"iterations", b.iterations}};
}

json grid_json(const GridPoint& g) {
  return {{"alpha", g.alpha},
          {"min_eig_R", g.min_eig_R},
          {"min_eig_Q", g.min_eig_Q},
          {"residual", g.residual},
          {"verified", g.verified}};
}

std::string fmt(double x, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace

PaperReport reproduce_paper(const SearchConfig& cfg, const BisectionOptions& opt, int grid_points) {
  PaperReport r;
  r.bisection = opt;
  r.seed = cfg.seed;
  r.restarts = cfg.restarts;
  r.nppt_threshold = nppt_threshold(opt);
  r.projected_threshold = projected_threshold(opt);

  const double a0 = 1.0 / std::sqrt(2.0);
  r.one_copy_range_verified = true;
  for (int k = 1; k <= grid_points; ++k) {
    const double alpha = k == grid_points ? 1.0 : a0 + k * (1.0 - a0) / grid_points;
    r.one_copy_grid.push_back(grid_point(alpha, 1, kDefaultY));
    r.one_copy_range_verified = r.one_copy_range_verified && r.one_copy_grid.back().verified;
  }
  r.one_copy_outside = grid_point(1.05, 1, kDefaultY);

  r.y_used = kDefaultY;
  r.two_copy_alpha0 = two_copy_alpha0(kDefaultY, opt);

  r.witness_verdicts.push_back(witness_entry("W^a one copy, PPT", 0.5, 1, cfg, std::nullopt));
  r.witness_verdicts.push_back(witness_entry("W^a one copy, certificate", 0.9, 1, cfg, paper_certificate(0.9, 1)));
  r.witness_verdicts.push_back(
      witness_entry("W^a two copies, certificate", 0.8, 2, cfg, paper_certificate(0.8, 2, kDefaultY)));
  r.witness_verdicts.push_back(witness_entry("W^a one copy, distillable", 1.2, 1, cfg, std::nullopt));

  r.distill_verdicts.push_back(distill_entry(0.9, 1, cfg));
  r.distill_verdicts.push_back(distill_entry(1.2, 1, cfg));
  r.distill_verdicts.push_back(distill_entry(0.8, 2, cfg));
  return r;
}

json to_json(const PaperReport& r) {
  json grid = json::array();
  for (const auto& g : r.one_copy_grid) grid.push_back(grid_json(g));
  json witness = json::array();
  for (const auto& w : r.witness_verdicts)
    witness.push_back({{"name", w.name},
                       {"alpha", w.alpha},
                       {"copies", w.copies},
                       {"construction", w.construction},
                       {"kind", w.kind},
                       {"status", w.status},
                       {"best_value", w.best_value}});
  json distill = json::array();
  for (const auto& d : r.distill_verdicts)
    distill.push_back({{"alpha", d.alpha},
                       {"copies", d.copies},
                       {"cut", d.cut},
                       {"status", d.status},
                       {"best_value", d.best_value}});
  return {{"bisection", {{"max_iterations", r.bisection.max_iterations}, {"interval_tol", r.bisection.interval_tol}}},
          {"nppt_threshold", bisection_json(r.nppt_threshold)},
          {"projected_threshold", bisection_json(r.projected_threshold)},
          {"one_copy_grid", grid},
          {"one_copy_range_verified", r.one_copy_range_verified},
          {"one_copy_outside", grid_json(r.one_copy_outside)},
          {"y_used", r.y_used},
          {"two_copy_alpha0", bisection_json(r.two_copy_alpha0)},
          {"witness_verdicts", witness},
          {"distill_verdicts", distill},
          {"seed", r.seed},
          {"restarts", r.restarts}};
}

std::string to_table(const PaperReport& r) {
  std::ostringstream os;
  os << "rho_alpha = 1 + alpha |W><W|\n";
  os << "  NPPT threshold (T_C)             " << fmt(r.nppt_threshold.value) << "  [" << fmt(r.nppt_threshold.lo)
     << ", " << fmt(r.nppt_threshold.hi) << "]\n";
  os << "  projected threshold (<0|.|0>, T_B) " << fmt(r.projected_threshold.value) << "  ["
     << fmt(r.projected_threshold.lo) << ", " << fmt(r.projected_threshold.hi) << "]\n";
  os << "  two-copy alpha0 at y = " << fmt(r.y_used) << "     " << fmt(r.two_copy_alpha0.value) << "  ["
     << fmt(r.two_copy_alpha0.lo) << ", " << fmt(r.two_copy_alpha0.hi) << "]\n";
  os << "\none-copy certificate\n  alpha        min eig R     min eig Q     residual      verified\n";
  auto row = [&](const GridPoint& g) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "  %-12.6f %-13.4e %-13.4e %-13.4e %s\n", g.alpha, g.min_eig_R, g.min_eig_Q,
                  g.residual, g.verified ? "yes" : "no");
    os << buf;
  };
  for (const auto& g : r.one_copy_grid) row(g);
  row(r.one_copy_outside);
  os << "\nwitness verdicts\n";
  for (const auto& w : r.witness_verdicts)
    os << "  " << w.name << " (alpha " << fmt(w.alpha) << ", N " << w.copies << "): " << w.kind << ", "
       << w.status << ", best " << fmt(w.best_value, "%.6g") << "\n";
  os << "\ndistill verdicts\n";
  for (const auto& d : r.distill_verdicts)
    os << "  alpha " << fmt(d.alpha) << ", N " << d.copies << ", cut " << d.cut << ": " << d.status << ", best "
       << fmt(d.best_value, "%.6g") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// sweeps

namespace {

const std::vector<std::string> kAnalyses = {"ppt", "decomp", "distill"};

}  // namespace

SweepSpec sweep_spec_from_json(const json& j) {
  try {
    SweepSpec s;
    const std::string p = j.at("parameter").get<std::string>();
    if (p == "alpha")
      s.parameter = SweepParameter::Alpha;
    else if (p == "y")
      s.parameter = SweepParameter::Y;
    else
      throw Error(ErrorCode::BadSpec, "parameter must be alpha or y");
    s.from = j.at("from").get<double>();
    s.to = j.at("to").get<double>();
    s.step = j.at("step").get<double>();
    s.copies = j.value("copies", 1);
    for (const auto& a : j.at("analyses")) s.analyses.insert(a.get<std::string>());
    s.alpha = j.value("alpha", s.alpha);
    s.y = j.value("y", s.y);
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadSpec, std::string("malformed sweep spec: ") + e.what());
  }
}

void validate(const SweepSpec& s) {
  if (!(s.from < s.to)) throw Error(ErrorCode::BadSpec, "sweep needs from < to");
  if (!(s.step > 0.0)) throw Error(ErrorCode::BadSpec, "sweep needs step > 0");
  if (s.copies != 1 && s.copies != 2) throw Error(ErrorCode::BadSpec, "copies must be 1 or 2");
  if (s.analyses.empty()) throw Error(ErrorCode::BadSpec, "no analyses requested");
  for (const auto& a : s.analyses)
    if (std::find(kAnalyses.begin(), kAnalyses.end(), a) == kAnalyses.end())
      throw Error(ErrorCode::BadSpec, "unknown analysis '" + a + "' (ppt, decomp, distill)");
  if (s.parameter == SweepParameter::Y && s.copies != 2)
    throw Error(ErrorCode::BadSpec, "the y parameter only enters the two-copy certificate");
  if (std::floor((s.to - s.from) / s.step + 1e-9) + 1 > 10000) throw Error(ErrorCode::BadSpec, "more than 10000 points");
}

std::vector<double> sweep_grid(const SweepSpec& s) {
  validate(s);
  const int n = static_cast<int>(std::floor((s.to - s.from) / s.step + 1e-9)) + 1;
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(s.from + k * s.step);
  return out;
}

std::string run_sweep(const SweepSpec& s, const SearchConfig& cfg) {
  const auto grid = sweep_grid(s);
  const bool ppt = s.analyses.count("ppt"), decomp = s.analyses.count("decomp"), distill = s.analyses.count("distill");
  std::ostringstream os;
  os << (s.parameter == SweepParameter::Alpha ? "alpha" : "y");
  if (ppt) os << ",min_eig_TA,min_eig_TB,min_eig_TC";
  if (decomp) os << ",cert_min_eig_R,cert_min_eig_Q,cert_residual,cert_verified";
  if (distill) os << ",distill_best_BC,distill_status";
  os << "\n";
  for (double p : grid) {
    const double alpha = s.parameter == SweepParameter::Alpha ? p : s.alpha;
    const double y = s.parameter == SweepParameter::Y ? p : s.y;
    os << fmt(p, "%.12g");
    if (ppt) {
      const LabeledOperator x = n_copies(rho_alpha(alpha), s.copies, CopyGrouping::PartyMajor);
      for (Party q : {Party::A, Party::B, Party::C}) os << "," << fmt(min_eigenvalue(partial_transpose(x, q)), "%.12g");
    }
    if (decomp) {
      const GridPoint g = grid_point(alpha, s.copies, y);
      os << "," << fmt(g.min_eig_R, "%.12g") << "," << fmt(g.min_eig_Q, "%.12g") << "," << fmt(g.residual, "%.6g")
         << "," << (g.verified ? 1 : 0);
    }
    if (distill) {
      const DistillVerdict v = distill_search_bc(rho_alpha(alpha), s.copies, cfg, Cut::BC);
      os << "," << fmt(v.best_value, "%.12g") << "," << to_string(v.status);
    }
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// analysis

namespace {

// Party permutation sending from.first -> to.first and from.second -> to.second.
std::array<Party, 3> party_map(std::pair<Party, Party> from, std::pair<Party, Party> to) {
  std::array<Party, 3> m{};
  const auto third = [](Party a, Party b) { return static_cast<Party>(3 - static_cast<int>(a) - static_cast<int>(b)); };
  m[static_cast<int>(from.first)] = to.first;
  m[static_cast<int>(from.second)] = to.second;
  m[static_cast<int>(third(from.first, from.second))] = third(to.first, to.second);
  return m;
}

LabeledOperator relabel_parties(const LabeledOperator& op, const std::array<Party, 3>& m) {
  return to_party_major(relabel(op, [&](FactorLabel l) { return FactorLabel{m[static_cast<int>(l.party)], l.index}; }));
}

// The certificate for parties `from` carried to `to`, provided the state is
// invariant under the party permutation doing so.
std::optional<DecompositionCertificate> transfer_certificate(const DecompositionCertificate& cert,
                                                             const LabeledOperator& x, std::pair<Party, Party> to) {
  const auto m = party_map({cert.r_party, cert.q_party}, to);
  const LabeledOperator moved = relabel_parties(x, m);
  if (!(moved.system() == x.system())) return std::nullopt;
  if ((moved.matrix() - x.matrix()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, x.max_abs())) return std::nullopt;
  return make_decomposition_certificate(relabel_parties(cert.R, m), relabel_parties(cert.Q, m),
                                        relabel_parties(cert.target, m), to.first, to.second);
}

}  // namespace

json analyze(const LabeledOperator& rho, int copies, const SearchConfig& cfg, const AnalyzeOptions& opt) {
  if (copies < 1) throw Error(ErrorCode::BadParameter, "copies must be >= 1");
  const auto parties = rho.system().parties();
  const bool tripartite = parties.size() == 3;
  if (parties.size() != 2 && parties.size() != 3)
    throw Error(ErrorCode::WrongPartyCount, "analysis needs a bipartite or tripartite state");
  if (!is_psd(rho)) throw Error(ErrorCode::NotPSD, "state is not positive semidefinite");

  const LabeledOperator x = n_copies(rho, copies, CopyGrouping::PartyMajor);
  const auto cuts_ppt = party_cut_report(rho, cfg.psd_tol);
  const bool all_ppt = std::all_of(cuts_ppt.begin(), cuts_ppt.end(), [](const CutReport& c) { return c.ppt; });
  const std::string n = std::to_string(copies);

  json out;
  out["copies"] = copies;
  out["parties"] = static_cast<int>(parties.size());
  out["ppt"] = to_json(cuts_ppt);
  out["all_cuts_ppt"] = all_ppt;
  out["config"] = to_json(cfg);

  const std::vector<Cut> cuts = tripartite ? std::vector<Cut>{Cut::BC, Cut::AB, Cut::AC} : std::vector<Cut>{Cut::Bipartite};
  json cut_reports = json::array();
  int n_distillable = 0, n_neither = 0, n_activable = 0, n_inconsistent = 0;
  json distillable_cuts = json::array();
  for (Cut cut : cuts) {
    const Construction c = construction_of(cut);
    json cr;
    cr["cut"] = to_string(cut);
    cr["construction"] = to_string(c);

    const DistillVerdict dv = tripartite ? distill_search_bc(rho, copies, cfg, cut) : distill_search_bipartite(rho, copies, cfg);
    cr["distill"] = to_json(dv);

    const WitnessOperator w = build_witness(rho, c, copies);
    ClassifyEvidence ev;
    const auto [r_party, q_party] = decomposition_parties(c);
    json decomp_json = nullptr;
    if (opt.decomposition) {
      std::optional<DecompositionCertificate> cert;
      std::string source = "supplied";
      if (opt.decomposition->r_party == r_party && opt.decomposition->q_party == q_party) {
        cert = opt.decomposition;
      } else if (tripartite && opt.decomposition->target.system() == x.system()) {
        cert = transfer_certificate(*opt.decomposition, x, {r_party, q_party});
        source = "supplied, carried over by a party permutation leaving the state invariant";
      }
      if (cert) {
        const Verdict v = verify_decomposition(*cert, cfg.psd_tol, cfg.residual_tol);
        decomp_json = {{"status", to_string(v.status)}, {"best_value", v.best_value}, {"note", v.note}, {"source", source}};
        ev.decomposition = std::move(cert);
      }
    }
    if (!ev.decomposition && opt.search_decomposition && !w.psd) {
      Verdict v = search_decomposition(x, cfg, r_party, q_party);
      decomp_json = {{"status", to_string(v.status)}, {"best_value", v.best_value}, {"note", v.note}, {"source", "search"}};
      if (v.status == Status::Proven) ev.decomposition = std::get<DecompositionCertificate>(v.certificate);
    }
    cr["decomposition"] = decomp_json;

    const Classification cls = classify_witness(w, cfg, ev);
    cr["witness"] = to_json(cls);

    json act = nullptr;
    bool activable = false;
    if (opt.detector) {
      try {
        const Verdict v = verify_activation(rho, copies, *opt.detector, cut, cfg.tol_neg);
        act = to_json(v);
        activable = v.status == Status::Proven;
      } catch (const Error& e) {
        act = {{"status", "Inconclusive"}, {"error", to_string(e.code())}, {"note", e.what()}};
      }
    }
    cr["activation"] = act;

    const bool distillable = dv.status == DistillStatus::Distillable || cls.kind == WitnessClass::NoEW;
    const bool neither = cls.kind == WitnessClass::NotAWitness || cls.kind == WitnessClass::DEW_Certified;
    activable = activable || cls.kind == WitnessClass::NDEW_Certified;
    std::string conclusion;
    if (static_cast<int>(distillable) + static_cast<int>(neither) + static_cast<int>(activable) > 1) {
      conclusion = "inconsistent certificates";
      ++n_inconsistent;
    } else if (distillable) {
      conclusion = n + "-distillable (certificate attached)";
      ++n_distillable;
      distillable_cuts.push_back(to_string(cut));
    } else if (neither) {
      conclusion = cls.kind == WitnessClass::NotAWitness
                       ? "neither " + n + "-distillable nor " + n + "-activable (witness positive semidefinite)"
                       : "proven neither " + n + "-distillable nor " + n + "-activable (DEW certificate)";
      ++n_neither;
    } else if (activable) {
      conclusion = n + "-activable (PPT detector verified)";
      ++n_activable;
    } else {
      conclusion = "undetermined";
    }
    cr["conclusion"] = conclusion;
    cut_reports.push_back(std::move(cr));
  }
  out["cuts"] = cut_reports;
  out["distillable_cuts"] = distillable_cuts;

  const int total = static_cast<int>(cuts.size());
  std::string summary;
  if (n_inconsistent > 0) {
    summary = "inconsistent certificates; see per-cut reports";
  } else if (n_distillable > 0) {
    summary = n + "-distillable (certificate attached)";
  } else if (all_ppt && n_neither == total) {
    summary = "PPT on all cuts: not distillable, not activable";
  } else if (n_neither == total) {
    summary = "proven neither " + n + "-distillable nor " + n + "-activable (DEW certificate)";
  } else if (n_activable > 0) {
    summary = n + "-activable (PPT detector verified)";
  } else {
    summary = "undetermined: no certificate decides " + n + "-copy distillability or activability";
  }
  out["summary"] = summary;
  return out;
}

// ---------------------------------------------------------------------------
// JSON forms

json to_json(const std::vector<CutReport>& cuts) {
  json out = json::array();
  for (const auto& c : cuts)
    out.push_back({{"party", std::string(1, party_char(c.party))}, {"min_eigenvalue", c.min_eigenvalue}, {"ppt", c.ppt}});
  return out;
}

json to_json(const DecompositionCertificate& c) {
  return {{"type", "decomposition"},
          {"r_party", std::string(1, party_char(c.r_party))},
          {"q_party", std::string(1, party_char(c.q_party))},
          {"residual", c.residual},
          {"min_eig_R", c.min_eig_R},
          {"min_eig_Q", c.min_eig_Q},
          {"R", io::operator_to_json(c.R)},
          {"Q", io::operator_to_json(c.Q)},
          {"target", io::operator_to_json(c.target)}};
}

DecompositionCertificate decomposition_from_json(const json& j) {
  try {
    const auto party = [&](const char* key) {
      const std::string s = j.at(key).get<std::string>();
      if (s.size() != 1) throw Error(ErrorCode::Parse, std::string(key) + " must be a single party letter");
      return party_from_char(s[0]);
    };
    return make_decomposition_certificate(io::operator_from_json(j.at("R")), io::operator_from_json(j.at("Q")),
                                          io::operator_from_json(j.at("target")), party("r_party"), party("q_party"));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed certificate: ") + e.what());
  }
}

namespace {

json certificate_json(const Certificate& c) {
  struct Visitor {
    json operator()(const std::monostate&) const { return nullptr; }
    json operator()(const ProductCertificate& p) const {
      json parties = json::array(), parts = json::array();
      for (Party q : p.parties) parties.push_back(std::string(1, party_char(q)));
      for (const auto& v : p.parts) parts.push_back(io::vector_to_json(v));
      return {{"type", "product"}, {"parties", parties}, {"parts", parts}, {"value", p.value}};
    }
    json operator()(const SpectralCertificate& s) const {
      return {{"type", "spectral"}, {"min_eigenvalue", s.min_eigenvalue}};
    }
    json operator()(const DecompositionCertificate& d) const { return to_json(d); }
    json operator()(const DetectionCertificate& d) const {
      return {{"type", "detection"},
              {"pairing", d.pairing},
              {"cuts", to_json(d.cuts)},
              {"detector", io::operator_to_json(d.detector)}};
    }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace

json to_json(const Verdict& v) {
  return {{"status", to_string(v.status)},
          {"best_value", v.best_value},
          {"certificate", certificate_json(v.certificate)},
          {"restarts_used", v.restarts_used},
          {"note", v.note}};
}

json to_json(const DistillVerdict& v) {
  json cert = nullptr;
  if (v.status == DistillStatus::Distillable) {
    cert = {{"type", "schmidt_rank_2"},
            {"e1", io::vector_to_json(v.psi.e1)},
            {"e2", io::vector_to_json(v.psi.e2)},
            {"f1", io::vector_to_json(v.psi.f1)},
            {"f2", io::vector_to_json(v.psi.f2)},
            {"alice_vector", v.alice_vector ? io::vector_to_json(*v.alice_vector) : json(nullptr)}};
  }
  return {{"status", to_string(v.status)},
          {"best_value", v.best_value},
          {"certificate", cert},
          {"restarts_used", v.restarts_used},
          {"copies", v.copies},
          {"cut", to_string(v.cut)},
          {"note", v.note}};
}

json to_json(const Classification& c) {
  json j = to_json(c.verdict);
  j["kind"] = to_string(c.kind);
  return j;
}

json to_json(const SpanningSet& s) {
  json values = json::array();
  for (double v : s.values) values.push_back(v);
  return {{"size", s.vectors.size()}, {"span_rank", s.span_rank}, {"dimension", s.dimension}, {"values", values}};
}

json to_json(const PProperties& p) {
  json cuts = json::array();
  for (const auto& c : p.cuts) {
    json labels = json::array();
    for (const auto& l : c.transposed) labels.push_back(to_string(l));
    cuts.push_back({{"name", c.name}, {"transposed", labels}, {"min_eigenvalue", c.min_eigenvalue}, {"ppt", c.ppt}});
  }
  return {{"cuts", cuts}, {"ppt_preserving", p.ppt_preserving}, {"separability", to_string(p.separability)}};
}

json to_json(const PairingIdentity& p) { return {{"lhs", p.lhs}, {"rhs", p.rhs}}; }

json to_json(const SearchConfig& cfg) {
  return {{"seed", cfg.seed},
          {"restarts", cfg.restarts},
          {"max_iterations", cfg.max_iterations},
          {"tol_neg", cfg.tol_neg},
          {"psd_tol", cfg.psd_tol},
          {"residual_tol", cfg.residual_tol}};
}

}  // namespace witness_forge
