// witness-forge: command line front end.
//
// Exit codes: 0 analysis completed (whatever the verdict), 2 invalid input,
// 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "witness_forge/choi.hpp"
#include "witness_forge/distill.hpp"
#include "witness_forge/io.hpp"
#include "witness_forge/report.hpp"
#include "witness_forge/states.hpp"
#include "witness_forge/witness.hpp"

namespace wf = witness_forge;
using wf::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Globals {
  std::uint64_t seed = 42;
  int restarts = 200;
  double tol = 1e-9;
  bool json_output = false;
  std::string out;
};

wf::SearchConfig make_config(const Globals& g) {
  wf::SearchConfig cfg;
  cfg.seed = g.seed;
  cfg.restarts = g.restarts;
  cfg.tol_neg = g.tol;
  cfg.psd_tol = g.tol;
  cfg.threads = 0;
  if (const char* env = std::getenv("WITNESS_FORGE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) cfg.threads = static_cast<unsigned>(n);
    } catch (const std::exception&) {
      throw wf::Error(wf::ErrorCode::BadParameter, std::string("WITNESS_FORGE_THREADS is not an integer: ") + env);
    }
  }
  return cfg;
}

// Indented key/value listing; operator matrices are shown by shape only.
void print_human(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() && value.contains("matrix") && value.contains("factors")) {
        const auto& m = value["matrix"];
        os << pad << key << ": operator " << m.size() << "x" << m.size() << "\n";
      } else if (value.is_structured() && !value.empty()) {
        bool scalars = value.is_array();
        for (const auto& e : value) scalars = scalars && !e.is_structured();
        if (scalars && value.size() <= 8) {
          os << pad << key << ": " << value.dump() << "\n";
        } else {
          os << pad << key << ":\n";
          print_human(os, value, indent + 2);
        }
      } else {
        os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_structured()) {
        os << pad << "-\n";
        print_human(os, e, indent + 2);
      } else {
        os << pad << "- " << e.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

// JSON result: written to --out when given, printed as JSON with --json,
// otherwise as an indented listing.
void emit(const Globals& g, const json& j) {
  if (!g.out.empty()) wf::io::write_json(g.out, j);
  if (g.json_output)
    std::cout << j.dump(2) << "\n";
  else if (g.out.empty())
    print_human(std::cout, j);
  else
    std::cout << "wrote " << g.out << "\n";
}

void emit_text(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw wf::Error(wf::ErrorCode::Io, "cannot write " + g.out);
  f << text;
  if (!f) throw wf::Error(wf::ErrorCode::Io, "failed writing " + g.out);
  std::cout << "wrote " << g.out << "\n";
}

wf::LabeledOperator gen_state(const std::string& family, double alpha, int dim) {
  if (family == "rho-alpha") return wf::rho_alpha(alpha);
  if (family == "p") return wf::projector_p();
  if (family == "w") return wf::w_state();
  if (family == "psi-plus") return wf::psi_plus();
  if (family == "ghz") return wf::ghz(dim);
  if (family == "max-ent") return wf::max_entangled_projector(dim);
  throw wf::Error(wf::ErrorCode::BadParameter, "unknown family '" + family + "'");
}

json witness_file(const wf::WitnessOperator& w) {
  json j = wf::io::operator_to_json(w.op);
  j["construction"] = wf::to_string(w.construction);
  j["copies"] = w.copies;
  j["min_eigenvalue"] = w.min_eigenvalue;
  j["psd"] = w.psd;
  return j;
}

json choi_file(const wf::ChoiOperator& e) {
  json j = wf::io::operator_to_json(e.op);
  j["input"] = wf::io::factors_to_json(e.input);
  j["output"] = wf::io::factors_to_json(e.output);
  j["normalization"] = e.normalization;
  return j;
}

wf::ChoiOperator read_choi(const std::string& path) {
  const json j = wf::io::read_json(path);
  try {
    return wf::choi_from_operator(wf::io::operator_from_json(j), wf::io::factors_from_json(j.at("input")),
                                  wf::io::factors_from_json(j.at("output")), j.at("normalization").get<double>());
  } catch (const json::exception& e) {
    throw wf::Error(wf::ErrorCode::Parse, path + ": " + e.what());
  }
}

// {"input": factors, "output": factors, "kraus": [matrix, ...]} for a general
// map, or "local": [[matrix per party, ...], ...] for a product of local terms.
wf::KrausMap read_kraus(const std::string& path) {
  const json j = wf::io::read_json(path);
  try {
    const auto in = wf::io::factors_from_json(j.at("input"));
    const auto out = wf::io::factors_from_json(j.at("output"));
    if (j.contains("local")) {
      std::vector<std::vector<wf::Matrix>> terms;
      for (const auto& t : j.at("local")) {
        std::vector<wf::Matrix> parts;
        for (const auto& m : t) parts.push_back(wf::io::matrix_from_json(m));
        terms.push_back(std::move(parts));
      }
      return wf::KrausMap::separable(in, out, terms);
    }
    std::vector<wf::Matrix> terms;
    for (const auto& m : j.at("kraus")) terms.push_back(wf::io::matrix_from_json(m));
    return wf::KrausMap::general(in, out, std::move(terms));
  } catch (const json::exception& e) {
    throw wf::Error(wf::ErrorCode::Parse, path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement witnesses, distillability and activation checks for small multipartite states"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for all randomized searches");
  app.add_option("--restarts", g.restarts, "Random restarts per search")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", g.tol, "Negativity and PSD tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json_output, "Print JSON instead of a listing");
  app.add_option("--out", g.out, "Write the result to this file");

  std::function<void()> action;

  // gen-state
  auto* gen = app.add_subcommand("gen-state", "Write a library state in the operator file format");
  std::string family;
  double alpha = 0.9;
  int dim = 2;
  gen->add_option("--family", family, "rho-alpha, p, w, psi-plus, ghz or max-ent")
      ->required()
      ->check(CLI::IsMember({"rho-alpha", "p", "w", "psi-plus", "ghz", "max-ent"}));
  gen->add_option("--alpha", alpha, "Mixing weight for rho-alpha");
  gen->add_option("--dim", dim, "Local dimension for ghz and max-ent");
  gen->callback([&] {
    action = [&] {
      const auto op = gen_state(family, alpha, dim);
      if (!g.out.empty()) {
        wf::io::write_operator(g.out, op);
        if (!g.json_output) std::cout << "wrote " << g.out << "\n";
      }
      if (g.json_output || g.out.empty()) std::cout << wf::io::operator_to_json(op).dump(2) << "\n";
    };
  });

  // witness
  auto* witness = app.add_subcommand("witness", "Witness construction and certificates");
  witness->require_subcommand(1);
  std::string state_file, witness_path, r_file, q_file, target_file, construction = "a", r_party, q_party;
  int copies = 1;
  double y = wf::kDefaultY;
  bool allow_outside = false;

  auto* wbuild = witness->add_subcommand("build", "Build the witness of a state");
  wbuild->add_option("--state", state_file)->required()->check(CLI::ExistingFile);
  wbuild->add_option("--copies", copies)->check(CLI::PositiveNumber);
  wbuild->add_option("--construction", construction, "bipartite, a, b or c")
      ->check(CLI::IsMember({"bipartite", "a", "b", "c"}));
  wbuild->callback([&] {
    action = [&] {
      const auto w = wf::build_witness(wf::io::read_operator(state_file), wf::construction_from_string(construction), copies);
      emit(g, witness_file(w));
    };
  });

  auto* wcheck = witness->add_subcommand("check-ew", "Search for a product vector with negative expectation");
  wcheck->add_option("--witness", witness_path)->required()->check(CLI::ExistingFile);
  wcheck->callback([&] {
    action = [&] {
      const json j = wf::io::read_json(witness_path);
      const auto op = wf::io::operator_from_json(j);
      const auto cfg = make_config(g);
      if (j.contains("construction") && j.contains("copies")) {
        const auto w = wf::witness_from_operator(op, wf::construction_from_string(j["construction"].get<std::string>()),
                                                 j["copies"].get<int>());
        emit(g, wf::to_json(wf::classify_witness(w, cfg)));
      } else {
        emit(g, wf::to_json(wf::min_product_expectation(op, cfg)));
      }
    };
  });

  auto* wverify = witness->add_subcommand("verify-decomp", "Verify target = R^{T_r} + Q^{T_q}");
  wverify->add_option("--R", r_file)->required()->check(CLI::ExistingFile);
  wverify->add_option("--Q", q_file)->required()->check(CLI::ExistingFile);
  wverify->add_option("--target", target_file)->required()->check(CLI::ExistingFile);
  wverify->add_option("--r-party", r_party = "C")->check(CLI::IsMember({"A", "B", "C"}));
  wverify->add_option("--q-party", q_party = "B")->check(CLI::IsMember({"A", "B", "C"}));
  wverify->callback([&] {
    action = [&] {
      const auto cert = wf::make_decomposition_certificate(
          wf::io::read_operator(r_file), wf::io::read_operator(q_file), wf::io::read_operator(target_file),
          wf::party_from_char(r_party[0]), wf::party_from_char(q_party[0]));
      const auto cfg = make_config(g);
      json out = wf::to_json(wf::verify_decomposition(cert, cfg.psd_tol, cfg.residual_tol));
      out["certificate"].erase("R");
      out["certificate"].erase("Q");
      out["certificate"].erase("target");
      emit(g, out);
    };
  });

  auto* wpaper = witness->add_subcommand("paper-cert", "Explicit decomposition certificate for rho_alpha");
  wpaper->add_option("--alpha", alpha)->required();
  wpaper->add_option("--copies", copies)->check(CLI::IsMember({1, 2}));
  wpaper->add_option("--y", y, "Two-copy weight");
  wpaper->add_flag("--allow-outside", allow_outside, "Build the certificate outside its proven range");
  wpaper->callback([&] {
    action = [&] {
      const auto cert = wf::paper_certificate(alpha, copies, y, allow_outside ? wf::RangePolicy::Allow : wf::RangePolicy::Enforce);
      const auto cfg = make_config(g);
      json out = wf::to_json(cert);
      const auto v = wf::verify_decomposition(cert, cfg.psd_tol, cfg.residual_tol);
      out["verification"] = {{"status", wf::to_string(v.status)}, {"note", v.note}};
      emit(g, out);
    };
  });

  // distill
  auto* distill = app.add_subcommand("distill", "Distillability search and activation checks");
  distill->require_subcommand(1);
  std::string cut = "bc", ppt_operator;
  auto* dsearch = distill->add_subcommand("search", "Schmidt-rank-2 search on the partial transpose");
  dsearch->add_option("--state", state_file)->required()->check(CLI::ExistingFile);
  dsearch->add_option("--copies", copies)->check(CLI::PositiveNumber);
  dsearch->add_option("--cut", cut, "bipartite, ab, bc or ac")->check(CLI::IsMember({"bipartite", "ab", "bc", "ac"}));
  dsearch->callback([&] {
    action = [&] {
      const auto rho = wf::io::read_operator(state_file);
      const auto cfg = make_config(g);
      const wf::Cut c = wf::cut_from_string(cut);
      emit(g, wf::to_json(c == wf::Cut::Bipartite ? wf::distill_search_bipartite(rho, copies, cfg)
                                                  : wf::distill_search_bc(rho, copies, cfg, c)));
    };
  });
  auto* dact = distill->add_subcommand("verify-activation", "Check a PPT operator against the witness");
  dact->add_option("--state", state_file)->required()->check(CLI::ExistingFile);
  dact->add_option("--copies", copies)->check(CLI::PositiveNumber);
  dact->add_option("--ppt-operator", ppt_operator)->required()->check(CLI::ExistingFile);
  dact->add_option("--cut", cut)->check(CLI::IsMember({"bipartite", "ab", "bc", "ac"}));
  dact->callback([&] {
    action = [&] {
      const auto rho = wf::io::read_operator(state_file);
      const auto e = wf::io::read_operator(ppt_operator);
      emit(g, wf::to_json(wf::verify_activation(rho, copies, e, wf::cut_from_string(cut), g.tol)));
    };
  });

  // choi
  auto* choi = app.add_subcommand("choi", "Maps and their operators");
  choi->require_subcommand(1);
  std::string map_file, choi_path;
  auto* cfrom = choi->add_subcommand("from-kraus", "Operator of a Kraus map");
  cfrom->add_option("--map", map_file)->required()->check(CLI::ExistingFile);
  cfrom->callback([&] { action = [&] { emit(g, choi_file(wf::map_to_choi(read_kraus(map_file)))); }; });
  auto* capply = choi->add_subcommand("apply", "Apply a map through its operator");
  capply->add_option("--choi", choi_path)->required()->check(CLI::ExistingFile);
  capply->add_option("--state", state_file)->required()->check(CLI::ExistingFile);
  capply->callback([&] {
    action = [&] {
      emit(g, wf::io::operator_to_json(wf::apply_via_choi(read_choi(choi_path), wf::io::read_operator(state_file))));
    };
  });
  auto* ccheck = choi->add_subcommand("check", "PPT status on every cut");
  ccheck->add_option("--choi", choi_path)->required()->check(CLI::ExistingFile);
  ccheck->callback([&] { action = [&] { emit(g, wf::to_json(wf::check_p_properties(read_choi(choi_path), g.tol))); }; });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "CSV sweep over alpha or y");
  std::string spec_file, parameter = "alpha", analyses;
  double from = 0.6, to = 1.2, step = 0.05;
  sweep->add_option("--spec", spec_file, "JSON sweep spec (overrides the flags)")->check(CLI::ExistingFile);
  sweep->add_option("--parameter", parameter)->check(CLI::IsMember({"alpha", "y"}));
  sweep->add_option("--from", from);
  sweep->add_option("--to", to);
  sweep->add_option("--step", step);
  sweep->add_option("--copies", copies);
  sweep->add_option("--analyses", analyses, "Comma separated subset of ppt, decomp, distill");
  sweep->add_option("--alpha", alpha, "Fixed alpha for y sweeps");
  sweep->add_option("--y", y, "Fixed y for alpha sweeps");
  sweep->callback([&] {
    action = [&] {
      wf::SweepSpec s;
      if (!spec_file.empty()) {
        s = wf::sweep_spec_from_json(wf::io::read_json(spec_file));
      } else {
        s.parameter = parameter == "y" ? wf::SweepParameter::Y : wf::SweepParameter::Alpha;
        s.from = from;
        s.to = to;
        s.step = step;
        s.copies = copies;
        s.alpha = alpha;
        s.y = y;
        std::stringstream ss(analyses);
        for (std::string a; std::getline(ss, a, ',');)
          if (!a.empty()) s.analyses.insert(a);
      }
      emit_text(g, wf::run_sweep(s, make_config(g)));
    };
  });

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Distillability and activability verdicts for a state");
  std::string cert_file;
  bool no_search = false;
  analyze->add_option("--state", state_file)->required()->check(CLI::ExistingFile);
  analyze->add_option("--copies", copies)->check(CLI::PositiveNumber);
  analyze->add_option("--certificate", cert_file, "Decomposition certificate (witness paper-cert output)")
      ->check(CLI::ExistingFile);
  analyze->add_option("--ppt-operator", ppt_operator, "Candidate PPT operator for activation")->check(CLI::ExistingFile);
  analyze->add_flag("--no-decomp-search", no_search, "Only use a supplied decomposition certificate");
  analyze->callback([&] {
    action = [&] {
      wf::AnalyzeOptions opt;
      if (!cert_file.empty()) opt.decomposition = wf::decomposition_from_json(wf::io::read_json(cert_file));
      if (!ppt_operator.empty()) opt.detector = wf::io::read_operator(ppt_operator);
      opt.search_decomposition = !no_search;
      emit(g, wf::analyze(wf::io::read_operator(state_file), copies, make_config(g), opt));
    };
  });

  // reproduce-paper
  auto* repro = app.add_subcommand("reproduce-paper", "Thresholds, certificates and verdicts for rho_alpha");
  repro->callback([&] {
    action = [&] {
      const auto report = wf::reproduce_paper(make_config(g));
      const json j = wf::to_json(report);
      if (!g.out.empty()) wf::io::write_json(g.out, j);
      if (g.json_output)
        std::cout << j.dump(2) << "\n";
      else
        std::cout << wf::to_table(report);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (action) action();
    return 0;
  } catch (const wf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
