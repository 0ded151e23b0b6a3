// Bindings for the core library. Operators cross the boundary as a complex
// matrix plus a list of (party, index, dim) factors; verdicts and reports
// cross as JSON text and are decoded on the Python side.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "witness_forge/distill.hpp"
#include "witness_forge/io.hpp"
#include "witness_forge/report.hpp"
#include "witness_forge/states.hpp"

namespace py = pybind11;
namespace wf = witness_forge;

namespace {

using FactorTuple = std::tuple<std::string, int, int>;

wf::PartySystem system_of(const std::vector<FactorTuple>& factors) {
  std::vector<wf::Factor> out;
  for (const auto& [party, index, dim] : factors) {
    if (party.size() != 1) throw wf::Error(wf::ErrorCode::Parse, "party must be a single letter, got '" + party + "'");
    out.push_back({{wf::party_from_char(party[0]), index}, dim});
  }
  return wf::PartySystem(out);
}

std::vector<FactorTuple> factors_of(const wf::PartySystem& s) {
  std::vector<FactorTuple> out;
  for (const auto& f : s.factors()) out.emplace_back(std::string(1, wf::party_char(f.label.party)), f.label.index, f.dim);
  return out;
}

wf::LabeledOperator op_of(const wf::Matrix& m, const std::vector<FactorTuple>& factors) {
  return wf::LabeledOperator(system_of(factors), m);
}

py::tuple as_tuple(const wf::LabeledOperator& op) { return py::make_tuple(op.matrix(), factors_of(op.system())); }

wf::SearchConfig config(std::uint64_t seed, int restarts, unsigned threads) {
  wf::SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "witness_forge core bindings";

  static py::exception<wf::Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const wf::Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("rho_alpha", [](double alpha) { return as_tuple(wf::rho_alpha(alpha)); }, py::arg("alpha"));
  m.def("projector_p", []() { return as_tuple(wf::projector_p()); });

  m.def("partial_transpose",
        [](const wf::Matrix& mat, const std::vector<FactorTuple>& f, const std::string& party) {
          return wf::partial_transpose(op_of(mat, f), wf::party_from_char(party.at(0))).matrix();
        },
        py::arg("matrix"), py::arg("factors"), py::arg("party"));

  m.def("build_witness",
        [](const wf::Matrix& mat, const std::vector<FactorTuple>& f, const std::string& construction, int copies) {
          const auto w = wf::build_witness(op_of(mat, f), wf::construction_from_string(construction), copies);
          return as_tuple(w.op);
        },
        py::arg("matrix"), py::arg("factors"), py::arg("construction"), py::arg("copies") = 1);

  m.def("check_ew",
        [](const wf::Matrix& mat, const std::vector<FactorTuple>& f, const std::string& construction, int copies,
           std::uint64_t seed, int restarts, unsigned threads) {
          const auto w = wf::witness_from_operator(op_of(mat, f), wf::construction_from_string(construction), copies);
          py::gil_scoped_release release;
          return wf::to_json(wf::min_product_expectation(w, config(seed, restarts, threads))).dump();
        },
        py::arg("matrix"), py::arg("factors"), py::arg("construction"), py::arg("copies") = 1, py::arg("seed") = 42,
        py::arg("restarts") = 200, py::arg("threads") = 1);

  m.def("paper_certificate",
        [](double alpha, int copies, double y, bool allow_outside) {
          const auto c = wf::paper_certificate(alpha, copies, y,
                                               allow_outside ? wf::RangePolicy::Allow : wf::RangePolicy::Enforce);
          auto j = wf::to_json(c);
          j["verification"] = wf::to_json(wf::verify_decomposition(c));
          return j.dump();
        },
        py::arg("alpha"), py::arg("copies") = 1, py::arg("y") = wf::kDefaultY, py::arg("allow_outside") = false);

  m.def("distill_search",
        [](const wf::Matrix& mat, const std::vector<FactorTuple>& f, int copies, const std::string& cut,
           std::uint64_t seed, int restarts, unsigned threads) {
          const auto rho = op_of(mat, f);
          const wf::Cut c = wf::cut_from_string(cut);
          py::gil_scoped_release release;
          const auto cfg = config(seed, restarts, threads);
          const auto v = c == wf::Cut::Bipartite ? wf::distill_search_bipartite(rho, copies, cfg)
                                                 : wf::distill_search_bc(rho, copies, cfg, c);
          return wf::to_json(v).dump();
        },
        py::arg("matrix"), py::arg("factors"), py::arg("copies") = 1, py::arg("cut") = "bc", py::arg("seed") = 42,
        py::arg("restarts") = 200, py::arg("threads") = 1);

  m.def("two_qubit_distillable",
        [](const wf::Matrix& mat, const std::vector<FactorTuple>& f) { return wf::two_qubit_distillable(op_of(mat, f)); },
        py::arg("matrix"), py::arg("factors"));

  m.def("analyze",
        [](const wf::Matrix& mat, const std::vector<FactorTuple>& f, int copies, const std::string& certificate,
           std::uint64_t seed, int restarts, unsigned threads, bool search_decomposition) {
          const auto rho = op_of(mat, f);
          wf::AnalyzeOptions opt;
          if (!certificate.empty()) opt.decomposition = wf::decomposition_from_json(wf::json::parse(certificate));
          opt.search_decomposition = search_decomposition;
          py::gil_scoped_release release;
          return wf::analyze(rho, copies, config(seed, restarts, threads), opt).dump();
        },
        py::arg("matrix"), py::arg("factors"), py::arg("copies") = 1, py::arg("certificate") = "",
        py::arg("seed") = 42, py::arg("restarts") = 200, py::arg("threads") = 1,
        py::arg("search_decomposition") = true);

  m.def("reproduce_paper",
        [](std::uint64_t seed, int restarts, int grid_points) {
          py::gil_scoped_release release;
          return wf::to_json(wf::reproduce_paper(config(seed, restarts, 1), {}, grid_points)).dump();
        },
        py::arg("seed") = 42, py::arg("restarts") = 200, py::arg("grid_points") = 15);

  m.def("sweep",
        [](const std::string& spec, std::uint64_t seed, int restarts) {
          const auto s = wf::sweep_spec_from_json(wf::json::parse(spec));
          wf::validate(s);
          py::gil_scoped_release release;
          return wf::run_sweep(s, config(seed, restarts, 1));
        },
        py::arg("spec"), py::arg("seed") = 42, py::arg("restarts") = 200);

  m.def("thresholds", []() {
    py::dict d;
    d["nppt"] = wf::nppt_threshold().value;
    d["projected"] = wf::projected_threshold().value;
    d["two_copy_alpha0"] = wf::two_copy_alpha0().value;
    return d;
  });

  m.attr("DEFAULT_Y") = wf::kDefaultY;
}
