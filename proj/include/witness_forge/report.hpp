#pragma once

// Orchestration shared by the command line tool and the Python module:
// threshold bisection, the rho_alpha report, parameter sweeps, the combined
// analysis of a state, and JSON forms of every verdict.

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "witness_forge/choi.hpp"
#include "witness_forge/distill.hpp"
#include "witness_forge/witness.hpp"

namespace witness_forge {

using json = nlohmann::json;

struct BisectionOptions {
  int max_iterations = 60;
  double interval_tol = 1e-9;
};

struct BisectionResult {
  double value = 0.0;  // midpoint of the final bracket
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};

/// Locates a sign change of f in [lo, hi]; f(lo) and f(hi) must differ in sign.
BisectionResult bisect(const std::function<double(double)>& f, double lo, double hi, const BisectionOptions& opt = {});

/// alpha where rho_alpha^{T_C} acquires a negative eigenvalue.
BisectionResult nppt_threshold(const BisectionOptions& opt = {});
/// alpha where (<0|rho_alpha|0>_A)^{T_B} acquires a negative eigenvalue.
BisectionResult projected_threshold(const BisectionOptions& opt = {});
/// alpha where Q of the two-copy certificate with weight y stops being PSD.
BisectionResult two_copy_alpha0(double y = kDefaultY, const BisectionOptions& opt = {});

struct GridPoint {
  double alpha = 0.0;
  double min_eig_R = 0.0;
  double min_eig_Q = 0.0;
  double residual = 0.0;
  bool verified = false;
};

struct WitnessReportEntry {
  std::string name;
  double alpha = 0.0;
  int copies = 1;
  std::string construction;
  std::string kind;
  std::string status;
  double best_value = 0.0;
};

struct DistillReportEntry {
  double alpha = 0.0;
  int copies = 1;
  std::string cut;
  std::string status;
  double best_value = 0.0;
};

struct PaperReport {
  BisectionOptions bisection;
  BisectionResult nppt_threshold;
  BisectionResult projected_threshold;
  std::vector<GridPoint> one_copy_grid;
  bool one_copy_range_verified = false;
  GridPoint one_copy_outside;  // alpha = 1.05
  double y_used = kDefaultY;
  BisectionResult two_copy_alpha0;
  std::vector<WitnessReportEntry> witness_verdicts;
  std::vector<DistillReportEntry> distill_verdicts;
  std::uint64_t seed = 0;
  int restarts = 0;
};

PaperReport reproduce_paper(const SearchConfig& cfg, const BisectionOptions& opt = {}, int grid_points = 15);
json to_json(const PaperReport& r);
std::string to_table(const PaperReport& r);

enum class SweepParameter { Alpha, Y };

struct SweepSpec {
  SweepParameter parameter = SweepParameter::Alpha;
  double from = 0.0;
  double to = 1.0;
  double step = 0.1;
  int copies = 1;
  std::set<std::string> analyses;  // subset of {ppt, distill, decomp}
  double alpha = 0.85;             // fixed alpha for y sweeps
  double y = kDefaultY;            // fixed y for alpha sweeps
};

SweepSpec sweep_spec_from_json(const json& j);
/// Throws BadSpec for an invalid range, an empty or unknown analysis set, or
/// more than 10000 points.
void validate(const SweepSpec& s);
std::vector<double> sweep_grid(const SweepSpec& s);
/// CSV text, one row per grid point; the header depends only on the analyses.
std::string run_sweep(const SweepSpec& s, const SearchConfig& cfg);

struct AnalyzeOptions {
  std::optional<DecompositionCertificate> decomposition;
  std::optional<LabeledOperator> detector;  // Choi operator for verify_activation
  bool search_decomposition = true;
};

/// Per cut: distillability search, witness classification (with the supplied
/// evidence or a decomposition search) and activation check, then a summary
/// that only claims what a verified certificate supports.
json analyze(const LabeledOperator& rho, int copies, const SearchConfig& cfg, const AnalyzeOptions& opt = {});

json to_json(const Verdict& v);
json to_json(const DistillVerdict& v);
json to_json(const Classification& c);
json to_json(const DecompositionCertificate& c);
json to_json(const SpanningSet& s);
json to_json(const PProperties& p);
json to_json(const PairingIdentity& p);
json to_json(const std::vector<CutReport>& cuts);
json to_json(const SearchConfig& cfg);

/// Reads a certificate written by to_json(DecompositionCertificate).
DecompositionCertificate decomposition_from_json(const json& j);

}  // namespace witness_forge
