#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uniflow/error.hpp"
#include "uniflow/lie_algebra.hpp"
#include "uniflow/report.hpp"

namespace uniflow {

enum ExitCode : int {
  kExitPass = 0,
  kExitFalsified = 1,
  kExitConfig = 2,
  kExitNonConvergence = 3,
  kExitPrecondition = 4,
};

int exit_code_for(ErrorKind kind);

struct SimulationConfig {
  std::string kind;  // matching, tail, count, degree
  double horizon = 4096;
  double eps = 0.2;
  std::size_t samples = 100000;
  std::size_t grid = 2048;
  double delta0 = 1e-6;
  std::vector<double> t_values{50, 100, 200, 400, 800};
};

struct RunConfig {
  std::string command;  // analyze, enumerate-sld, verify, simulate
  std::string suite = "all";
  std::string algebra_path;       // TOML or JSON algebra spec
  Json algebra = Json::object();  // inline spec; algebra_path wins when both are set
  int d = 4;
  std::uint64_t seed = 7;
  std::string out_dir;
  bool json = true;
  bool csv = false;
  std::vector<double> horizons{256, 1024, 4096, 16384, 65536};
  std::vector<double> eps{0.01};
  std::size_t samples = 20000;
  SimulationConfig simulate;

  /// Throws ConfigParse on empty grids or nonpositive entries.
  void validate() const;
  Json to_json() const;
};

/// Reads a TOML (by extension .toml) or JSON document into JSON. Throws ConfigParse.
Json load_document(const std::string& path);

/// Applies the keys of a config document on top of cfg. Throws ConfigParse
/// on unknown keys or wrong types.
void apply_config(RunConfig& cfg, const Json& doc);

struct ResolvedAlgebra {
  AlgebraPtr algebra;
  AlgebraElement u;
  std::string name;
};

/// Algebra spec: {"builtin": "sl3" | "su21" | "sl2^3" | "sl2+sl3", ...} or
/// {"basis": [matrix, ...], "label": ...}, plus an optional element as
/// "element" (coefficients) or "element_matrix". Builtins default to E12 in
/// each sl factor and iE12 in su(2,1). Entries may be numbers or rational strings.
ResolvedAlgebra resolve_algebra(const Json& spec);

SuiteReport analyze(const ResolvedAlgebra& alg);
SuiteReport enumerate_sld(int d);
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);
SuiteReport simulate(const RunConfig& cfg);

/// Suite names accepted by verify, sorted.
const std::vector<std::string>& suite_names();

struct RunOutcome {
  RunReport report;
  int exit_code = kExitPass;
  std::string error;
};

/// Dispatches on cfg.command; library errors become exit codes, never exceptions.
RunOutcome run(const RunConfig& cfg);

/// Writes <command>.json and one CSV per table into cfg.out_dir.
void write_outputs(const RunOutcome& out, const RunConfig& cfg);

}  // namespace uniflow
