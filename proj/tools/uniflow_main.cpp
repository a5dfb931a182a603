#include <iostream>

#include <CLI11.hpp>

#include "uniflow/cli.hpp"

using namespace uniflow;

int main(int argc, char** argv) {
  CLI::App app{"Growth rates, divergence and horocycle simulations for unipotent flows"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool want_json = false, want_csv = false;
  app.add_option("--config", config_path, "TOML or JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "64-bit seed for every stochastic check");
  app.add_option("--out", out_dir, "directory for the JSON report and CSV tables");
  app.add_flag("--json", want_json, "emit the JSON report");
  app.add_flag("--csv", want_csv, "emit CSV tables");

  auto* analyze = app.add_subcommand("analyze", "classify a nilpotent element");
  std::string algebra_path, builtin;
  analyze->add_option("--algebra", algebra_path, "algebra spec file (TOML or JSON)")->check(CLI::ExistingFile);
  analyze->add_option("--builtin", builtin, "builtin algebra such as sl3, su21, sl2^3, sl2+sl3");

  auto* enumerate = app.add_subcommand("enumerate-sld", "growth rates of single Jordan blocks in sl(d)");
  std::optional<int> d;
  enumerate->add_option("--d", d, "matrix size")->check(CLI::Range(2, 8));

  auto* verify = app.add_subcommand("verify", "run property suites");
  std::optional<std::string> suite;
  verify->add_option("--suite", suite, "chain, divergence, sl2, flow or all");

  auto* simulate = app.add_subcommand("simulate", "horocycle flow experiments");
  std::string kind;
  simulate->add_option("kind", kind, "matching, tail, count or degree")
      ->required()
      ->check(CLI::IsMember({"matching", "tail", "count", "degree"}));

  for (auto* sub : {analyze, enumerate, verify, simulate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_config(cfg, load_document(config_path));
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (seed) cfg.seed = *seed;
  if (out_dir) cfg.out_dir = *out_dir;
  if (d) cfg.d = *d;
  if (suite) cfg.suite = *suite;
  if (!algebra_path.empty()) cfg.algebra_path = algebra_path;
  if (!builtin.empty()) cfg.algebra = Json{{"builtin", builtin}};
  if (!kind.empty()) cfg.simulate.kind = kind;
  if (want_json || want_csv) {
    cfg.json = want_json;
    cfg.csv = want_csv;
  } else if (!cfg.out_dir.empty()) {
    cfg.csv = true;
  }

  const RunOutcome out = run(cfg);
  if (!out.error.empty()) {
    std::cerr << out.error << '\n';
    return out.exit_code;
  }
  try {
    if (!cfg.out_dir.empty()) {
      write_outputs(out, cfg);
    } else {
      if (cfg.json) std::cout << Json(out.report).dump(2) << '\n';
      if (cfg.csv)
        for (const auto& s : out.report.suites)
          for (const auto& t : s.tables) std::cout << "# " << s.suite << "." << t.name << '\n' << to_csv(t);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  for (const auto& s : out.report.suites)
    std::cerr << s.suite << ": " << s.passed() << " passed, " << s.failed() << " failed\n";
  return out.exit_code;
}
