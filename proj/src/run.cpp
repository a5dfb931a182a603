#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>

#include "uniflow/cli.hpp"

namespace uniflow {

namespace {

ResolvedAlgebra config_algebra(const RunConfig& cfg) {
  if (!cfg.algebra_path.empty()) return resolve_algebra(load_document(cfg.algebra_path));
  if (!cfg.algebra.empty()) return resolve_algebra(cfg.algebra);
  return resolve_algebra(Json{{"builtin", "sl3"}});
}

std::vector<SuiteReport> verify(const RunConfig& cfg) {
  std::vector<std::string> names = suite_names();
  if (cfg.suite != "all") {
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
      fail(ErrorKind::UnknownSuite, "unknown suite '" + cfg.suite + "'");
    names = {cfg.suite};
  }
  std::vector<std::future<SuiteReport>> jobs;
  for (const auto& n : names) jobs.push_back(std::async(std::launch::async, [&cfg, n] { return run_suite(n, cfg); }));
  std::vector<SuiteReport> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
  RunOutcome out;
  out.report.command = cfg.command;
  out.report.seed = cfg.seed;
  try {
    cfg.validate();
    out.report.config = cfg.to_json();
    if (cfg.command == "analyze") {
      out.report.suites.push_back(analyze(config_algebra(cfg)));
    } else if (cfg.command == "enumerate-sld") {
      out.report.suites.push_back(enumerate_sld(cfg.d));
    } else if (cfg.command == "verify") {
      out.report.suites = verify(cfg);
    } else if (cfg.command == "simulate") {
      out.report.suites.push_back(simulate(cfg));
    } else {
      fail(ErrorKind::ConfigParse, "unknown command '" + cfg.command + "'");
    }
    out.report.normalize();
    out.exit_code = out.report.ok() ? kExitPass : kExitFalsified;
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.kind());
    out.error = e.what();
  }
  return out;
}

void write_outputs(const RunOutcome& out, const RunConfig& cfg) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::ConfigParse, "cannot create " + dir.string() + ": " + ec.message());
  auto write = [](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) fail(ErrorKind::ConfigParse, "cannot write " + p.string());
    f << text;
  };
  if (cfg.json) write(dir / (cfg.command + ".json"), Json(out.report).dump(2) + "\n");
  if (cfg.csv)
    for (const auto& s : out.report.suites)
      for (const auto& t : s.tables) write(dir / (s.suite + "." + t.name + ".csv"), to_csv(t));
}

}  // namespace uniflow
