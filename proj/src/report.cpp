#include "uniflow/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uniflow/error.hpp"

namespace uniflow {

std::size_t SuiteReport::passed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
}

std::size_t SuiteReport::failed() const { return checks.size() - passed(); }

Check& SuiteReport::add(std::string id, std::string anchor, Json inputs, Json measured, Json bound, bool pass) {
  checks.push_back({std::move(id), std::move(anchor), std::move(inputs), std::move(measured), std::move(bound), pass});
  return checks.back();
}

bool RunReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.ok(); });
}

void RunReport::normalize() {
  std::stable_sort(suites.begin(), suites.end(),
                   [](const SuiteReport& a, const SuiteReport& b) { return a.suite < b.suite; });
}

void to_json(Json& j, const Check& c) {
  j = Json{{"id", c.id},         {"anchor", c.anchor}, {"inputs", c.inputs},
           {"measured", c.measured}, {"bound", c.bound},   {"verdict", c.pass ? "pass" : "fail"}};
}

void from_json(const Json& j, Check& c) {
  c.id = j.at("id").get<std::string>();
  c.anchor = j.at("anchor").get<std::string>();
  c.inputs = j.at("inputs");
  c.measured = j.at("measured");
  c.bound = j.at("bound");
  const auto v = j.at("verdict").get<std::string>();
  if (v != "pass" && v != "fail") fail(ErrorKind::ConfigParse, "verdict must be pass or fail");
  c.pass = v == "pass";
}

void to_json(Json& j, const Table& t) { j = Json{{"name", t.name}, {"header", t.header}, {"rows", t.rows}}; }

void from_json(const Json& j, Table& t) {
  t.name = j.at("name").get<std::string>();
  t.header = j.at("header").get<std::vector<std::string>>();
  t.rows = j.at("rows").get<std::vector<std::vector<Json>>>();
}

void to_json(Json& j, const SuiteReport& r) {
  j = Json{{"suite", r.suite},
           {"checks", r.checks},
           {"tables", r.tables},
           {"summary", {{"total", r.checks.size()}, {"passed", r.passed()}, {"failed", r.failed()}}}};
}

void from_json(const Json& j, SuiteReport& r) {
  r.suite = j.at("suite").get<std::string>();
  r.checks = j.at("checks").get<std::vector<Check>>();
  r.tables = j.at("tables").get<std::vector<Table>>();
  const auto& s = j.at("summary");
  if (s.at("passed").get<std::size_t>() != r.passed() || s.at("failed").get<std::size_t>() != r.failed())
    fail(ErrorKind::ConfigParse, "summary counts disagree with the checks of suite " + r.suite);
}

void to_json(Json& j, const RunReport& r) {
  std::size_t passed = 0, failed = 0;
  for (const auto& s : r.suites) {
    passed += s.passed();
    failed += s.failed();
  }
  j = Json{{"schema", kReportSchema},
           {"command", r.command},
           {"seed", r.seed},
           {"config", r.config},
           {"suites", r.suites},
           {"summary", {{"passed", passed}, {"failed", failed}, {"verdict", failed == 0 ? "pass" : "fail"}}}};
}

void from_json(const Json& j, RunReport& r) {
  try {
    if (j.at("schema").get<std::string>() != kReportSchema)
      fail(ErrorKind::ConfigParse, "unsupported report schema " + j.at("schema").dump());
    r.command = j.at("command").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = j.at("config");
    r.suites = j.at("suites").get<std::vector<SuiteReport>>();
  } catch (const Json::exception& e) {
    fail(ErrorKind::ConfigParse, e.what());
  }
}

std::string to_csv(const Table& t) {
  auto cell = [](const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::ostringstream out;
  for (std::size_t k = 0; k < t.header.size(); ++k) out << (k ? "," : "") << t.header[k];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << cell(row[k]);
    out << '\n';
  }
  return out.str();
}

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace uniflow
