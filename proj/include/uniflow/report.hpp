#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace uniflow {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "uniflow.report/1";

struct Check {
  std::string id;      // unique inside its suite
  std::string anchor;  // the statement this check exercises
  Json inputs = Json::object();
  Json measured = Json::object();
  Json bound = Json::object();
  bool pass = false;

  bool operator==(const Check&) const = default;
};

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;

  bool operator==(const Table&) const = default;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<Table> tables;

  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
  Check& add(std::string id, std::string anchor, Json inputs, Json measured, Json bound, bool pass);

  bool operator==(const SuiteReport&) const = default;
};

/// What one CLI invocation produced. Suites are kept sorted by id.
struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  Json config = Json::object();
  std::vector<SuiteReport> suites;

  bool ok() const;
  void normalize();

  bool operator==(const RunReport&) const = default;
};

void to_json(Json& j, const Check& c);
void from_json(const Json& j, Check& c);
void to_json(Json& j, const Table& t);
void from_json(const Json& j, Table& t);
void to_json(Json& j, const SuiteReport& r);
void from_json(const Json& j, SuiteReport& r);
void to_json(Json& j, const RunReport& r);
/// Throws ConfigParse on a schema mismatch.
void from_json(const Json& j, RunReport& r);

std::string to_csv(const Table& t);

/// Non-finite doubles become the strings "inf", "-inf", "nan" so reports stay valid JSON.
Json number(double x);

}  // namespace uniflow
