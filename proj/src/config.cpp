#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include <toml.hpp>

#include "uniflow/cli.hpp"

namespace uniflow {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigParse:
    case ErrorKind::UnknownSuite:
    case ErrorKind::InvalidArgument:
      return kExitConfig;
    case ErrorKind::OutOfChartDomain:
    case ErrorKind::NoCrossing:
    case ErrorKind::WrapDetected:
    case ErrorKind::EigenAlignmentFailed:
      return kExitNonConvergence;
    default:
      return kExitPrecondition;
  }
}

namespace {

Json from_toml(const toml::node& node) {
  if (auto* t = node.as_table()) {
    Json j = Json::object();
    for (const auto& [k, v] : *t) j[std::string(k.str())] = from_toml(v);
    return j;
  }
  if (auto* a = node.as_array()) {
    Json j = Json::array();
    for (const auto& v : *a) j.push_back(from_toml(v));
    return j;
  }
  if (auto* s = node.as_string()) return s->get();
  if (auto* i = node.as_integer()) return i->get();
  if (auto* f = node.as_floating_point()) return f->get();
  if (auto* b = node.as_boolean()) return b->get();
  fail(ErrorKind::ConfigParse, "unsupported TOML value (dates and times are not accepted)");
}

Scalar scalar_from(const Json& v) {
  if (v.is_number_integer()) return Scalar(static_cast<long>(v.get<long long>()));
  std::string text;
  if (v.is_number_float()) {
    text = v.dump();
  } else if (v.is_string()) {
    text = v.get<std::string>();
  } else {
    fail(ErrorKind::ConfigParse, "expected a number or rational string, got " + v.dump());
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos && text.find_first_of("eE") == std::string::npos) return parse_scalar(text);
  // finite decimals: "0.25", "-1.5e-3"
  static const std::regex dec(R"(\s*([+-]?)(\d*)\.?(\d*)(?:[eE]([+-]?\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, dec) || (m[2].length() == 0 && m[3].length() == 0))
    fail(ErrorKind::ConfigParse, "bad number '" + text + "'");
  Scalar value(mpz_class(m[2].str() + m[3].str()));
  long exp10 = -static_cast<long>(m[3].length());
  if (m[4].matched) exp10 += std::stol(m[4].str());
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  if (exp10 >= 0) value *= p;
  else value /= p;
  value.canonicalize();
  return m[1].str() == "-" ? Scalar(-value) : value;
}

RationalMatrix matrix_from(const Json& rows) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array())
    fail(ErrorKind::ConfigParse, "a matrix is a nonempty array of rows");
  const std::size_t n = rows.size(), c = rows.front().size();
  RationalMatrix m(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) fail(ErrorKind::ConfigParse, "ragged matrix rows");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = scalar_from(rows[i][k]);
  }
  return m;
}

struct Term {
  AlgebraPtr algebra;
  RationalVector u;
};

Term builtin_term(const std::string& name) {
  static const std::regex sl(R"(sl\(?(\d+)\)?)");
  std::smatch m;
  if (std::regex_match(name, m, sl)) {
    const int d = std::stoi(m[1].str());
    if (d < 2 || d > 8) fail(ErrorKind::ConfigParse, "sl(d) needs 2 <= d <= 8");
    auto g = build_sl(d);
    RationalVector u(g->dim());
    u[sl_offdiag_index(d, 0, 1)] = 1;
    return {g, u};
  }
  if (name == "su21" || name == "su(2,1)") {
    auto g = build_su21();
    RationalVector u(g->dim());
    u[kSu21UnipotentIndex] = 1;
    return {g, u};
  }
  fail(ErrorKind::ConfigParse, "unknown builtin algebra '" + name + "'");
}

Term builtin(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::optional<Term> acc;
  std::stringstream terms(s);
  std::string term;
  while (std::getline(terms, term, '+')) {
    int k = 1;
    if (auto caret = term.find('^'); caret != std::string::npos) {
      try {
        k = std::stoi(term.substr(caret + 1));
      } catch (const std::exception&) {
        fail(ErrorKind::ConfigParse, "bad exponent in '" + term + "'");
      }
      if (k < 1 || k > 6) fail(ErrorKind::ConfigParse, "power must lie in 1..6");
      term = term.substr(0, caret);
    }
    const Term base = builtin_term(term);
    for (int r = 0; r < k; ++r) {
      if (!acc) {
        acc = base;
      } else {
        acc->algebra = direct_sum(acc->algebra, base.algebra);
        acc->u.insert(acc->u.end(), base.u.begin(), base.u.end());
      }
    }
  }
  if (!acc) fail(ErrorKind::ConfigParse, "empty builtin algebra name");
  return *acc;
}

std::vector<double> doubles(const Json& v, const char* key) {
  if (!v.is_array()) fail(ErrorKind::ConfigParse, std::string(key) + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) fail(ErrorKind::ConfigParse, std::string(key) + " entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

template <class T>
T get(const Json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const Json::exception&) {
    fail(ErrorKind::ConfigParse, std::string("wrong type for ") + key);
  }
}

void require_positive(const std::vector<double>& v, const char* what) {
  if (v.empty()) fail(ErrorKind::ConfigParse, std::string(what) + " grid is empty");
  for (double x : v)
    if (!(x > 0) || !std::isfinite(x)) fail(ErrorKind::ConfigParse, std::string(what) + " entries must be positive");
}

}  // namespace

Json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ConfigParse, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const bool is_toml = path.size() >= 5 && path.substr(path.size() - 5) == ".toml";
  if (is_toml) {
    try {
      return from_toml(toml::parse(buf.str(), path));
    } catch (const toml::parse_error& e) {
      std::ostringstream msg;
      msg << path << ":" << e.source().begin.line << ": " << e.description();
      fail(ErrorKind::ConfigParse, msg.str());
    }
  }
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ConfigParse, path + ": " + e.what());
  }
}

void apply_config(RunConfig& cfg, const Json& doc) {
  if (!doc.is_object()) fail(ErrorKind::ConfigParse, "config must be a table");
  for (const auto& [key, v] : doc.items()) {
    if (key == "command") cfg.command = get<std::string>(v, "command");
    else if (key == "suite") cfg.suite = get<std::string>(v, "suite");
    else if (key == "seed") cfg.seed = get<std::uint64_t>(v, "seed");
    else if (key == "d") cfg.d = get<int>(v, "d");
    else if (key == "out") cfg.out_dir = get<std::string>(v, "out");
    else if (key == "json") cfg.json = get<bool>(v, "json");
    else if (key == "csv") cfg.csv = get<bool>(v, "csv");
    else if (key == "algebra") {
      if (v.is_string()) cfg.algebra_path = v.get<std::string>();
      else if (v.is_object()) cfg.algebra = v;
      else fail(ErrorKind::ConfigParse, "algebra must be a path or a table");
    } else if (key == "grids") {
      for (const auto& [g, gv] : v.items()) {
        if (g == "horizons") cfg.horizons = doubles(gv, "horizons");
        else if (g == "eps") cfg.eps = doubles(gv, "eps");
        else if (g == "samples") cfg.samples = get<std::size_t>(gv, "samples");
        else fail(ErrorKind::ConfigParse, "unknown key grids." + g);
      }
    } else if (key == "simulate") {
      auto& s = cfg.simulate;
      for (const auto& [g, gv] : v.items()) {
        if (g == "kind") s.kind = get<std::string>(gv, "kind");
        else if (g == "horizon") s.horizon = get<double>(gv, "horizon");
        else if (g == "eps") s.eps = get<double>(gv, "eps");
        else if (g == "samples") s.samples = get<std::size_t>(gv, "samples");
        else if (g == "grid") s.grid = get<std::size_t>(gv, "grid");
        else if (g == "delta0") s.delta0 = get<double>(gv, "delta0");
        else if (g == "t_values") s.t_values = doubles(gv, "t_values");
        else fail(ErrorKind::ConfigParse, "unknown key simulate." + g);
      }
    } else {
      fail(ErrorKind::ConfigParse, "unknown config key '" + key + "'");
    }
  }
}

void RunConfig::validate() const {
  require_positive(horizons, "horizons");
  require_positive(eps, "eps");
  if (samples == 0) fail(ErrorKind::ConfigParse, "samples must be positive");
  if (simulate.samples == 0 || simulate.grid < 2) fail(ErrorKind::ConfigParse, "simulation grids too small");
  require_positive(simulate.t_values, "t_values");
  if (!(simulate.horizon > 0) || !(simulate.eps > 0)) fail(ErrorKind::ConfigParse, "simulation R and eps must be positive");
}

Json RunConfig::to_json() const {
  Json j{{"command", command},
         {"suite", suite},
         {"d", d},
         {"seed", seed},
         {"grids", {{"horizons", horizons}, {"eps", eps}, {"samples", samples}}}};
  if (!algebra_path.empty()) j["algebra"] = algebra_path;
  else if (!algebra.empty()) j["algebra"] = algebra;
  if (command == "simulate")
    j["simulate"] = {{"kind", simulate.kind},     {"horizon", simulate.horizon}, {"eps", simulate.eps},
                     {"samples", simulate.samples}, {"grid", simulate.grid},       {"delta0", simulate.delta0},
                     {"t_values", simulate.t_values}};
  return j;
}

ResolvedAlgebra resolve_algebra(const Json& spec) {
  if (!spec.is_object()) fail(ErrorKind::ConfigParse, "algebra spec must be a table");
  for (const auto& [k, v] : spec.items())
    if (k != "builtin" && k != "basis" && k != "label" && k != "element" && k != "element_matrix")
      fail(ErrorKind::ConfigParse, "unknown algebra key '" + k + "'");
  ResolvedAlgebra out;
  std::optional<RationalVector> default_u;
  if (spec.contains("builtin") == spec.contains("basis"))
    fail(ErrorKind::ConfigParse, "algebra spec needs exactly one of builtin and basis");
  if (spec.contains("builtin")) {
    out.name = get<std::string>(spec["builtin"], "builtin");
    auto t = builtin(out.name);
    out.algebra = t.algebra;
    default_u = t.u;
  } else {
    const auto& b = spec["basis"];
    if (!b.is_array() || b.empty()) fail(ErrorKind::ConfigParse, "basis must be a nonempty array of matrices");
    std::vector<RationalMatrix> mats;
    for (const auto& m : b) mats.push_back(matrix_from(m));
    const std::size_t n = mats.front().rows();
    for (const auto& m : mats)
      if (m.rows() != n || m.cols() != n) fail(ErrorKind::ConfigParse, "basis matrices must be square of one size");
    out.name = spec.contains("label") ? get<std::string>(spec["label"], "label") : "custom";
    out.algebra = std::make_shared<const LieAlgebra>(out.name, n, std::move(mats));
  }
  if (spec.contains("element") && spec.contains("element_matrix"))
    fail(ErrorKind::ConfigParse, "give element or element_matrix, not both");
  if (spec.contains("element")) {
    const auto& e = spec["element"];
    if (!e.is_array() || e.size() != out.algebra->dim())
      fail(ErrorKind::ConfigParse, "element needs " + std::to_string(out.algebra->dim()) + " coefficients");
    RationalVector c;
    for (const auto& x : e) c.push_back(scalar_from(x));
    out.u = make_element(out.algebra, c);
  } else if (spec.contains("element_matrix")) {
    const auto m = matrix_from(spec["element_matrix"]);
    if (m.rows() != out.algebra->ambient_dim() || m.cols() != out.algebra->ambient_dim())
      fail(ErrorKind::ConfigParse, "element_matrix has the wrong size");
    out.u = element_from_matrix(out.algebra, m);
  } else if (default_u) {
    out.u = make_element(out.algebra, *default_u);
  } else {
    fail(ErrorKind::ConfigParse, "an explicit basis needs an element");
  }
  return out;
}

}  // namespace uniflow
