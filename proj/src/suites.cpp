#include "gps/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "suites_detail.hpp"

namespace gps {

// --- rng ----------------------------------------------------------------------

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
  const double u1 = std::max(uniform(), 1e-300);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// --- config ---------------------------------------------------------------------

void ExperimentConfig::validate() const {
  AlgebraSignature sig{p, q};
  sig.validate();
  if (static_cast<int>(domain.center_p.size()) != p + 1)
    throw std::invalid_argument("domain.center_p: expected p+1 entries");
  domain.validate();
  if (levels.empty()) throw std::invalid_argument("levels: must be nonempty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0) throw std::invalid_argument("levels: entries must be >= 0");
    if (i > 0 && levels[i] <= levels[i - 1])
      throw std::invalid_argument("levels: must be strictly ascending");
  }
  if (fd_step <= 0.0) throw std::invalid_argument("fd_step: must be positive");
  if (pv_factor <= 0.0) throw std::invalid_argument("pv_factor: must be positive");
  if (suites.empty()) throw std::invalid_argument("suites: must be nonempty");
  const auto& names = suite_names();
  for (const auto& s : suites) {
    if (std::find(names.begin(), names.end(), s) == names.end())
      throw std::invalid_argument("suites: unknown suite '" + s + "'");
    const bool needs_rules =
        s != "algebra" && s != "representation" && s != "kernel" && s != "all";
    if (needs_rules && (p != 1 || (q != 2 && q != 3)))
      throw std::invalid_argument("p: suite '" + s + "' requires p = 1 and q in {2, 3}");
  }
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& body, const std::string& path) {
  std::vector<std::string> items;
  std::string cur;
  bool quoted = false;
  for (char ch : body) {
    if (ch == '"') {
      quoted = !quoted;
      continue;
    }
    if (ch == ',' && !quoted) {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) throw std::invalid_argument(path + ": unterminated string");
  if (!trim(cur).empty()) items.push_back(trim(cur));
  return items;
}

double parse_number(const std::string& s, const std::string& path) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument(path + ": expected a number, got '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& path) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument(path + ": expected an integer, got '" + s + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  cfg.suites.clear();
  bool suites_set = false;
  std::string section;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string stripped;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      if (ch == '#' && !quoted) break;
      stripped += ch;
    }
    stripped = trim(stripped);
    if (stripped.empty()) continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']')
        throw std::invalid_argument("config: malformed section header '" + stripped + "'");
      section = trim(stripped.substr(1, stripped.size() - 2));
      if (section != "domain")
        throw std::invalid_argument("config: unknown section [" + section + "]");
      continue;
    }
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    const std::string path = section.empty() ? key : section + "." + key;

    auto as_list = [&](const std::string& v) {
      if (v.empty() || v.front() != '[' || v.back() != ']')
        throw std::invalid_argument(path + ": expected a [list]");
      return split_list(v.substr(1, v.size() - 2), path);
    };
    auto unquote = [&](const std::string& v) {
      if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
        return v.substr(1, v.size() - 2);
      return v;
    };

    if (path == "p") {
      cfg.p = static_cast<int>(parse_int(value, path));
    } else if (path == "q") {
      cfg.q = static_cast<int>(parse_int(value, path));
    } else if (path == "levels") {
      cfg.levels.clear();
      for (const auto& item : as_list(value))
        cfg.levels.push_back(static_cast<int>(parse_int(item, path)));
    } else if (path == "fd_step") {
      cfg.fd_step = parse_number(value, path);
    } else if (path == "pv_factor") {
      cfg.pv_factor = parse_number(value, path);
    } else if (path == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value, path));
    } else if (path == "suites") {
      cfg.suites.clear();
      for (const auto& item : as_list(value)) cfg.suites.push_back(unquote(item));
      suites_set = true;
    } else if (path == "domain.center_p") {
      cfg.domain.center_p.clear();
      for (const auto& item : as_list(value))
        cfg.domain.center_p.push_back(parse_number(item, path));
    } else if (path == "domain.r0") {
      cfg.domain.r0 = parse_number(value, path);
    } else if (path == "domain.rho") {
      cfg.domain.rho = parse_number(value, path);
    } else {
      throw std::invalid_argument("config: unknown key '" + path + "'");
    }
  }
  if (!suites_set) cfg.suites = {"all"};
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// --- csv -------------------------------------------------------------------------

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << "suite,case,level,metric,value,tolerance,pass\n";
  char buf[64];
  for (const ResultRow& r : rows) {
    os << r.suite << ',' << r.case_name << ',' << r.level << ',' << r.metric << ',';
    std::snprintf(buf, sizeof buf, "%.14e", r.value);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.14e", r.tolerance);
    os << buf << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

void emit_csv_file(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("emit_csv: cannot write '" + path + "'");
  emit_csv(rows, os);
}

// --- dispatch ----------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "algebra", "representation", "kernel",  "cif",   "pompeiu",
      "teodorescu", "derivatives",  "plemelj", "hodge", "all"};
  return names;
}

std::vector<ResultRow> run_suite(const std::string& name, const ExperimentConfig& config) {
  {
    ExperimentConfig check = config;
    check.suites = {name};
    check.validate();
  }
  if (name == "algebra") return detail::suite_algebra(config);
  if (name == "representation") return detail::suite_representation(config);
  if (name == "kernel") return detail::suite_kernel(config);
  if (name == "cif") return detail::suite_cif(config);
  if (name == "pompeiu") return detail::suite_pompeiu(config);
  if (name == "teodorescu") return detail::suite_teodorescu(config);
  if (name == "derivatives") return detail::suite_derivatives(config);
  if (name == "plemelj") return detail::suite_plemelj(config);
  if (name == "hodge") return detail::suite_hodge(config);
  if (name == "all") {
    std::vector<ResultRow> rows;
    for (const std::string& s : suite_names()) {
      if (s == "all") continue;
      auto part = run_suite(s, config);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
  }
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

}  // namespace gps
