#include "bose/io.hpp"

#include "bose/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace bose {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::vector<double> get_numbers(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(where + "." + key + ": expected a number or an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where + "." + key + ": expected numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

void strictly_increasing(const std::vector<double>& v, const std::string& where) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) throw ConfigError(where + ": list must be strictly increasing");
  }
}

Eigen::Vector3i get_vec3(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 3) throw ConfigError(where + "." + key + ": expected three integers");
  Eigen::Vector3i out;
  for (int i = 0; i < 3; ++i) {
    if (!v[static_cast<std::size_t>(i)].is_number_integer()) throw ConfigError(where + "." + key + ": expected integers");
    out(i) = v[static_cast<std::size_t>(i)].get<int>();
  }
  return out;
}

PotentialSpec parse_potential(const json& p) {
  check_keys(p, "potential", {"family", "lambda", "sigma", "coefficients"});
  if (!p.contains("family") || !p["family"].is_string()) throw ConfigError("potential.family: expected a string");
  for (const char* k : {"lambda", "sigma"}) {
    if (!p.contains(k)) throw ConfigError(std::string("potential.") + k + ": missing");
  }
  const ProfileFamily family = profile_family_from_string(p["family"].get<std::string>());
  const double lambda = get_number(p, "lambda", "potential");
  const double sigma = get_number(p, "sigma", "potential");
  if (family == ProfileFamily::gaussian) {
    if (p.contains("coefficients")) throw ConfigError("potential.coefficients: only for poly_gaussian");
    return gaussian_potential(sigma, lambda);
  }
  if (!p.contains("coefficients")) throw ConfigError("potential.coefficients: missing");
  return poly_gaussian_potential(sigma, lambda, get_numbers(p, "coefficients", "potential"));
}

fock::OracleConfig parse_oracle(const json& o) {
  check_keys(o, "oracle", {"k1", "k2", "L", "lambda", "sigma", "n_max", "c_bound", "sqrtN0_bound", "moment_draws",
                           "hamiltonian_draws", "seed", "zero_pairs", "fault"});
  fock::OracleConfig c;
  if (o.contains("k1")) c.k1 = get_vec3(o, "k1", "oracle");
  if (o.contains("k2")) c.k2 = get_vec3(o, "k2", "oracle");
  if (o.contains("L")) c.L = get_number(o, "L", "oracle");
  if (o.contains("lambda")) c.lambda = get_number(o, "lambda", "oracle");
  if (o.contains("sigma")) c.sigma = get_number(o, "sigma", "oracle");
  if (o.contains("n_max")) c.n_max = get_int(o, "n_max", "oracle");
  if (o.contains("c_bound")) c.c_bound = get_number(o, "c_bound", "oracle");
  if (o.contains("sqrtN0_bound")) c.sqrtN0_bound = get_number(o, "sqrtN0_bound", "oracle");
  if (o.contains("moment_draws")) c.moment_draws = get_int(o, "moment_draws", "oracle");
  if (o.contains("hamiltonian_draws")) c.hamiltonian_draws = get_int(o, "hamiltonian_draws", "oracle");
  if (o.contains("seed")) {
    if (!o["seed"].is_number_unsigned()) throw ConfigError("oracle.seed: expected a nonnegative integer");
    c.seed = o["seed"].get<std::uint64_t>();
  }
  if (o.contains("zero_pairs")) {
    if (!o["zero_pairs"].is_boolean()) throw ConfigError("oracle.zero_pairs: expected a boolean");
    c.zero_pairs = o["zero_pairs"].get<bool>();
  }
  if (o.contains("fault")) {
    if (!o["fault"].is_string()) throw ConfigError("oracle.fault: expected a string");
    c.fault = o["fault"].get<std::string>();
  }
  if (c.moment_draws < 0 || c.hamiltonian_draws < 0) throw ConfigError("oracle: draw counts must be >= 0");
  return c;
}

void rebuild_canonical(RunConfig& cfg) {
  json j = json::parse(cfg.canonical);
  j["tolerances"] = cfg.tolerances;
  cfg.canonical = j.dump();
}

}  // namespace

const char* tool_version() { return "1.0.0"; }

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"scattering", 1e-10},     // a from the asymptote vs a from the integral
      {"route_coefficient", 10.0},  // |a_ode - a_born| / a <= coefficient * lambda^3
      {"lhy", 0.05},             // kappa0 vs sqrt(32/pi) Phi(h), relative
      {"oracle_moment", 1e-8},
      {"oracle_energy", 1e-6},
      {"dilute", 1e-3},          // largest admissible rho a^3
  };
  return t;
}

bool RunConfig::has(const std::string& section) const {
  return std::find(sections.begin(), sections.end(), section) != sections.end();
}

void RunConfig::require(const std::string& section, const std::string& command) const {
  if (!has(section)) throw ConfigError(command + ": config section '" + section + "' is required");
}

double RunConfig::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) throw ConfigError("unknown tolerance '" + name + "'");
  return it->second;
}

EnergyOptions RunConfig::energy_options() const {
  EnergyOptions o;
  o.box_side = L;
  o.p_cut = p_cut;
  return o;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  check_keys(j, "config", {"potential", "lattice", "physics", "outputs", "tolerances", "oracle", "phi_table"});
  RunConfig cfg;
  cfg.tolerances = default_tolerances();
  try {
    for (const auto& [key, value] : j.items()) cfg.sections.push_back(key);
    if (j.contains("potential")) cfg.potential = parse_potential(j["potential"]);
    if (j.contains("lattice")) {
      const json& l = j["lattice"];
      check_keys(l, "lattice", {"L", "p_cut"});
      if (l.contains("L")) cfg.L = get_number(l, "L", "lattice");
      if (l.contains("p_cut")) cfg.p_cut = get_number(l, "p_cut", "lattice");
      if (cfg.L < 0.0 || cfg.p_cut < 0.0) throw ConfigError("lattice: L and p_cut must be >= 0");
    }
    if (j.contains("physics")) {
      const json& p = j["physics"];
      check_keys(p, "physics", {"rho", "born_order", "lambda_scan"});
      if (p.contains("rho")) cfg.rho = get_numbers(p, "rho", "physics");
      if (p.contains("born_order")) cfg.born_order = get_int(p, "born_order", "physics");
      if (p.contains("lambda_scan")) cfg.lambda_scan = get_numbers(p, "lambda_scan", "physics");
      strictly_increasing(cfg.rho, "physics.rho");
      strictly_increasing(cfg.lambda_scan, "physics.lambda_scan");
      for (double r : cfg.rho) {
        if (!(r > 0.0)) throw ConfigError("physics.rho: densities must be > 0");
      }
      if (cfg.born_order < 1 || cfg.born_order > 12) throw ConfigError("physics.born_order: must lie in [1, 12]");
    }
    if (j.contains("outputs")) {
      const json& o = j["outputs"];
      check_keys(o, "outputs", {"directory", "format"});
      if (o.contains("directory")) {
        if (!o["directory"].is_string()) throw ConfigError("outputs.directory: expected a string");
        cfg.out_dir = o["directory"].get<std::string>();
      }
      if (o.contains("format")) {
        if (!o["format"].is_string()) throw ConfigError("outputs.format: expected a string");
        cfg.format = o["format"].get<std::string>();
      }
      if (cfg.format != "csv" && cfg.format != "doc") throw ConfigError("outputs.format: expected csv or doc");
    }
    if (j.contains("tolerances")) {
      const json& t = j["tolerances"];
      if (!t.is_object()) throw ConfigError("tolerances: expected an object");
      for (const auto& [key, value] : t.items()) {
        if (!cfg.tolerances.count(key)) throw ConfigError("tolerances: unknown tolerance '" + key + "'");
        if (!value.is_number() || !(value.get<double>() > 0.0)) {
          throw ConfigError("tolerances." + key + ": expected a positive number");
        }
        cfg.tolerances[key] = value.get<double>();
      }
    }
    if (j.contains("oracle")) cfg.oracle = parse_oracle(j["oracle"]);
    if (j.contains("phi_table")) {
      const json& p = j["phi_table"];
      check_keys(p, "phi_table", {"h"});
      if (p.contains("h")) cfg.phi_h = get_numbers(p, "h", "phi_table");
      strictly_increasing(cfg.phi_h, "phi_table.h");
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.oracle.moment_tolerance = cfg.tolerances.at("oracle_moment");
  cfg.oracle.energy_tolerance = cfg.tolerances.at("oracle_energy");
  cfg.canonical = j.dump();
  rebuild_canonical(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_env_overrides(RunConfig& config) {
  bool changed = false;
  for (auto& [name, value] : config.tolerances) {
    std::string var = "BOSE_TOL_" + name;
    std::transform(var.begin(), var.end(), var.begin(), [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    const char* env = std::getenv(var.c_str());
    if (env == nullptr) continue;
    double x = 0.0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto res = std::from_chars(env, end, x);
    if (res.ec != std::errc() || res.ptr != end || !(x > 0.0)) {
      throw ConfigError(var + ": expected a positive number, got '" + env + "'");
    }
    value = x;
    changed = true;
  }
  config.oracle.moment_tolerance = config.tolerances.at("oracle_moment");
  config.oracle.energy_tolerance = config.tolerances.at("oracle_energy");
  if (changed) rebuild_canonical(config);
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : config.canonical) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void Table::add_meta(const std::string& key, double value) { meta.emplace_back(key, format_number(value)); }

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string render_csv(const Table& table) {
  std::ostringstream os;
  for (const auto& [k, v] : table.meta) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string render_doc(const Table& table) {
  json doc;
  json meta = json::object();
  for (const auto& [k, v] : table.meta) meta[k] = v;
  doc["meta"] = meta;
  doc["columns"] = table.columns;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      // numbers stay numbers where JSON can hold them
      const std::string& cell = row[i];
      double x = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (res.ec == std::errc() && res.ptr == cell.data() + cell.size() && std::isfinite(x)) {
        r[table.columns[i]] = x;
      } else {
        r[table.columns[i]] = cell;
      }
    }
    rows.push_back(r);
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

}  // namespace bose
