#include "config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace qlink {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string>& schema() {
  static const std::set<std::string> keys = {
      "lattice.type", "lattice.n", "lattice.file", "lattice.plaquettes",
      "model.source", "model.epsilon", "model.U", "model.E_J", "model.E_C", "model.Omega",
      "model.Omega_prime", "model.mu", "model.mu_plus", "model.Vprime", "model.J", "model.V", "model.W",
      "model.lambda", "model.vertex_EJ_ratio", "model.vertex_C_ratio", "model.plaquette_EJ_ratio",
      "model.plaquette_C_ratio", "model.flux",
      "protocol.name", "protocol.hamiltonian", "protocol.charges", "protocol.flux_min", "protocol.flux_max",
      "protocol.flux_points", "protocol.drive_qubit", "protocol.drive_amplitude", "protocol.detuning_min",
      "protocol.detuning_max", "protocol.points", "protocol.pairs", "protocol.initial", "protocol.t_min", "protocol.t_max",
      "protocol.J0", "protocol.V0", "protocol.v", "protocol.mag_link", "protocol.J_over_V",
      "protocol.field", "protocol.center_links", "protocol.edge_links",
      "numerics.dt", "numerics.richardson",
      "decay.Gamma",
      "disorder.delta_eps", "disorder.n", "disorder.seed",
      "output.dir",
  };
  return keys;
}

double parse_double(const std::string& key, const std::string& v) {
  std::string s = trim(v);
  double x = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    fail(ErrorCode::validation, "config: " + key + ": expected a number, got '" + v + "'");
  return x;
}

}  // namespace

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

RunConfig RunConfig::from_string(const std::string& text) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorCode::validation, std::string("config: ") + e.what());
  }
  RunConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty()) fail(ErrorCode::validation, "config: " + section + ": key outside of a section");
    for (const auto& [key, value] : body) c.entries_[section + "." + key] = trim(value.data());
  }
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig c = from_string(ss.str());
  c.dir_ = std::filesystem::absolute(path).parent_path().string();
  return c;
}

void RunConfig::validate() const {
  for (const auto& [k, v] : entries_)
    if (!schema().count(k)) fail(ErrorCode::validation, "config: " + k + ": unknown key");
}

bool RunConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string RunConfig::str(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) fail(ErrorCode::validation, "config: " + key + ": required key missing");
  return it->second;
}

std::string RunConfig::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

double RunConfig::num(const std::string& key) const { return parse_double(key, str(key)); }

double RunConfig::num(const std::string& key, double fallback) const { return has(key) ? num(key) : fallback; }

long long RunConfig::integer(const std::string& key) const {
  std::string s = trim(str(key));
  long long x = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    fail(ErrorCode::validation, "config: " + key + ": expected an integer, got '" + s + "'");
  return x;
}

long long RunConfig::integer(const std::string& key, long long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::vector<double> RunConfig::list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split(str(key), ',')) out.push_back(parse_double(key, item));
  return out;
}

void RunConfig::set(const std::string& key, const std::string& value) { entries_[key] = value; }

}  // namespace qlink
