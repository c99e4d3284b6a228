#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "config.hpp"
#include "protocols.hpp"

using namespace qlink;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("qlink_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string error_text(const RunConfig& c) {
  try {
    c.validate();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parsing") {
  auto c = RunConfig::from_string("[lattice]\ntype = chain\nn = 2\n; comment\n[protocol]\ncharges = 0, 0.5 ,0\n");
  CHECK(c.str("lattice.type") == "chain");
  CHECK(c.integer("lattice.n") == 2);
  CHECK(c.num("lattice.n") == 2.0);
  CHECK(c.list("protocol.charges") == std::vector<double>{0, 0.5, 0});
  CHECK(c.num("decay.Gamma", 0.25) == 0.25);
  CHECK(!c.has("decay.Gamma"));
  CHECK_THROWS_AS(c.str("decay.Gamma"), Error);
  c.set("model.J", "abc");
  CHECK_THROWS_AS(c.num("model.J"), Error);
  c.set("model.J", "1.5");
  CHECK_THROWS_AS(c.integer("model.J"), Error);
  CHECK_THROWS_AS(RunConfig::from_file("/nonexistent/file.ini"), Error);
  CHECK_THROWS_AS(RunConfig::from_string("[a\nb"), Error);
}

TEST_CASE("schema errors name the key") {
  auto c = RunConfig::from_string("[model]\nOmegaa = 3\n");
  CHECK(error_text(c).find("model.Omegaa") != std::string::npos);
  auto ok = RunConfig::from_string("[model]\nOmega = 3\n[decay]\nGamma = 0.1\n");
  CHECK(error_text(ok).empty());
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3, -2.5e-300, 6000.0, 1e22}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("helpers") {
  CHECK(trim("  a b \t") == "a b");
  CHECK(split("1, 2,3", ',').size() == 3);
  CHECK(parse_bitstring("1100", 4) == 3u);
  CHECK_THROWS_AS(parse_bitstring("110", 4), Error);
  CHECK_THROWS_AS(parse_bitstring("11x0", 4), Error);
  auto rev = first_revival({0, 1, 2, 3, 4, 5, 6}, {1, 0.7, 0.2, 0.6, 0.95, 0.4, 0.99});
  REQUIRE(rev.has_value());
  CHECK(rev->t_min == 2);
  CHECK(rev->t_revival == 4);
  CHECK(rev->p_revival == 0.95);
  CHECK(!first_revival({0, 1}, {1, 0.9}).has_value());
  // a wiggle back above 0.5 on the way down is not a revival
  auto wig = first_revival({0, 1, 2, 3, 4, 5, 6, 7}, {1, 0.45, 0.55, 0.1, 0.3, 0.9, 0.2, 0.2});
  REQUIRE(wig.has_value());
  CHECK(wig->t_min == 3);
  CHECK(wig->t_revival == 5);
  CHECK(local_maxima({0, 1, 0, 2, 2, 1, 3}) == std::vector<int>{1, 3});
}

TEST_CASE("config builders") {
  auto c = RunConfig::from_string("[lattice]\ntype = plaquettes\nplaquettes = 0,0; 1,0; 0,1\n");
  CHECK(lattice_from_config(c)->n_plaquettes() == 3);
  auto bad = RunConfig::from_string("[lattice]\ntype = hexagon\n");
  CHECK_THROWS_AS(lattice_from_config(bad), Error);

  auto m = RunConfig::from_string("[model]\nsource = circuit\nflux = 0\n");
  auto p = model_from_config(m);
  CHECK(p.Omega == doctest::Approx(120));
  auto d = RunConfig::from_string("[model]\nOmega = 100\nmu = 7\n");
  CHECK(model_from_config(d).J == doctest::Approx(1.96));
  auto t = RunConfig::from_string("[model]\nsource = circuit\nE_J = 16537.5\nE_C = 300\n");
  CHECK(circuit_from_config(t).epsilon == doctest::Approx(6000));

  auto lat = lattice_from_config(RunConfig::from_string("[lattice]\nn = 2\n"));
  auto s = basis_from_config(lat, RunConfig::from_string("[protocol]\ncharges = 0,0.5,0,0,0.5,0\n"));
  CHECK(s->dim() == 3);
  CHECK_THROWS_AS(basis_from_config(lat, RunConfig::from_string("[protocol]\ncharges = 0,0\n")), Error);
  CHECK_THROWS_AS(basis_from_config(lat, RunConfig::from_string("[protocol]\ncharges = 3,0,0,0,0,0\n")), Error);
}

TEST_CASE("custom lattice files resolve next to the config") {
  auto dir = scratch("custom");
  std::ofstream(dir / "lat.json") << R"({"links": [
    {"x": 1, "y": 0, "orientation": "h"}, {"x": 1, "y": 2, "orientation": "h"},
    {"x": 0, "y": 1, "orientation": "v"}, {"x": 2, "y": 1, "orientation": "v"}],
    "plaquettes": [[0, 3, 1, 2]]})";
  std::ofstream(dir / "run.ini") << "[lattice]\ntype = custom\nfile = lat.json\n";
  auto c = RunConfig::from_file((dir / "run.ini").string());
  CHECK(lattice_from_config(c)->n_links() == 4);
}

TEST_CASE("protocol runs write manifests and data") {
  auto dir = scratch("runs");
  auto cfg = RunConfig::from_string(
      "[lattice]\nn = 2\n[model]\nJ = 1\n[protocol]\ncharges = 0,0.5,0,0,0.5,0\nJ_over_V = 0\n");
  RunOptions o;
  o.out_dir = (dir / "gs").string();
  auto m = run_protocol("groundstate", cfg, o);
  CHECK(m["results"]["V"] == 1.0);
  CHECK(m["results"]["J"] == 0.0);
  CHECK(fs::exists(dir / "gs" / "manifest.json"));
  std::string csv = slurp(dir / "gs" / "groundstate.csv");
  CHECK(csv.rfind("link,x,y,orientation,sz,flux,abs_flux\n", 0) == 0);

  // rerun from the echoed configuration
  RunConfig echo;
  for (auto& [k, v] : m["config"].items()) echo.set(k, v.get<std::string>());
  o.out_dir = (dir / "gs2").string();
  run_protocol("groundstate", echo, o);
  CHECK(slurp(dir / "gs2" / "groundstate.csv") == csv);

  CHECK_THROWS_AS(run_protocol("dance", cfg, o), Error);
  auto named = cfg;
  named.set("protocol.name", "sweep");
  CHECK_THROWS_AS(run_protocol("groundstate", named, o), Error);

  auto params = RunConfig::from_string("[protocol]\nflux_points = 0\n");
  o.out_dir = (dir / "params").string();
  CHECK_THROWS_AS(run_protocol("params", params, o), Error);
}

TEST_CASE("spectrum protocol groups levels") {
  auto dir = scratch("spectrum");
  auto cfg = RunConfig::from_string("[model]\nepsilon = 6000\nOmega = 100\nmu = 7\n");
  RunOptions o;
  o.out_dir = dir.string();
  o.dump_basis = true;
  auto m = run_protocol("spectrum", cfg, o);
  auto g = m["results"]["levels_per_excitation_number"];
  CHECK(g["0"] == 1);
  CHECK(g["1"] == 4);
  CHECK(g["2"] == 6);
  CHECK(g["3"] == 4);
  CHECK(g["4"] == 1);
  CHECK(m["results"]["ground_energy"].get<double>() == doctest::Approx(-12100));
  CHECK(fs::exists(dir / "basis.txt"));
}

TEST_CASE("error records") {
  auto dir = scratch("error");
  write_error(dir.string(), "validation", "config: model.x: unknown key");
  auto j = nlohmann::json::parse(slurp(dir / "error.json"));
  CHECK(j["status"] == "validation");
  CHECK(j["message"] == "config: model.x: unknown key");
}
