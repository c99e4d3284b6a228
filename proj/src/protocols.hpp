#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "circuit.hpp"
#include "config.hpp"
#include "dynamics.hpp"
#include "hamiltonian.hpp"
#include "hilbert.hpp"

namespace qlink {

struct RunOptions {
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  int trajectories = 0;
  bool dump_basis = false;
  bool dump_operator = false;
};

const std::vector<std::string>& protocol_names();

// Runs one protocol, writes CSV files and manifest.json into the output
// directory, and returns the manifest.
nlohmann::json run_protocol(const std::string& command, const RunConfig& cfg, const RunOptions& opts);

// Machine-readable failure record (error.json).
void write_error(const std::string& out_dir, const std::string& status, const std::string& message);

LatticePtr lattice_from_config(const RunConfig& cfg);
ModelParams model_from_config(const RunConfig& cfg);
CircuitSet circuit_from_config(const RunConfig& cfg);
BasisPtr basis_from_config(const LatticePtr& lat, const RunConfig& cfg);
State parse_bitstring(const std::string& bits, int n_links);

// Steady-state spectroscopy over drive detunings omega_d - epsilon.
struct SpectroscopyPoint {
  double detuning = 0.0;
  std::vector<double> population;   // per link
  std::vector<double> correlation;  // per requested pair
  double residual = 0.0;
};

SpectroscopyPoint spectroscopy_point(const BasisPtr& basis, const ModelParams& p, const Drive& drive,
                                     const Jumps& jumps, double detuning,
                                     const std::vector<std::pair<int, int>>& pairs);
std::vector<SpectroscopyPoint> spectroscopy_scan(const BasisPtr& basis, const ModelParams& p, const Drive& drive,
                                                 double gamma, const std::vector<double>& detunings,
                                                 const std::vector<std::pair<int, int>>& pairs);

struct Revival {
  double t_min = 0.0;
  double p_min = 0.0;
  double t_revival = 0.0;
  double p_revival = 0.0;
};

// First dip of a return-probability signal below 1/2, then its maximum on (t_min, 3 t_min).
std::optional<Revival> first_revival(const std::vector<double>& t, const std::vector<double>& p);

// Local maxima of a sampled curve (strict on the left, non-strict on the right).
std::vector<int> local_maxima(const std::vector<double>& y);

}  // namespace qlink
