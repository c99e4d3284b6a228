#pragma once

#include <optional>
#include <string>
#include <vector>

#include "types.hpp"

namespace qlink {

// All energies in MHz (ordinary frequency); times in microseconds.

struct TransmonSpec {
  double E_J = 0.0;
  double E_C = 0.0;
};

struct TransmonResult {
  double epsilon = 0.0;
  double U = 0.0;
  bool transmon_regime = true;  // E_J / E_C >= 20
};

TransmonResult derive_transmon(const TransmonSpec& spec);

enum class CouplerKind { vertex, plaquette };

struct CouplerSpec {
  double E_JQ_ratio = 0.0;  // E_JQ / E_J at zero flux
  double C_ratio = 0.0;     // C_Q / C
  double flux = 0.0;        // phi_ext / Phi_0
  CouplerKind kind = CouplerKind::vertex;
};

struct CouplingResult {
  double mu = 0.0;
  double omega_like = 0.0;  // Omega for a vertex coupler, Omega' for a plaquette coupler
};

CouplingResult derive_coupling(double epsilon, double U, const CouplerSpec& coupler);

struct Resonator {
  double omega = 0.0;
  double beta_prime = 0.0;
  double eta = 0.0;
  double alpha = 1.0;
};

struct ModelParams {
  double epsilon = 0.0;
  double U = 0.0;
  double mu_sq = 0.0;
  double mu_plus = 0.0;
  double Omega = 0.0;
  double Omega_prime = 0.0;
  double Vprime = 0.0;
  double J = 0.0;
  double V = 0.0;
  std::optional<double> W;
  std::optional<Resonator> resonator;
  bool perturbative = true;
};

// J = 4 mu^2 / Omega, V = V' - J.
ModelParams derive_effective(ModelParams mp);

struct CircuitSet {
  double epsilon = 6000.0;
  double U = 300.0;
  CouplerSpec vertex{0.2, 0.16, 0.0, CouplerKind::vertex};
  CouplerSpec plaquette{0.2, 0.16, 0.0, CouplerKind::plaquette};
};

// Vertex coupler fixed, plaquette coupler threaded by the given flux.
ModelParams compile_circuit(const CircuitSet& set, double flux);

struct TuningRow {
  double flux = 0.0;
  double mu_over_Omega = 0.0;
  double J_over_Omega = 0.0;
  double V_over_Omega = 0.0;
  double J_over_V = 0.0;
  double Omega = 0.0;
  double mu_plus = 0.0;
  double J = 0.0;
  double V = 0.0;
};

std::vector<TuningRow> tuning_curve(const CircuitSet& set, const std::vector<double>& flux_grid);

// Flux in [lo, hi] where V changes sign, refined by bisection.
std::optional<double> v_zero_crossing(const CircuitSet& set, double lo = 0.0, double hi = 0.45);

struct RKCouplings {
  Resonator resonator;
  double J = 0.0;
  double V = 0.0;
};

RKCouplings derive_rk_couplings(double epsilon, double U, double E_Jsq_ratio, double flux, double alpha,
                                double omega, double mu, double Omega);

}  // namespace qlink
