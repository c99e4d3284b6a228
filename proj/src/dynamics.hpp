#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hilbert.hpp"
#include "types.hpp"

namespace qlink {

// ---- eigensolver ----

struct GroundState {
  double energy = 0.0;
  Vec state;
  bool degenerate = false;
  double gap = 0.0;
  double residual = 0.0;
  bool iterative = false;
};

constexpr int dense_limit = 512;

GroundState ground_state(const SpMat& H);
GroundState lanczos_ground_state(const SpMat& H, int max_krylov = 250, int max_restarts = 40);

// Infinity-norm bound on the spectral radius.
double norm_bound(const SpMat& H);

// ---- time-dependent Hamiltonians ----

// H(t) = sum_k c_k(t) terms[k]; coefficients default to 1.
struct TDHamiltonian {
  std::vector<SpMat> terms;
  std::function<std::vector<double>(double)> coeffs;

  static TDHamiltonian constant(SpMat h);
  std::vector<double> coefficients(double t) const;
  SpMat at(double t) const;
  int dim() const { return static_cast<int>(terms.front().rows()); }
};

struct DecayModel {
  std::vector<double> gamma;  // per link, MHz

  static DecayModel uniform(int n_links, double g) { return {std::vector<double>(n_links, g)}; }
  bool any() const;
};

// Jump operators S^-_l with rates; building them on a sector basis is refused
// because decay leaves the sector.
struct Jumps {
  std::vector<SpMat> ops;
  std::vector<double> rates;
  Eigen::VectorXd loss;  // diagonal of sum_l rate_l S+_l S-_l
  std::vector<std::vector<int>> source;  // ops[k](i, source[k][i]) = 1, or -1 for an empty row
};

Jumps make_jumps(const SectorBasis& basis, const DecayModel& decay);

struct StepOptions {
  double dt = 1e-4;          // microseconds
  bool richardson = true;    // doubled-dt check at checkpoints
  int checkpoints = 10;      // positivity / Richardson checks per run
  double richardson_tol = 1e-6;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // one row per time
  std::vector<std::vector<double>> errors;  // standard errors, trajectory mode only
  Vec final_state;
  Mat final_rho;
  double max_trace_error = 0.0;
  double min_eigenvalue = 0.0;
  double max_norm_error = 0.0;
  double richardson_error = 0.0;
  std::vector<std::string> warnings;
};

using PureObserver = std::function<std::vector<double>(double, const Vec&)>;
using MixedObserver = std::function<std::vector<double>(double, const Mat&)>;

// Fourth-order commutator-free Magnus steps with Taylor-series exponentials.
EvolutionResult evolve_unitary(const TDHamiltonian& H, const Vec& psi0, const std::vector<double>& t_grid,
                               const StepOptions& opt, const PureObserver& observe);

// Classical RK4 on the master equation; 2*pi multiplies both H and the rates.
EvolutionResult evolve_lindblad(const TDHamiltonian& H, const Jumps& jumps, const Mat& rho0,
                                const std::vector<double>& t_grid, const StepOptions& opt,
                                const MixedObserver& observe);

// Monte Carlo wave functions; trajectory k uses seed base_seed + k.
EvolutionResult evolve_trajectories(const TDHamiltonian& H, const Jumps& jumps, const Vec& psi0,
                                    const std::vector<double>& t_grid, const StepOptions& opt,
                                    const PureObserver& observe, int n_traj, std::uint64_t base_seed);

constexpr int lindblad_dense_limit = 1024;
constexpr int trajectory_limit = 1 << 16;

// ---- steady states ----

struct SteadyState {
  Mat rho;
  double residual = 0.0;
};

SpMat liouvillian(const SpMat& H, const Jumps& jumps);
SteadyState steady_state(const SpMat& H_rot, const Jumps& jumps);

// ---- sweep protocol ----

struct Schedule {
  double J0 = 30.0;
  double V0 = 30.0;
  double v = 2.0;      // sweep phase is 2 pi v t
  double t_max = 0.125;

  double J(double t) const;
  double V(double t) const;
};

struct SweepSpec {
  BasisPtr basis;             // evolution basis (full when decaying)
  BasisPtr sector;            // Gauss sector for the instantaneous ground state
  Schedule schedule;
  DecayModel decay;           // empty or all zero: unitary
  std::vector<double> deps;   // per-link detunings
  Vec psi0;                   // in `basis`
  int mag_link = 0;
  int n_records = 41;
  StepOptions step;
};

struct SweepResult {
  std::vector<double> t;
  std::vector<double> J_over_V;
  std::vector<double> M;
  std::vector<double> fidelity;
  EvolutionResult raw;
};

SweepResult adiabatic_sweep(const SweepSpec& spec);

std::vector<double> linspace(double a, double b, int n);

}  // namespace qlink
