#pragma once

#include <vector>

#include "circuit.hpp"
#include "hilbert.hpp"

namespace qlink {

// Per-link detunings delta_eps (MHz); empty means none.
using Detunings = std::vector<double>;

// eps sum S^z - Omega sum_vertex S^zS^z - Omega' sum_plaq S^zS^z
//   - mu_sq sum_plaq (S+S- + h.c.) - mu_plus sum_vertex (S+S- + h.c.)
SparseOperator build_microscopic(BasisPtr basis, const ModelParams& p, const Detunings& deps = {});

// eps sum S^z + V sum_plaq S^zS^z - J sum_box (U + U^dag) + W sum_box S^zS^zS^zS^z
SparseOperator build_effective(BasisPtr basis, double J, double V, double W = 0.0, double epsilon = 0.0,
                               const Detunings& deps = {});

// -J sum_box (B - lambda B^2), B = U + U^dag
SparseOperator build_rk_effective(BasisPtr basis, double J, double lambda);

// Resonator (n_max + 1 Fock levels) tensored with the spin basis; index = n * dim + i.
SparseOperator build_rk_microscopic(BasisPtr basis, const ModelParams& p, int n_max);

struct Drive {
  double omega_d = 0.0;
  std::vector<double> amplitude;  // per link, MHz
};

// Frame rotating at omega_d: eps -> eps - omega_d, plus sum_l Omega_l^d (S+_l + S-_l).
SparseOperator build_rotating_frame(BasisPtr basis, const ModelParams& p, const Drive& drive,
                                    const Detunings& deps = {});

// Pieces of the effective model, for time-dependent couplings:
// H(t) = J(t) * ring + V(t) * ising + diag.
struct EffectiveTerms {
  SpMat ring;   // -sum (U + U^dag)
  SpMat ising;  // sum_plaq S^zS^z
  SpMat zeeman; // sum_l (eps + delta_eps_l) S^z_l
};

EffectiveTerms effective_terms(const SectorBasis& basis, double epsilon = 0.0, const Detunings& deps = {});

// sum_l c_l S^z_l as a diagonal operator.
SpMat zeeman(const SectorBasis& basis, const std::vector<double>& coeff);

bool flippable(const SectorBasis& basis, State s, int plaquette);

std::string export_operator(const SparseOperator& op);

}  // namespace qlink
