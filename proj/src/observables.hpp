#pragma once

#include <vector>

#include "hilbert.hpp"

namespace qlink {

struct FluxMap {
  std::vector<double> sz;    // <S^z_l>
  std::vector<double> flux;  // eta_l <S^z_l>
};

// Diagonal of the state in the computational basis.
Eigen::VectorXd probabilities(const Vec& psi);
Eigen::VectorXd probabilities(const Mat& rho);

FluxMap flux_map(const SectorBasis& basis, const Eigen::VectorXd& probs);
FluxMap flux_map(const SectorBasis& basis, const Vec& psi);
FluxMap flux_map(const SectorBasis& basis, const Mat& rho);

double magnetization(const SectorBasis& basis, const Eigen::VectorXd& probs, int link);

// sigma_ee(l) = 1/2 + S^z_l
double excited_population(const SectorBasis& basis, const Eigen::VectorXd& probs, int link);
double pair_correlation(const SectorBasis& basis, const Eigen::VectorXd& probs, int l1, int l2);

double fidelity(const Mat& rho, const Vec& psi_gs);
double fidelity(const Vec& psi, const Vec& psi_gs);
std::vector<double> error_probability(const std::vector<double>& without_decay,
                                      const std::vector<double>& with_decay);

// <(G_m - Q_m)^2> per vertex.
std::vector<double> gauss_violation(const SectorBasis& basis, const Eigen::VectorXd& probs,
                                    const std::vector<double>& charges);

// Mean |flux| over a set of links.
double mean_abs_flux(const FluxMap& f, const std::vector<int>& links);

}  // namespace qlink
