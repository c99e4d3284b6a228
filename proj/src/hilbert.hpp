#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "types.hpp"

namespace qlink {

using LatticePtr = std::shared_ptr<const Lattice>;

inline double spin(State s, int link) { return ((s >> link) & 1u) ? 0.5 : -0.5; }

struct SectorBasis {
  LatticePtr lattice;
  std::optional<std::vector<double>> charges;  // empty means the full space
  std::vector<State> states;                   // ascending

  int dim() const { return static_cast<int>(states.size()); }
  bool full() const { return !charges.has_value(); }
  std::optional<int> index(State s) const;
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

struct SparseOperator {
  BasisPtr basis;
  SpMat mat;
  bool hermitian = false;
  int dim() const { return static_cast<int>(mat.rows()); }
};

BasisPtr full_basis(LatticePtr lattice);

// Filtered enumeration over all 2^N states. An infeasible assignment yields an
// empty basis and a message in *warning.
BasisPtr enumerate_sector(LatticePtr lattice, const std::vector<double>& charges,
                          std::string* warning = nullptr);

// Spin Gauss charges sum_{l in m} s^z_l of a basis state, one per vertex.
std::vector<double> vertex_charges(const Lattice& lattice, State s);

SparseOperator op_sz(BasisPtr basis, int link);
SparseOperator op_splus(BasisPtr basis, int link);
SparseOperator op_sminus(BasisPtr basis, int link);
SparseOperator gauss_generator(BasisPtr basis, int vertex);

double max_abs(const SpMat& m);
double hermiticity_defect(const SpMat& m);
SparseOperator make_operator(BasisPtr basis, SpMat mat, double tol = 1e-12);

// Sector <-> full-space maps.
Vec embed(const SectorBasis& sector, const Vec& psi);
Vec project(const SectorBasis& sector, const Vec& full_psi);
Mat embed(const SectorBasis& sector, const Mat& rho);

Vec basis_vector(const SectorBasis& basis, State s);

std::string bitstring(State s, int n_links);
std::string dump_basis(const SectorBasis& basis);

}  // namespace qlink
