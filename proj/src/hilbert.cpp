#include "hilbert.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace qlink {

std::optional<int> SectorBasis::index(State s) const {
  auto it = std::lower_bound(states.begin(), states.end(), s);
  if (it == states.end() || *it != s) return std::nullopt;
  return static_cast<int>(it - states.begin());
}

BasisPtr full_basis(LatticePtr lattice) {
  int n = lattice->n_links();
  if (n > 24) fail(ErrorCode::capacity, "more than 24 links");
  auto b = std::make_shared<SectorBasis>();
  b->lattice = std::move(lattice);
  b->states.resize(std::size_t{1} << n);
  for (std::size_t s = 0; s < b->states.size(); ++s) b->states[s] = static_cast<State>(s);
  return b;
}

std::vector<double> vertex_charges(const Lattice& lattice, State s) {
  std::vector<double> q(lattice.vertices.size(), 0.0);
  for (std::size_t m = 0; m < q.size(); ++m)
    for (int l : lattice.vertices[m].links) q[m] += spin(s, l);
  return q;
}

BasisPtr enumerate_sector(LatticePtr lattice, const std::vector<double>& charges, std::string* warning) {
  const Lattice& lat = *lattice;
  int n = lat.n_links();
  if (n > 24) fail(ErrorCode::capacity, "more than 24 links");
  if (charges.size() != lat.vertices.size())
    fail(ErrorCode::invalid_argument, "charge assignment needs one entry per vertex");

  auto b = std::make_shared<SectorBasis>();
  b->lattice = lattice;
  b->charges = charges;

  // Work with twice the charge: 2*G_m = 2*(#up) - valence.
  std::vector<int> target(charges.size());
  bool feasible = true;
  for (std::size_t m = 0; m < charges.size(); ++m) {
    double t = 2.0 * charges[m];
    int k = static_cast<int>(lat.vertices[m].links.size());
    target[m] = static_cast<int>(std::lround(t));
    if (std::abs(t - target[m]) > 1e-9 || std::abs(target[m]) > k || (target[m] + k) % 2 != 0)
      feasible = false;
  }
  if (!feasible) {
    if (warning) *warning = "infeasible charge assignment; sector is empty";
    return b;
  }
  std::vector<State> masks;
  for (const auto& v : lat.vertices) {
    State mask = 0;
    for (int l : v.links) mask |= State{1} << l;
    masks.push_back(mask);
  }
  const State end = State{1} << n;
  for (State s = 0; s < end; ++s) {
    bool ok = true;
    for (std::size_t m = 0; m < masks.size() && ok; ++m) {
      int up = std::popcount(s & masks[m]);
      ok = 2 * up - static_cast<int>(lat.vertices[m].links.size()) == target[m];
    }
    if (ok) b->states.push_back(s);
  }
  if (b->states.empty() && warning) *warning = "no state satisfies the charge assignment";
  return b;
}

double max_abs(const SpMat& m) {
  double r = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

double hermiticity_defect(const SpMat& m) {
  SpMat d = m - SpMat(m.adjoint());
  return max_abs(d);
}

SparseOperator make_operator(BasisPtr basis, SpMat mat, double tol) {
  mat.makeCompressed();
  SparseOperator op;
  op.basis = std::move(basis);
  op.hermitian = hermiticity_defect(mat) <= tol;
  op.mat = std::move(mat);
  return op;
}

namespace {

void check_link(const SectorBasis& b, int link) {
  if (link < 0 || link >= b.lattice->n_links()) fail(ErrorCode::invalid_argument, "unknown link");
}

SparseOperator flip_op(BasisPtr basis, int link, bool raise) {
  check_link(*basis, link);
  std::vector<Triplet> t;
  const State bit = State{1} << link;
  for (int i = 0; i < basis->dim(); ++i) {
    State s = basis->states[i];
    bool up = s & bit;
    if (up == raise) continue;
    if (auto j = basis->index(s ^ bit)) t.emplace_back(*j, i, 1.0);
  }
  SpMat m(basis->dim(), basis->dim());
  m.setFromTriplets(t.begin(), t.end());
  return make_operator(std::move(basis), std::move(m));
}

}  // namespace

SparseOperator op_sz(BasisPtr basis, int link) {
  check_link(*basis, link);
  std::vector<Triplet> t;
  for (int i = 0; i < basis->dim(); ++i) t.emplace_back(i, i, spin(basis->states[i], link));
  SpMat m(basis->dim(), basis->dim());
  m.setFromTriplets(t.begin(), t.end());
  return make_operator(std::move(basis), std::move(m));
}

SparseOperator op_splus(BasisPtr basis, int link) { return flip_op(std::move(basis), link, true); }
SparseOperator op_sminus(BasisPtr basis, int link) { return flip_op(std::move(basis), link, false); }

SparseOperator gauss_generator(BasisPtr basis, int vertex) {
  if (vertex < 0 || vertex >= basis->lattice->n_vertices()) fail(ErrorCode::invalid_argument, "unknown vertex");
  SpMat m(basis->dim(), basis->dim());
  for (int l : basis->lattice->vertices[vertex].links) m += op_sz(basis, l).mat;
  return make_operator(std::move(basis), std::move(m));
}

Vec embed(const SectorBasis& sector, const Vec& psi) {
  Vec out = Vec::Zero(std::size_t{1} << sector.lattice->n_links());
  for (int i = 0; i < sector.dim(); ++i) out(sector.states[i]) = psi(i);
  return out;
}

Vec project(const SectorBasis& sector, const Vec& full_psi) {
  Vec out(sector.dim());
  for (int i = 0; i < sector.dim(); ++i) out(i) = full_psi(sector.states[i]);
  return out;
}

Mat embed(const SectorBasis& sector, const Mat& rho) {
  const auto n = std::size_t{1} << sector.lattice->n_links();
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < sector.dim(); ++i)
    for (int j = 0; j < sector.dim(); ++j) out(sector.states[i], sector.states[j]) = rho(i, j);
  return out;
}

Vec basis_vector(const SectorBasis& basis, State s) {
  auto i = basis.index(s);
  if (!i) fail(ErrorCode::invalid_argument, "state not in basis");
  Vec v = Vec::Zero(basis.dim());
  v(*i) = 1.0;
  return v;
}

std::string bitstring(State s, int n_links) {
  std::string out(n_links, '0');
  for (int l = 0; l < n_links; ++l)
    if ((s >> l) & 1u) out[l] = '1';
  return out;
}

std::string dump_basis(const SectorBasis& basis) {
  std::ostringstream os;
  for (State s : basis.states) os << bitstring(s, basis.lattice->n_links()) << '\n';
  return os.str();
}

}  // namespace qlink
