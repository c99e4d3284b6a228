#include "observables.hpp"

#include <cmath>

namespace qlink {

Eigen::VectorXd probabilities(const Vec& psi) { return psi.cwiseAbs2(); }

Eigen::VectorXd probabilities(const Mat& rho) { return rho.diagonal().real(); }

namespace {

void check(const SectorBasis& basis, const Eigen::VectorXd& p) {
  if (p.size() != basis.dim()) fail(ErrorCode::invalid_argument, "state does not match basis");
}

void check_link(const SectorBasis& basis, int l) {
  if (l < 0 || l >= basis.lattice->n_links()) fail(ErrorCode::invalid_argument, "unknown link");
}

}  // namespace

FluxMap flux_map(const SectorBasis& basis, const Eigen::VectorXd& probs) {
  check(basis, probs);
  const int n = basis.lattice->n_links();
  FluxMap f;
  f.sz.assign(n, 0.0);
  for (int i = 0; i < basis.dim(); ++i)
    for (int l = 0; l < n; ++l) f.sz[l] += probs(i) * spin(basis.states[i], l);
  for (int l = 0; l < n; ++l) f.flux.push_back(flux_sign(*basis.lattice, l) * f.sz[l]);
  return f;
}

FluxMap flux_map(const SectorBasis& basis, const Vec& psi) { return flux_map(basis, probabilities(psi)); }
FluxMap flux_map(const SectorBasis& basis, const Mat& rho) { return flux_map(basis, probabilities(rho)); }

double magnetization(const SectorBasis& basis, const Eigen::VectorXd& probs, int link) {
  check(basis, probs);
  check_link(basis, link);
  double m = 0.0;
  for (int i = 0; i < basis.dim(); ++i) m += probs(i) * spin(basis.states[i], link);
  return m;
}

double excited_population(const SectorBasis& basis, const Eigen::VectorXd& probs, int link) {
  return 0.5 * probs.sum() + magnetization(basis, probs, link);
}

double pair_correlation(const SectorBasis& basis, const Eigen::VectorXd& probs, int l1, int l2) {
  check(basis, probs);
  check_link(basis, l1);
  check_link(basis, l2);
  const State mask = (State{1} << l1) | (State{1} << l2);
  double c = 0.0;
  for (int i = 0; i < basis.dim(); ++i)
    if ((basis.states[i] & mask) == mask) c += probs(i);
  return c;
}

double fidelity(const Mat& rho, const Vec& g) { return std::abs(g.dot(rho * g)); }

double fidelity(const Vec& psi, const Vec& g) { return std::norm(g.dot(psi)); }

std::vector<double> error_probability(const std::vector<double>& p0, const std::vector<double>& p) {
  if (p0.size() != p.size()) fail(ErrorCode::invalid_argument, "fidelity series differ in length");
  std::vector<double> d(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) d[i] = p0[i] - p[i];
  return d;
}

std::vector<double> gauss_violation(const SectorBasis& basis, const Eigen::VectorXd& probs,
                                    const std::vector<double>& charges) {
  check(basis, probs);
  const Lattice& lat = *basis.lattice;
  if (static_cast<int>(charges.size()) != lat.n_vertices())
    fail(ErrorCode::invalid_argument, "charge assignment needs one entry per vertex");
  std::vector<double> v(lat.n_vertices(), 0.0);
  for (int i = 0; i < basis.dim(); ++i) {
    auto q = vertex_charges(lat, basis.states[i]);
    for (int m = 0; m < lat.n_vertices(); ++m) v[m] += probs(i) * (q[m] - charges[m]) * (q[m] - charges[m]);
  }
  return v;
}

double mean_abs_flux(const FluxMap& f, const std::vector<int>& links) {
  if (links.empty()) return 0.0;
  double s = 0.0;
  for (int l : links) s += std::abs(f.flux.at(l));
  return s / links.size();
}

}  // namespace qlink
