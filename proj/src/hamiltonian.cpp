#include "hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qlink {

namespace {

void check_deps(const SectorBasis& b, const Detunings& deps) {
  if (!deps.empty() && static_cast<int>(deps.size()) != b.lattice->n_links())
    fail(ErrorCode::invalid_argument, "detunings need one entry per link");
}

double zeeman_energy(const SectorBasis& b, State s, double eps, const Detunings& deps) {
  double e = 0.0;
  for (int l = 0; l < b.lattice->n_links(); ++l) e += (eps + (deps.empty() ? 0.0 : deps[l])) * spin(s, l);
  return e;
}

double bond_sum(const std::vector<Bond>& bonds, State s) {
  double e = 0.0;
  for (auto [a, c] : bonds) e += spin(s, a) * spin(s, c);
  return e;
}

// Pair hopping S+_a S-_c + h.c. with amplitude amp on each bond (weighted per bond).
void add_hops(const SectorBasis& b, const std::vector<Bond>& bonds, const std::vector<double>& amp,
              std::vector<Triplet>& t, int row_off = 0, int col_off = 0) {
  for (int i = 0; i < b.dim(); ++i) {
    State s = b.states[i];
    for (std::size_t k = 0; k < bonds.size(); ++k) {
      if (amp[k] == 0.0) continue;
      auto [a, c] = bonds[k];
      if (((s >> a) & 1u) == ((s >> c) & 1u)) continue;
      if (auto j = b.index(s ^ (State{1} << a) ^ (State{1} << c))) t.emplace_back(*j + row_off, i + col_off, amp[k]);
    }
  }
}

State plaquette_mask(const Lattice& lat, int p) {
  State m = 0;
  for (int l : lat.plaquettes[p]) m |= State{1} << l;
  return m;
}

SpMat from_triplets(int dim, std::vector<Triplet>& t) {
  SpMat m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

}  // namespace

bool flippable(const SectorBasis& basis, State s, int p) {
  const auto& q = basis.lattice->plaquettes.at(p);
  unsigned b0 = (s >> q[0]) & 1u, b1 = (s >> q[1]) & 1u, b2 = (s >> q[2]) & 1u, b3 = (s >> q[3]) & 1u;
  return b0 == b2 && b1 == b3 && b0 != b1;
}

SpMat zeeman(const SectorBasis& basis, const std::vector<double>& coeff) {
  std::vector<Triplet> t;
  for (int i = 0; i < basis.dim(); ++i) {
    double e = 0.0;
    for (std::size_t l = 0; l < coeff.size(); ++l) e += coeff[l] * spin(basis.states[i], static_cast<int>(l));
    t.emplace_back(i, i, e);
  }
  return from_triplets(basis.dim(), t);
}

SparseOperator build_microscopic(BasisPtr basis, const ModelParams& p, const Detunings& deps) {
  check_deps(*basis, deps);
  const Lattice& lat = *basis->lattice;
  std::vector<Triplet> t;
  for (int i = 0; i < basis->dim(); ++i) {
    State s = basis->states[i];
    double e = zeeman_energy(*basis, s, p.epsilon, deps) - p.Omega * bond_sum(lat.vertex_bonds, s) -
               p.Omega_prime * bond_sum(lat.plaquette_bonds, s);
    t.emplace_back(i, i, e);
  }
  add_hops(*basis, lat.plaquette_bonds, std::vector<double>(lat.plaquette_bonds.size(), -p.mu_sq), t);
  add_hops(*basis, lat.vertex_bonds, std::vector<double>(lat.vertex_bonds.size(), -p.mu_plus), t);
  return make_operator(basis, from_triplets(basis->dim(), t));
}

EffectiveTerms effective_terms(const SectorBasis& basis, double epsilon, const Detunings& deps) {
  check_deps(basis, deps);
  const Lattice& lat = *basis.lattice;
  std::vector<Triplet> ring, ising, zee;
  for (int i = 0; i < basis.dim(); ++i) {
    State s = basis.states[i];
    ising.emplace_back(i, i, bond_sum(lat.plaquette_bonds, s));
    zee.emplace_back(i, i, zeeman_energy(basis, s, epsilon, deps));
    for (int p = 0; p < lat.n_plaquettes(); ++p) {
      if (!flippable(basis, s, p)) continue;
      if (auto j = basis.index(s ^ plaquette_mask(lat, p))) ring.emplace_back(*j, i, -1.0);
    }
  }
  return {from_triplets(basis.dim(), ring), from_triplets(basis.dim(), ising), from_triplets(basis.dim(), zee)};
}

SparseOperator build_effective(BasisPtr basis, double J, double V, double W, double epsilon,
                               const Detunings& deps) {
  auto terms = effective_terms(*basis, epsilon, deps);
  SpMat h = J * terms.ring + V * terms.ising + terms.zeeman;
  if (W != 0.0) {
    const Lattice& lat = *basis->lattice;
    std::vector<Triplet> t;
    for (int i = 0; i < basis->dim(); ++i) {
      double e = 0.0;
      for (const auto& q : lat.plaquettes) {
        double prod = 1.0;
        for (int l : q) prod *= spin(basis->states[i], l);
        e += prod;
      }
      t.emplace_back(i, i, W * e);
    }
    h += from_triplets(basis->dim(), t);
  }
  return make_operator(basis, h);
}

SparseOperator build_rk_effective(BasisPtr basis, double J, double lambda) {
  const Lattice& lat = *basis->lattice;
  std::vector<Triplet> t;
  for (int i = 0; i < basis->dim(); ++i) {
    State s = basis->states[i];
    int nflip = 0;
    for (int p = 0; p < lat.n_plaquettes(); ++p) {
      if (!flippable(*basis, s, p)) continue;
      ++nflip;
      if (auto j = basis->index(s ^ plaquette_mask(lat, p))) t.emplace_back(*j, i, -J);
    }
    // B^2 is the flippability projector (only the U U^dag cross terms survive)
    if (nflip) t.emplace_back(i, i, J * lambda * nflip);
  }
  return make_operator(basis, from_triplets(basis->dim(), t));
}

SparseOperator build_rk_microscopic(BasisPtr basis, const ModelParams& p, int n_max) {
  if (n_max < 1) fail(ErrorCode::invalid_argument, "resonator truncation n_max must be >= 1");
  if (!p.resonator) fail(ErrorCode::invalid_argument, "rk_microscopic needs resonator parameters");
  const Resonator& r = *p.resonator;
  const Lattice& lat = *basis->lattice;
  const int d = basis->dim();
  const int levels = n_max + 1;

  std::vector<double> sigma;  // horizontal +1, vertical -1, by first link of each bond
  for (auto [a, c] : lat.plaquette_bonds)
    sigma.push_back(lat.links[a].orientation == Orientation::horizontal ? 1.0 : -1.0);

  std::vector<Triplet> spin_part, coupling;
  for (int i = 0; i < d; ++i) {
    State s = basis->states[i];
    double g2 = 0.0;
    for (const auto& v : lat.vertices) {
      double g = 0.0;
      for (int l : v.links) g += spin(s, l);
      g2 += g * g;
    }
    spin_part.emplace_back(i, i, zeeman_energy(*basis, s, p.epsilon, {}) - p.Omega * g2 +
                                     p.Vprime * bond_sum(lat.plaquette_bonds, s));
    double zz = 0.0;
    for (std::size_t k = 0; k < lat.plaquette_bonds.size(); ++k) {
      auto [a, c] = lat.plaquette_bonds[k];
      zz += sigma[k] * spin(s, a) * spin(s, c);
    }
    coupling.emplace_back(i, i, r.beta_prime * zz);
  }
  add_hops(*basis, lat.plaquette_bonds, std::vector<double>(sigma.size(), -p.mu_sq), spin_part);
  std::vector<double> eta_amp;
  for (double sg : sigma) eta_amp.push_back(-r.eta * sg);
  add_hops(*basis, lat.plaquette_bonds, eta_amp, coupling);

  std::vector<Triplet> t;
  for (int n = 0; n < levels; ++n) {
    for (int i = 0; i < d; ++i) t.emplace_back(n * d + i, n * d + i, r.omega * n);
    for (const auto& e : spin_part) t.emplace_back(n * d + e.row(), n * d + e.col(), e.value());
    if (n + 1 < levels) {
      double amp = std::sqrt(static_cast<double>(n + 1));
      for (const auto& e : coupling) {
        t.emplace_back((n + 1) * d + e.row(), n * d + e.col(), amp * e.value());
        t.emplace_back(n * d + e.row(), (n + 1) * d + e.col(), amp * e.value());
      }
    }
  }
  return make_operator(basis, from_triplets(levels * d, t));
}

SparseOperator build_rotating_frame(BasisPtr basis, const ModelParams& p, const Drive& drive,
                                    const Detunings& deps) {
  const int n = basis->lattice->n_links();
  if (!drive.amplitude.empty() && static_cast<int>(drive.amplitude.size()) != n)
    fail(ErrorCode::invalid_argument, "drive amplitudes need one entry per link");
  ModelParams q = p;
  q.epsilon = p.epsilon - drive.omega_d;
  SparseOperator h = build_microscopic(basis, q, deps);
  std::vector<Triplet> t;
  for (int l = 0; l < static_cast<int>(drive.amplitude.size()); ++l) {
    double a = drive.amplitude[l];
    if (a == 0.0) continue;
    const State bit = State{1} << l;
    for (int i = 0; i < basis->dim(); ++i)
      if (auto j = basis->index(basis->states[i] ^ bit)) t.emplace_back(*j, i, a);
  }
  SpMat d = from_triplets(basis->dim(), t);
  return make_operator(basis, h.mat + d);
}

std::string export_operator(const SparseOperator& op) {
  struct E {
    int r, c;
    cplx v;
  };
  std::vector<E> es;
  for (int k = 0; k < op.mat.outerSize(); ++k)
    for (SpMat::InnerIterator it(op.mat, k); it; ++it)
      if (it.value() != cplx(0.0)) es.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()});
  std::sort(es.begin(), es.end(), [](const E& a, const E& b) { return a.r != b.r ? a.r < b.r : a.c < b.c; });
  std::ostringstream os;
  os.precision(17);
  for (const auto& e : es) os << e.r << ' ' << e.c << ' ' << e.v.real() << ' ' << e.v.imag() << '\n';
  return os.str();
}

}  // namespace qlink
