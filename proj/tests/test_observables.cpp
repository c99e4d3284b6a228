#include <doctest.h>

#include <random>

#include "hamiltonian.hpp"
#include "lattice.hpp"
#include "observables.hpp"

using namespace qlink;

namespace {

LatticePtr chain(int n) { return std::make_shared<Lattice>(build_plaquette_chain(n)); }

const std::vector<double> two_chain_charges = {0, 0.5, 0, 0, 0.5, 0};

Vec random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

}  // namespace

TEST_CASE("flux maps") {
  auto lat = chain(2);
  auto s = enumerate_sector(lat, two_chain_charges);
  auto a = flux_map(*s, basis_vector(*s, 15));
  CHECK(a.sz[5] == -0.5);
  for (int l = 0; l < 7; ++l) {
    CHECK(std::abs(a.flux[l]) == 0.5);
    CHECK(a.flux[l] == flux_sign(*lat, l) * a.sz[l]);
  }
  auto full = full_basis(lat);
  auto down = flux_map(*full, basis_vector(*full, 0));
  for (double x : down.sz) CHECK(x == -0.5);

  // vertex sums reproduce the charges for mixtures inside the sector
  Vec psi = random_state(s->dim(), 5);
  Mat rho = 0.3 * psi * psi.adjoint() + 0.7 * Mat(basis_vector(*s, 15) * basis_vector(*s, 15).adjoint());
  for (const auto& f : {flux_map(*s, psi), flux_map(*s, rho)}) {
    for (int m = 0; m < lat->n_vertices(); ++m) {
      double q = 0;
      for (int l : lat->vertices[m].links) q += f.sz[l];
      CHECK(q == doctest::Approx(two_chain_charges[m]).epsilon(1e-8));
    }
    for (double e : f.flux) CHECK(std::abs(e) <= 0.5);
  }
}

TEST_CASE("magnetization and populations") {
  auto lat = chain(1);
  auto b = full_basis(lat);
  auto q = lat->qubit_order();
  State s = (State{1} << q[0]) | (State{1} << q[2]);  // up down up down
  auto p = probabilities(basis_vector(*b, s));
  CHECK(excited_population(*b, p, q[0]) == 1.0);
  CHECK(excited_population(*b, p, q[1]) == 0.0);
  CHECK(pair_correlation(*b, p, q[0], q[2]) == 1.0);
  CHECK(pair_correlation(*b, p, q[0], q[3]) == 0.0);

  Eigen::VectorXd mixed = Eigen::VectorXd::Constant(16, 1.0 / 16);
  for (int l = 0; l < 4; ++l) {
    CHECK(excited_population(*b, mixed, l) == doctest::Approx(0.5));
    CHECK(magnetization(*b, mixed, l) == doctest::Approx(0.0));
  }
  CHECK(pair_correlation(*b, mixed, 0, 1) == doctest::Approx(0.25));

  Eigen::VectorXd r = probabilities(random_state(16, 9));
  for (int l = 0; l < 4; ++l) CHECK(excited_population(*b, r, l) == doctest::Approx(0.5 + magnetization(*b, r, l)));
  CHECK_THROWS_AS(magnetization(*b, r, 9), Error);
  CHECK_THROWS_AS(magnetization(*b, Eigen::VectorXd::Zero(3), 0), Error);
}

TEST_CASE("fidelity") {
  auto lat = chain(2);
  auto s = enumerate_sector(lat, two_chain_charges);
  auto full = full_basis(lat);
  Vec gs = random_state(3, 1);
  Mat rho = gs * gs.adjoint();
  CHECK(fidelity(rho, gs) == doctest::Approx(1.0));
  CHECK(fidelity(gs, gs) == doctest::Approx(1.0));
  Vec other = basis_vector(*s, s->states[1]);
  Vec orth = other - gs * gs.dot(other);
  orth /= orth.norm();
  CHECK(std::abs(fidelity(Mat(orth * orth.adjoint()), gs)) < 1e-14);

  Vec psi = random_state(3, 2);
  Mat mix = 0.5 * psi * psi.adjoint() + 0.5 * rho;
  CHECK(fidelity(embed(*s, mix), embed(*s, gs)) == doctest::Approx(fidelity(mix, gs)).epsilon(1e-10));

  auto d = error_probability({1.0, 0.9}, {0.95, 0.8});
  CHECK(d[0] == doctest::Approx(0.05));
  CHECK(d[1] == doctest::Approx(0.1));
  CHECK_THROWS_AS(error_probability({1.0}, {1.0, 2.0}), Error);
}

TEST_CASE("Gauss violation") {
  auto lat = chain(1);
  auto b = full_basis(lat);
  auto s = enumerate_sector(lat, std::vector<double>(4, 0.0));
  for (State x : s->states)
    for (double g : gauss_violation(*b, probabilities(basis_vector(*b, x)), std::vector<double>(4, 0.0))) CHECK(g == 0.0);
  for (double g : gauss_violation(*b, probabilities(basis_vector(*b, 15)), std::vector<double>(4, 0.0))) CHECK(g == 1.0);
}

TEST_CASE("mean flux over link sets") {
  FluxMap f{{0.5, -0.25, 0.1}, {0.5, 0.25, -0.1}};
  CHECK(mean_abs_flux(f, {0, 1, 2}) == doctest::Approx(0.85 / 3));
  CHECK(mean_abs_flux(f, {1}) == doctest::Approx(0.25));
}
