#include <doctest.h>

#include <cmath>

#include "ensemble.hpp"
#include "hamiltonian.hpp"
#include "lattice.hpp"

using namespace qlink;

namespace {

SweepSpec two_plaquette_sweep(int records) {
  auto lat = std::make_shared<Lattice>(build_plaquette_chain(2));
  SweepSpec s;
  s.sector = enumerate_sector(lat, {0, 0.5, 0, 0, 0.5, 0});
  s.basis = s.sector;
  s.psi0 = basis_vector(*s.sector, 15);
  s.mag_link = 5;
  s.n_records = records;
  s.step.dt = 5e-4;
  s.step.richardson = false;
  return s;
}

}  // namespace

TEST_CASE("detuning samples") {
  auto a = sample_detunings(7, 15, 42);
  auto b = sample_detunings(7, 15, 42);
  CHECK(a == b);
  CHECK(a != sample_detunings(7, 15, 43));
  for (double x : a) CHECK(std::abs(x) <= 7.5);
  double mean = 0, sq = 0;
  const int n = 20000;
  for (int k = 0; k < n; ++k)
    for (double x : sample_detunings(1, 1.0, k)) {
      mean += x;
      sq += x * x;
    }
  CHECK(std::abs(mean / n) < 0.01);
  CHECK(sq / n == doctest::Approx(1.0 / 12).epsilon(0.03));
}

TEST_CASE("zero disorder reproduces the clean sweep") {
  auto spec = two_plaquette_sweep(6);
  auto clean = adiabatic_sweep(spec);
  auto r = run_disorder_sweep(spec, {0.0, 5, 1});
  for (std::size_t i = 0; i < clean.M.size(); ++i) {
    CHECK(r.mean_M[i] == clean.M[i]);
    CHECK(r.std_M[i] == 0.0);
  }
  CHECK(r.n == 5);
}

TEST_CASE("disorder runs are reproducible") {
  auto spec = two_plaquette_sweep(6);
  auto a = run_disorder_sweep(spec, {15.0, 20, 3});
  auto b = run_disorder_sweep(spec, {15.0, 20, 3});
  CHECK(a.mean_M == b.mean_M);
  CHECK(a.std_M == b.std_M);
  auto c = run_disorder_sweep(spec, {15.0, 20, 4});
  CHECK(a.mean_M != c.mean_M);
}

TEST_CASE("uniform detuning leaves sector dynamics unchanged") {
  auto spec = two_plaquette_sweep(6);
  auto clean = adiabatic_sweep(spec);
  spec.deps.assign(7, 3.7);
  auto shifted = adiabatic_sweep(spec);
  for (std::size_t i = 0; i < clean.M.size(); ++i) CHECK(shifted.M[i] == doctest::Approx(clean.M[i]).epsilon(1e-10));
}

TEST_CASE("standard error shrinks with more realizations") {
  auto spec = two_plaquette_sweep(3);
  auto small = run_disorder_sweep(spec, {15.0, 200, 1});
  auto large = run_disorder_sweep(spec, {15.0, 800, 1});
  int i = 2;
  double se_small = small.std_M[i] / std::sqrt(200.0);
  double se_large = large.std_M[i] / std::sqrt(800.0);
  // four times the samples halves the standard error
  CHECK(se_small / se_large == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("invalid disorder specs") {
  auto spec = two_plaquette_sweep(3);
  CHECK_THROWS_AS(run_disorder_sweep(spec, {-1.0, 5, 1}), Error);
  CHECK_THROWS_AS(run_disorder_sweep(spec, {1.0, 0, 1}), Error);
}
