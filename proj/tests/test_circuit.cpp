#include <doctest.h>

#include <cmath>
#include <numbers>

#include "circuit.hpp"

using namespace qlink;

TEST_CASE("transmon") {
  auto t = derive_transmon({16537.5, 300});
  CHECK(t.epsilon == doctest::Approx(6000).epsilon(1e-12));
  CHECK(t.U == 300);
  CHECK(t.transmon_regime);
  auto s = derive_transmon({8 * 250.0, 250.0});
  CHECK(s.epsilon == doctest::Approx(7 * 250.0));
  CHECK(!derive_transmon({15 * 300.0, 300}).transmon_regime);
  CHECK_THROWS_AS(derive_transmon({0, 300}), Error);
  CHECK_THROWS_AS(derive_transmon({100, -1}), Error);
}

TEST_CASE("coupler") {
  auto c = derive_coupling(6000, 300, {0.2, 0.16, 0.0, CouplerKind::vertex});
  CHECK(c.omega_like == doctest::Approx(120));
  CHECK(std::abs(c.mu) < 1e-9);
  auto h = derive_coupling(6000, 300, {0.2, 0.16, 0.5, CouplerKind::plaquette});
  CHECK(std::abs(h.omega_like) < 1e-12);
  CHECK(h.mu == doctest::Approx(-3000 * 0.16));
  // independent evaluation of the flux-tuned junction
  for (double f : {0.1, 0.23, 0.4}) {
    double e = 0.25 * std::cos(std::numbers::pi * f);
    auto r = derive_coupling(6000, 300, {0.25, 0.2, f, CouplerKind::vertex});
    CHECK(r.omega_like == doctest::Approx(600 * e));
    CHECK(r.mu == doctest::Approx(3000 * (e - 0.2) - 600 * e));
    auto m = derive_coupling(6000, 300, {0.25, 0.2, -f, CouplerKind::vertex});
    CHECK(m.mu == doctest::Approx(r.mu));
  }
}

TEST_CASE("effective couplings") {
  ModelParams p;
  p.Omega = 100;
  p.mu_sq = 7;
  p.Vprime = 0.5;
  p = derive_effective(p);
  CHECK(p.J == doctest::Approx(1.96));
  CHECK(p.V == doctest::Approx(0.5 - 1.96));
  CHECK(p.perturbative);
  CHECK(std::sqrt(p.J * p.Omega) / 2 == doctest::Approx(7));
  p.mu_sq = 0;
  p = derive_effective(p);
  CHECK(p.J == 0);
  CHECK(p.V == 0.5);
  p.mu_sq = 60;
  CHECK(!derive_effective(p).perturbative);
  p.Omega = 0;
  CHECK_THROWS_AS(derive_effective(p), Error);
}

TEST_CASE("tuning curves") {
  CircuitSet dotted;
  auto z = compile_circuit(dotted, 0.0);
  CHECK(z.Omega == doctest::Approx(120));
  CHECK(std::abs(z.mu_plus) < 1e-9);
  CHECK(std::abs(z.J) < 1e-9);
  CHECK(std::abs(z.V) < 1e-9);

  CircuitSet dashed;
  dashed.vertex = {0.25, 0.20, 0.0, CouplerKind::vertex};
  auto d = compile_circuit(dashed, 0.0);
  CHECK(d.Omega == doctest::Approx(150));
  CHECK(d.V == doctest::Approx(30));
  CHECK(std::abs(d.J) < 1e-9);

  auto x = v_zero_crossing(dashed);
  REQUIRE(x.has_value());
  CHECK(*x > 0.10);
  CHECK(*x < 0.16);
  auto at = compile_circuit(dashed, *x);
  CHECK(std::abs(at.V) < 1e-8);
  CHECK(at.J > 1.0);

  for (const auto* set : {&dotted, &dashed}) {
    std::vector<double> grid;
    for (int i = 0; i <= 45; ++i) grid.push_back(0.01 * i);
    auto rows = tuning_curve(*set, grid);
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(std::abs(rows[i].mu_over_Omega) >= std::abs(rows[i - 1].mu_over_Omega));
  }
  CHECK_THROWS_AS(tuning_curve(dotted, {0.6}), Error);
  CHECK(tuning_curve(dotted, {}).empty());
}

TEST_CASE("resonator couplings") {
  auto r0 = derive_rk_couplings(6000, 300, 0.2, 0.0, 1.0, 500, 5, 100);
  CHECK(r0.resonator.beta_prime == 0);
  CHECK(r0.resonator.eta == 0);
  CHECK(r0.J == doctest::Approx(-4 * 25 / 100.0));
  auto r1 = derive_rk_couplings(6000, 300, 0.2, 0.5, 1.0, 500, 5, 100);
  CHECK(r1.resonator.beta_prime == doctest::Approx(2 * 300 * 0.2));
  CHECK(r1.V <= 0);
  double eta = 3000 * 0.2 - 120;
  CHECK(r1.J == doctest::Approx(-4 * 25 / 100.0 - 4 * eta * eta / (100 - 500)));
  auto rm = derive_rk_couplings(6000, 300, 0.2, -0.3, 1.0, 500, 5, 100);
  auto rp = derive_rk_couplings(6000, 300, 0.2, 0.3, 1.0, 500, 5, 100);
  CHECK(std::abs(rm.resonator.beta_prime) == doctest::Approx(std::abs(rp.resonator.beta_prime)));
  auto half = derive_rk_couplings(6000, 300, 0.2, 0.5, 0.5, 500, 5, 100);
  CHECK(half.resonator.beta_prime == doctest::Approx(0.5 * r1.resonator.beta_prime));
  CHECK_THROWS_AS(derive_rk_couplings(6000, 300, 0.2, 0.5, 1.0, 100, 5, 100), Error);
  CHECK_THROWS_AS(derive_rk_couplings(6000, 300, 0.2, 0.5, 0.0, 500, 5, 100), Error);
}
