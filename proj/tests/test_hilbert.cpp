#include <doctest.h>

#include <bit>
#include <map>
#include <random>

#include "hilbert.hpp"
#include "lattice.hpp"

using namespace qlink;

namespace {

LatticePtr chain(int n) { return std::make_shared<Lattice>(build_plaquette_chain(n)); }

State bits(std::initializer_list<int> up) {
  State s = 0;
  for (int l : up) s |= State{1} << l;
  return s;
}

const std::vector<double> two_chain_charges = {0, 0.5, 0, 0, 0.5, 0};

}  // namespace

TEST_CASE("single plaquette neutral sector") {
  auto lat = chain(1);
  auto b = enumerate_sector(lat, std::vector<double>(4, 0.0));
  REQUIRE(b->dim() == 2);
  // cyclic order b r t l = 0 3 1 2: up-down-up-down means links 0 and 1 up
  CHECK(b->states[0] == bits({0, 1}));
  CHECK(b->states[1] == bits({2, 3}));

  // brute force
  int count = 0;
  for (State s = 0; s < 16; ++s) {
    bool ok = true;
    for (double q : vertex_charges(*lat, s)) ok &= q == 0.0;
    count += ok;
  }
  CHECK(count == 2);
}

TEST_CASE("full bases") {
  CHECK(full_basis(chain(2))->dim() == 128);
  CHECK(full_basis(chain(2))->full());
  auto b = full_basis(chain(1));
  for (int i = 0; i < b->dim(); ++i) CHECK(*b->index(b->states[i]) == i);
}

TEST_CASE("two-plaquette string sector") {
  auto lat = chain(2);
  auto b = enumerate_sector(lat, two_chain_charges);
  REQUIRE(b->dim() == 3);
  CHECK(b->states[0] == 15);  // |a>: all horizontal links up
  for (State s : b->states) {
    auto q = vertex_charges(*lat, s);
    for (int m = 0; m < lat->n_vertices(); ++m) CHECK(q[m] == two_chain_charges[m]);
  }
  CHECK(std::is_sorted(b->states.begin(), b->states.end()));
  CHECK(!b->index(0).has_value());
}

TEST_CASE("infeasible charges") {
  std::string warning;
  auto b = enumerate_sector(chain(1), {2, 0, 0, 0}, &warning);
  CHECK(b->dim() == 0);
  CHECK(!warning.empty());
  CHECK_THROWS_AS(enumerate_sector(chain(1), {0, 0}), Error);
}

TEST_CASE("sector dimensions add up to magnetization blocks") {
  for (int n : {1, 2, 3}) {
    auto lat = chain(n);
    std::map<std::vector<double>, std::map<int, int>> seen;
    for (State s = 0; s < (State{1} << lat->n_links()); ++s) seen[vertex_charges(*lat, s)][std::popcount(s)]++;
    std::map<int, int> total;
    for (const auto& [q, counts] : seen) {
      auto b = enumerate_sector(lat, q);
      int sum = 0;
      for (auto [k, c] : counts) {
        sum += c;
        total[k] += c;
      }
      CHECK(b->dim() == sum);
    }
    int N = lat->n_links();
    for (auto [k, c] : total) {
      long long binom = 1;
      for (int i = 0; i < k; ++i) binom = binom * (N - i) / (i + 1);
      CHECK(c == binom);
    }
  }
}

TEST_CASE("spin algebra") {
  auto b = full_basis(chain(1));
  for (int l = 0; l < 4; ++l) {
    SpMat sp = op_splus(b, l).mat, sm = op_sminus(b, l).mat, sz = op_sz(b, l).mat;
    CHECK(max_abs(sp * sp) == 0.0);
    SpMat comm = sp * sm - sm * sp;
    CHECK(max_abs(comm - 2.0 * sz) <= 1e-12);
    CHECK(max_abs(SpMat(sp.adjoint()) - sm) == 0.0);
    CHECK(op_sz(b, l).hermitian);
  }
  Vec up = basis_vector(*b, bits({0}));
  Vec down = basis_vector(*b, 0);
  CHECK(std::abs(up.dot(op_sz(b, 0).mat * up) - 0.5) < 1e-15);
  CHECK((op_splus(b, 0).mat * down - up).norm() == 0.0);
  CHECK((op_splus(b, 0).mat * up).norm() == 0.0);
  CHECK_THROWS_AS(op_sz(b, 4), Error);
}

TEST_CASE("sector operators annihilate leaving states") {
  auto b = enumerate_sector(chain(1), std::vector<double>(4, 0.0));
  CHECK(op_splus(b, 0).mat.nonZeros() == 0);
  CHECK(op_sz(b, 0).mat.nonZeros() == 2);
}

TEST_CASE("Gauss generators") {
  auto lat = chain(1);
  auto full = full_basis(lat);
  Vec flippable = basis_vector(*full, bits({0, 1}));
  Vec down = basis_vector(*full, 0);
  for (int m = 0; m < 4; ++m) {
    SpMat G = gauss_generator(full, m).mat;
    CHECK(std::abs(flippable.dot(G * flippable)) < 1e-15);
    CHECK(std::abs(down.dot(G * down) + 1.0) < 1e-15);
  }
  auto lat2 = chain(2);
  auto s = enumerate_sector(lat2, two_chain_charges);
  for (int m = 0; m < lat2->n_vertices(); ++m) {
    SpMat G = gauss_generator(s, m).mat;
    SpMat I(s->dim(), s->dim());
    I.setIdentity();
    CHECK(max_abs(G - two_chain_charges[m] * I) == 0.0);
  }
}

TEST_CASE("embed and project") {
  auto lat = chain(2);
  auto s = enumerate_sector(lat, two_chain_charges);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Vec psi(s->dim());
  for (int i = 0; i < psi.size(); ++i) psi(i) = cplx(g(rng), g(rng));
  Vec full = embed(*s, psi);
  CHECK(full.size() == 128);
  CHECK((project(*s, full) - psi).norm() == 0.0);
  CHECK((embed(*s, project(*s, full)) - full).norm() == 0.0);
  Mat rho = psi * psi.adjoint();
  Mat R = embed(*s, rho);
  CHECK(std::abs(R.trace() - rho.trace()) < 1e-12);
}

TEST_CASE("hermiticity bookkeeping") {
  auto b = full_basis(chain(1));
  SpMat a = op_splus(b, 0).mat;
  CHECK(!make_operator(b, a).hermitian);
  CHECK(make_operator(b, SpMat(a + SpMat(a.adjoint()))).hermitian);
  CHECK(hermiticity_defect(a) == 1.0);
}

TEST_CASE("bitstrings and dumps") {
  CHECK(bitstring(bits({0, 2}), 4) == "1010");
  auto s = enumerate_sector(chain(1), std::vector<double>(4, 0.0));
  CHECK(dump_basis(*s) == "1100\n0011\n");
}
