#include <doctest.h>

#include <set>

#include "hilbert.hpp"
#include "lattice.hpp"

using namespace qlink;

namespace {

// vertices at either end of a link, tail first (links point along +x or +y)
std::pair<int, int> tail_head(const Lattice& lat, int l) {
  const Link& k = lat.links[l];
  int dx = k.orientation == Orientation::horizontal ? 1 : 0;
  int dy = 1 - dx;
  return {*lat.find_vertex(k.x - dx, k.y - dy), *lat.find_vertex(k.x + dx, k.y + dy)};
}

void check_flux_gauss(const Lattice& lat) {
  for (State s = 0; s < (State{1} << lat.n_links()); ++s) {
    auto q = vertex_charges(lat, s);
    std::vector<double> inflow(lat.n_vertices(), 0.0);
    for (int l = 0; l < lat.n_links(); ++l) {
      double e = flux_sign(lat, l) * spin(s, l);
      auto [t, h] = tail_head(lat, l);
      inflow[h] += e;
      inflow[t] -= e;
    }
    for (int m = 0; m < lat.n_vertices(); ++m) REQUIRE(inflow[m] == doctest::Approx(vertex_sign(lat, m) * q[m]));
  }
}

}  // namespace

TEST_CASE("chain counts") {
  for (int n = 1; n <= 7; ++n) {
    auto lat = build_plaquette_chain(n);
    CHECK(lat.n_links() == 3 * n + 1);
    CHECK(lat.n_plaquettes() == n);
    CHECK(lat.n_vertices() == 2 * (n + 1));
    CHECK(lat.plaquette_bonds.size() == static_cast<std::size_t>(4 * n));
    CHECK(lat.opposite_bonds.size() == static_cast<std::size_t>(2 * n));
    CHECK(lat.shared_links().size() == static_cast<std::size_t>(n - 1));
    CHECK(lat.boundary_links().size() == static_cast<std::size_t>(2 * n + 2));
  }
  CHECK_THROWS_AS(build_plaquette_chain(8), Error);
  CHECK_THROWS_AS(build_plaquette_chain(0), Error);
}

TEST_CASE("two-plaquette chain layout") {
  auto lat = build_plaquette_chain(2);
  CHECK(lat.shared_links() == std::vector<int>{5});
  // 3-valent vertices carry one straight pair each
  CHECK(lat.vertex_bonds.size() == 2);
  for (const auto& v : lat.vertices) CHECK((v.links.size() == 2 || v.links.size() == 3));
  for (const auto& p : lat.plaquettes) {
    const Link& b = lat.links[p[0]];
    const Link& r = lat.links[p[1]];
    const Link& t = lat.links[p[2]];
    const Link& l = lat.links[p[3]];
    CHECK(b.orientation == Orientation::horizontal);
    CHECK(t.orientation == Orientation::horizontal);
    CHECK(t.y == b.y + 2);
    CHECK(r.x == b.x + 1);
    CHECK(l.x == b.x - 1);
  }
}

TEST_CASE("2x2 block") {
  auto lat = build_from_plaquettes({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(lat.n_links() == 12);
  CHECK(lat.n_vertices() == 9);
  int four = 0;
  for (const auto& v : lat.vertices) four += v.links.size() == 4;
  CHECK(four == 1);
  auto centre = *lat.find_vertex(2, 2);
  int through_centre = 0;
  for (auto [a, b] : lat.vertex_bonds) {
    auto& ls = lat.vertices[centre].links;
    through_centre += std::count(ls.begin(), ls.end(), a) && std::count(ls.begin(), ls.end(), b);
  }
  CHECK(through_centre == 2);
  CHECK(lat.vertex_bonds.size() == 6);
}

TEST_CASE("flux signs") {
  auto lat = build_plaquette_chain(2);
  for (int l = 0; l < lat.n_links(); ++l) {
    CHECK(std::abs(flux_sign(lat, l)) == 1);
    CHECK(flux_sign(lat, l) == flux_sign(lat, l));
  }
  // parallel horizontals of neighbouring plaquettes in one row
  CHECK(flux_sign(lat, lat.plaquettes[0][0]) == -flux_sign(lat, lat.plaquettes[1][0]));
  CHECK(flux_sign(lat, lat.plaquettes[0][2]) == -flux_sign(lat, lat.plaquettes[1][2]));

  // a circulating flux around any plaquette is a flippable spin pattern
  auto lat2 = build_from_plaquettes({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  for (const auto& p : lat2.plaquettes) {
    // counter-clockwise: +x on bottom, +y on right, -x on top, -y on left
    int e[4] = {1, 1, -1, -1};
    int sz[4];
    for (int k = 0; k < 4; ++k) sz[k] = e[k] * flux_sign(lat2, p[k]);
    CHECK(sz[0] == -sz[1]);
    CHECK(sz[1] == -sz[2]);
    CHECK(sz[2] == -sz[3]);
  }
}

TEST_CASE("spin Gauss law equals oriented flux divergence") {
  check_flux_gauss(build_plaquette_chain(1));
  check_flux_gauss(build_plaquette_chain(2));
  check_flux_gauss(build_from_plaquettes({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
}

TEST_CASE("qubit order starts with the first plaquette") {
  auto lat = build_plaquette_chain(1);
  CHECK(lat.qubit_order() == std::vector<int>{0, 3, 1, 2});
  auto lat2 = build_plaquette_chain(2);
  auto q = lat2.qubit_order();
  CHECK(q.size() == 7);
  CHECK(std::set<int>(q.begin(), q.end()).size() == 7);
}

TEST_CASE("custom lattices") {
  auto chain = build_plaquette_chain(2);
  auto copy = build_custom(chain.links, {}, chain.plaquettes);
  CHECK(copy.plaquette_bonds == chain.plaquette_bonds);
  CHECK(copy.vertex_bonds == chain.vertex_bonds);
  CHECK(copy.opposite_bonds == chain.opposite_bonds);

  auto with_vertices = build_custom(chain.links, chain.vertices, chain.plaquettes);
  CHECK(with_vertices.n_vertices() == chain.n_vertices());

  auto bad = chain.plaquettes;
  bad[0][1] = 42;
  CHECK_THROWS_AS(build_custom(chain.links, {}, bad), Error);

  auto links = chain.links;
  links[0].x += 1;  // midpoint on a vertex
  CHECK_THROWS_AS(build_custom(links, {}, chain.plaquettes), Error);

  links = chain.links;
  links.push_back(links[0]);
  CHECK_THROWS_AS(build_custom(links, {}, chain.plaquettes), Error);

  auto verts = chain.vertices;
  verts[0].links.push_back(6);
  CHECK_THROWS_AS(build_custom(chain.links, verts, chain.plaquettes), Error);
}

TEST_CASE("json round trip") {
  auto lat = build_from_plaquettes({{0, 0}, {1, 0}, {0, 1}});
  auto back = lattice_from_json(lattice_to_json(lat));
  CHECK(back.n_links() == lat.n_links());
  CHECK(back.plaquettes == lat.plaquettes);
  CHECK(back.vertex_bonds == lat.vertex_bonds);
  for (int l = 0; l < lat.n_links(); ++l) {
    CHECK(back.links[l].x == lat.links[l].x);
    CHECK(back.links[l].y == lat.links[l].y);
  }
  CHECK_THROWS_AS(lattice_from_json("{\"links\": 3}"), Error);
  CHECK_THROWS_AS(lattice_from_json("not json"), Error);
}
