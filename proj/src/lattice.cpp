#include "lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qlink {

namespace {

std::string where(const char* kind, std::size_t index) {
  std::ostringstream os;
  os << kind << ' ' << index;
  return os.str();
}

std::array<std::pair<int, int>, 2> endpoint_coords(const Link& l) {
  if (l.orientation == Orientation::horizontal) return {{{l.x - 1, l.y}, {l.x + 1, l.y}}};
  return {{{l.x, l.y - 1}, {l.x, l.y + 1}}};
}

std::vector<Vertex> derive_vertices(const std::vector<Link>& links) {
  // keyed by (y, x) so that vertices come out row by row
  std::map<std::pair<int, int>, std::vector<int>> inc;
  for (std::size_t i = 0; i < links.size(); ++i)
    for (auto [x, y] : endpoint_coords(links[i])) inc[{y, x}].push_back(static_cast<int>(i));
  std::vector<Vertex> out;
  for (auto& [yx, ls] : inc) {
    std::sort(ls.begin(), ls.end());
    out.push_back({yx.second, yx.first, ls});
  }
  return out;
}

void fill_bonds(Lattice& lat) {
  lat.plaquette_bonds.clear();
  lat.vertex_bonds.clear();
  lat.opposite_bonds.clear();
  for (const auto& p : lat.plaquettes) {
    for (int k = 0; k < 4; ++k) lat.plaquette_bonds.emplace_back(p[k], p[(k + 1) % 4]);
    lat.opposite_bonds.emplace_back(p[0], p[2]);
    lat.opposite_bonds.emplace_back(p[1], p[3]);
  }
  // Opposite pairs through a vertex: both the 4-valent crossings and the
  // straight-through pairs at 3-valent boundary vertices.
  for (const auto& v : lat.vertices) {
    std::vector<int> hs, vs;
    for (int l : v.links)
      (lat.links[l].orientation == Orientation::horizontal ? hs : vs).push_back(l);
    if (hs.size() == 2) lat.vertex_bonds.emplace_back(hs[0], hs[1]);
    if (vs.size() == 2) lat.vertex_bonds.emplace_back(vs[0], vs[1]);
  }
}

}  // namespace

std::optional<int> Lattice::find_link(int x, int y) const {
  for (std::size_t i = 0; i < links.size(); ++i)
    if (links[i].x == x && links[i].y == y) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Lattice::find_vertex(int x, int y) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].x == x && vertices[i].y == y) return static_cast<int>(i);
  return std::nullopt;
}

std::array<int, 2> Lattice::endpoints(int link) const {
  auto c = endpoint_coords(links.at(link));
  return {*find_vertex(c[0].first, c[0].second), *find_vertex(c[1].first, c[1].second)};
}

std::vector<int> Lattice::shared_links() const {
  std::vector<int> count(links.size(), 0), out;
  for (const auto& p : plaquettes)
    for (int l : p) ++count[l];
  for (std::size_t l = 0; l < links.size(); ++l)
    if (count[l] > 1) out.push_back(static_cast<int>(l));
  return out;
}

std::vector<int> Lattice::boundary_links() const {
  std::vector<int> count(links.size(), 0), out;
  for (const auto& p : plaquettes)
    for (int l : p) ++count[l];
  for (std::size_t l = 0; l < links.size(); ++l)
    if (count[l] == 1) out.push_back(static_cast<int>(l));
  return out;
}

std::vector<int> Lattice::qubit_order() const {
  std::vector<int> out;
  if (!plaquettes.empty()) out.assign(plaquettes[0].begin(), plaquettes[0].end());
  for (int l = 0; l < n_links(); ++l)
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  return out;
}

Lattice build_custom(const std::vector<Link>& links, const std::vector<Vertex>& vertices,
                     const std::vector<std::array<int, 4>>& plaquettes) {
  if (links.empty()) fail(ErrorCode::validation, "lattice has no links");
  if (links.size() > 24) fail(ErrorCode::capacity, "lattice has more than 24 links");
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    bool odd_x = (l.x % 2) != 0, odd_y = (l.y % 2) != 0;
    bool ok = l.orientation == Orientation::horizontal ? (odd_x && !odd_y) : (!odd_x && odd_y);
    if (!ok) fail(ErrorCode::validation, where("link", i) + ": midpoint parity does not match orientation");
    if (!seen.insert({l.x, l.y}).second) fail(ErrorCode::validation, where("link", i) + ": duplicate coordinates");
  }

  Lattice lat;
  lat.links = links;
  lat.vertices = derive_vertices(links);
  if (!vertices.empty()) {
    if (vertices.size() != lat.vertices.size())
      fail(ErrorCode::validation, "vertex count does not match link endpoints");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      auto id = lat.find_vertex(vertices[i].x, vertices[i].y);
      if (!id) fail(ErrorCode::validation, where("vertex", i) + ": not an endpoint of any link");
      auto given = vertices[i].links;
      std::sort(given.begin(), given.end());
      if (given != lat.vertices[*id].links)
        fail(ErrorCode::validation, where("vertex", i) + ": incidence does not match link endpoints");
    }
  }

  std::vector<int> used(links.size(), 0);
  for (std::size_t p = 0; p < plaquettes.size(); ++p) {
    const auto& q = plaquettes[p];
    for (int l : q)
      if (l < 0 || l >= static_cast<int>(links.size()))
        fail(ErrorCode::validation, where("plaquette", p) + ": unknown link id " + std::to_string(l));
    std::set<int> distinct(q.begin(), q.end());
    if (distinct.size() != 4) fail(ErrorCode::validation, where("plaquette", p) + ": links not distinct");
    const Link& b = links[q[0]];
    const Link expect[4] = {{b.x, b.y, Orientation::horizontal},
                            {b.x + 1, b.y + 1, Orientation::vertical},
                            {b.x, b.y + 2, Orientation::horizontal},
                            {b.x - 1, b.y + 1, Orientation::vertical}};
    for (int k = 0; k < 4; ++k) {
      const Link& l = links[q[k]];
      if (l.x != expect[k].x || l.y != expect[k].y || l.orientation != expect[k].orientation)
        fail(ErrorCode::validation,
             where("plaquette", p) + ": links are not a (bottom, right, top, left) square");
    }
    for (int l : q) ++used[l];
  }
  for (std::size_t l = 0; l < links.size(); ++l)
    if (!used[l]) fail(ErrorCode::validation, where("link", l) + ": not part of any plaquette");

  lat.plaquettes = plaquettes;
  fill_bonds(lat);
  return lat;
}

Lattice build_from_plaquettes(const std::vector<std::pair<int, int>>& corners) {
  if (corners.empty()) fail(ErrorCode::invalid_argument, "no plaquettes");
  std::vector<Link> links;
  auto add = [&](int x, int y, Orientation o) {
    for (std::size_t i = 0; i < links.size(); ++i)
      if (links[i].x == x && links[i].y == y) return static_cast<int>(i);
    links.push_back({x, y, o});
    return static_cast<int>(links.size() - 1);
  };
  // horizontals first, then verticals, each row by row
  std::set<std::tuple<int, int, int>> keys;  // (orient, y, x)
  for (auto [x, y] : corners) {
    keys.insert({0, 2 * y, 2 * x + 1});
    keys.insert({0, 2 * y + 2, 2 * x + 1});
    keys.insert({1, 2 * y + 1, 2 * x});
    keys.insert({1, 2 * y + 1, 2 * x + 2});
  }
  for (auto [o, y, x] : keys) add(x, y, o == 0 ? Orientation::horizontal : Orientation::vertical);
  std::vector<std::array<int, 4>> plaqs;
  for (auto [x, y] : corners)
    plaqs.push_back({add(2 * x + 1, 2 * y, Orientation::horizontal),
                     add(2 * x + 2, 2 * y + 1, Orientation::vertical),
                     add(2 * x + 1, 2 * y + 2, Orientation::horizontal),
                     add(2 * x, 2 * y + 1, Orientation::vertical)});
  return build_custom(links, {}, plaqs);
}

Lattice build_plaquette_chain(int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "chain length must be at least 1");
  if (3 * n + 1 > 24) fail(ErrorCode::capacity, "chain too long for a 24-link basis");
  std::vector<std::pair<int, int>> corners;
  for (int i = 0; i < n; ++i) corners.emplace_back(i, 0);
  return build_from_plaquettes(corners);
}

int flux_sign(const Lattice& lattice, int link) {
  if (link < 0 || link >= lattice.n_links()) fail(ErrorCode::invalid_argument, "unknown link");
  const Link& l = lattice.links[link];
  // sign of the head vertex of a link oriented along +x / +y
  return ((l.x + l.y + 1) / 2) % 2 == 0 ? 1 : -1;
}

int vertex_sign(const Lattice& lattice, int vertex) {
  const Vertex& v = lattice.vertices.at(vertex);
  return ((v.x + v.y) / 2) % 2 == 0 ? 1 : -1;
}

std::string lattice_to_json(const Lattice& lattice) {
  nlohmann::json j;
  for (const auto& l : lattice.links)
    j["links"].push_back({{"x", l.x}, {"y", l.y},
                          {"orientation", l.orientation == Orientation::horizontal ? "h" : "v"}});
  for (const auto& v : lattice.vertices) j["vertices"].push_back({{"x", v.x}, {"y", v.y}, {"links", v.links}});
  for (const auto& p : lattice.plaquettes) j["plaquettes"].push_back(p);
  return j.dump(2);
}

Lattice lattice_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::validation, std::string("lattice json: ") + e.what());
  }
  try {
    std::vector<Link> links;
    for (const auto& l : j.at("links")) {
      auto o = l.at("orientation").get<std::string>();
      if (o != "h" && o != "v") fail(ErrorCode::validation, "lattice json: orientation must be h or v");
      links.push_back({l.at("x").get<int>(), l.at("y").get<int>(),
                       o == "h" ? Orientation::horizontal : Orientation::vertical});
    }
    std::vector<Vertex> verts;
    if (j.contains("vertices"))
      for (const auto& v : j["vertices"])
        verts.push_back({v.at("x").get<int>(), v.at("y").get<int>(), v.at("links").get<std::vector<int>>()});
    std::vector<std::array<int, 4>> plaqs;
    for (const auto& p : j.at("plaquettes")) plaqs.push_back(p.get<std::array<int, 4>>());
    return build_custom(links, verts, plaqs);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::validation, std::string("lattice json: ") + e.what());
  }
}

}  // namespace qlink
