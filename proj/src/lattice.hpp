#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace qlink {

enum class Orientation { horizontal, vertical };

// Coordinates are doubled so that link midpoints and vertices are both integral:
// vertex (x, y) of the lattice sits at (2x, 2y), a horizontal link at (2x+1, 2y).
struct Link {
  int x = 0;
  int y = 0;
  Orientation orientation = Orientation::horizontal;
};

struct Vertex {
  int x = 0;
  int y = 0;
  std::vector<int> links;  // incident links, ascending
};

using Bond = std::pair<int, int>;

struct Lattice {
  std::vector<Link> links;
  std::vector<Vertex> vertices;
  std::vector<std::array<int, 4>> plaquettes;  // bottom, right, top, left
  std::vector<Bond> plaquette_bonds;
  std::vector<Bond> vertex_bonds;
  std::vector<Bond> opposite_bonds;

  int n_links() const { return static_cast<int>(links.size()); }
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_plaquettes() const { return static_cast<int>(plaquettes.size()); }

  std::optional<int> find_link(int x, int y) const;
  std::optional<int> find_vertex(int x, int y) const;
  std::array<int, 2> endpoints(int link) const;  // vertex ids
  // Links contained in two plaquettes.
  std::vector<int> shared_links() const;
  std::vector<int> boundary_links() const;
  // Qubit numbering: plaquette 0 in cyclic order, then the remaining links ascending.
  std::vector<int> qubit_order() const;
};

Lattice build_plaquette_chain(int n);

// Plaquettes given by their lower-left lattice corner.
Lattice build_from_plaquettes(const std::vector<std::pair<int, int>>& corners);

// Explicit description; vertices may be empty, in which case they are derived
// from link endpoints. Throws Error(validation) naming the offending element.
Lattice build_custom(const std::vector<Link>& links,
                     const std::vector<Vertex>& vertices,
                     const std::vector<std::array<int, 4>>& plaquettes);

int flux_sign(const Lattice& lattice, int link);
// (-1)^(x+y) of the vertex in lattice units; flux charge = vertex_sign * spin charge.
int vertex_sign(const Lattice& lattice, int vertex);

std::string lattice_to_json(const Lattice& lattice);
Lattice lattice_from_json(const std::string& text);

}  // namespace qlink
