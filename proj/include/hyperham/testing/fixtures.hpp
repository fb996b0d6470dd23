#pragma once

// Hand-built instances shared by the unit tests and the acceptance runner.

#include <array>
#include <vector>

#include "hyperham/absorber.hpp"
#include "hyperham/constructions.hpp"
#include "hyperham/hamilton.hpp"

namespace hyperham::naive {

struct AbsorberFixture {
  Hypergraph3 H;
  AbsorbingPath path;
  std::array<Vertex, 3> U{};
};

/**
 * 24 vertices: the canonical K3,3,3 on 0..8, link paths (9..12), (13..16),
 * (17..20) for slots 0..2, and outsiders 21, 22, 23 where 21+i fits slot i
 * only. The pieces x1x2x3z1z2z3 and a_i b_i y_i c_i d_i are chained by the two
 * junction edges between consecutive pieces and nothing else.
 */
inline AbsorberFixture single_absorber_fixture() {
  AbsorberFixture f;
  Absorber A;
  for (Vertex v = 0; v < 9; ++v) A.K[v] = v;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) A.P[i][j] = static_cast<Vertex>(9 + 4 * i + j);
  f.U = {21, 22, 23};

  std::vector<Triple> edges = gen::k333().edges();
  auto add_path = [&](const std::vector<Vertex>& seq) {
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) edges.push_back({seq[i], seq[i + 1], seq[i + 2]});
  };
  for (std::size_t i = 0; i < 3; ++i) {
    add_path(A.slot_path(i, A.y(i)));
    add_path(A.slot_path(i, f.U[i]));
  }
  std::vector<Piece> pieces;
  pieces.push_back({PieceKind::k333, k333_short_path(A.K), 0, 0, false});
  for (std::size_t i = 0; i < 3; ++i) pieces.push_back({PieceKind::slot, A.slot_path(i, A.y(i)), 0, i, false});
  for (std::size_t s = 1; s < pieces.size(); ++s) {
    const auto& a = pieces[s - 1].vertices;
    const auto& b = pieces[s].vertices;
    add_path({a[a.size() - 2], a.back(), b[0], b[1]});
  }
  f.H = Hypergraph3::from_edges(24, edges);
  refresh_eligible(f.H, A);
  f.path.absorbers.push_back(A);
  f.path.pieces = std::move(pieces);
  f.path.spare_capacity = 1;
  f.path.rebuild();
  return f;
}

}  // namespace hyperham::naive
