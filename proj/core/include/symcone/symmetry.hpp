#pragma once

#include "symcone/matrix.hpp"
#include "symcone/perm_group.hpp"
#include "symcone/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace symcone {

/// Complete graph with colored vertices and edges. Colors are small integers;
/// `palette` optionally records the rational value behind each color id.
struct ColoredGraph {
  int n = 0;
  std::vector<int> vertex_colors;
  /// Row-major n×n, symmetric. The diagonal is ignored.
  std::vector<int> edge_colors;
  std::vector<Rational> palette;

  int edge(int i, int j) const { return edge_colors[static_cast<std::size_t>(i * n + j)]; }
};

/// Edge colors v_iᵀ Q⁻¹ v_j with Q = Σ v_i v_iᵀ, vertex colors from the
/// diagonal. Color ids follow the sorted order of the distinct values.
/// Throws GeometryError when the rows do not span.
ColoredGraph build_colored_graph(const RationalMatrix& v);

/// Both graphs colored from one shared palette, so color ids are comparable.
std::pair<ColoredGraph, ColoredGraph> build_colored_graph_pair(const RationalMatrix& v, const RationalMatrix& w);

/// Full automorphism group by individualization and equitable refinement.
PermGroup colored_graph_automorphisms(const ColoredGraph& g);

/// A color-preserving bijection σ with a.edge(i,j) = b.edge(σi,σj).
std::optional<Permutation> colored_graph_isomorphism(const ColoredGraph& a, const ColoredGraph& b);

struct AutomorphismResult {
  PermGroup group;
  /// witnesses[k] realizes group.generators()[k]: A v_i = v_σ(i).
  std::vector<RationalMatrix> witnesses;
};

/// A with A v_i = w_σ(i) for every i, or nullopt when no linear map does this.
std::optional<RationalMatrix> linear_witness(const RationalMatrix& v, const RationalMatrix& w, const Permutation& sigma);

AutomorphismResult restricted_automorphism_group(const RationalMatrix& v);

std::optional<std::pair<Permutation, RationalMatrix>> restricted_isomorphism(const RationalMatrix& v,
                                                                             const RationalMatrix& w);

/// Automorphisms of the ray/facet incidence structure, acting on the rays.
/// incidence[i][j] is true when ray i lies on facet j.
PermGroup combinatorial_automorphisms(const std::vector<std::vector<bool>>& incidence);

}  // namespace symcone
