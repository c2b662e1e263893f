#include "symcone/symmetry.hpp"

#include "symcone/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace symcone {

namespace {

// ---- colored graph search -------------------------------------------------

using Cells = std::vector<std::vector<int>>;

struct Refined {
  Cells cells;
  std::uint64_t trace = 0;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

class Refiner {
 public:
  explicit Refiner(const ColoredGraph& g) : g_(g), num_colors_(1) {
    for (int c : g.edge_colors) num_colors_ = std::max(num_colors_, c + 1);
  }

  Cells initial() const {
    std::map<int, std::vector<int>> by_color;
    for (int v = 0; v < g_.n; ++v) by_color[g_.vertex_colors[static_cast<std::size_t>(v)]].push_back(v);
    Cells cells;
    for (auto& [c, vs] : by_color) cells.push_back(std::move(vs));
    return cells;
  }

  // Splits cells by counts of (neighbour cell, edge color) until stable. New
  // cells replace the old one in place, ordered by signature.
  Refined refine(Cells cells) const {
    const auto n = static_cast<std::size_t>(g_.n);
    std::vector<int> cell_of(n);
    std::vector<std::vector<long>> sig(n);
    while (true) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        for (int v : cells[c]) cell_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
      }
      for (std::size_t v = 0; v < n; ++v) {
        auto& s = sig[v];
        s.clear();
        for (std::size_t u = 0; u < n; ++u) {
          if (u == v) continue;
          s.push_back(static_cast<long>(cell_of[u]) * num_colors_ + g_.edge(static_cast<int>(v), static_cast<int>(u)));
        }
        std::sort(s.begin(), s.end());
      }
      Cells next;
      next.reserve(cells.size());
      for (auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(std::move(cell));
          continue;
        }
        std::sort(cell.begin(), cell.end(), [&](int a, int b) {
          const auto& sa = sig[static_cast<std::size_t>(a)];
          const auto& sb = sig[static_cast<std::size_t>(b)];
          return sa != sb ? sa < sb : a < b;
        });
        std::size_t start = 0;
        for (std::size_t k = 1; k <= cell.size(); ++k) {
          if (k == cell.size() || sig[static_cast<std::size_t>(cell[k])] != sig[static_cast<std::size_t>(cell[start])]) {
            std::vector<int> part(cell.begin() + static_cast<long>(start), cell.begin() + static_cast<long>(k));
            std::sort(part.begin(), part.end());
            next.push_back(std::move(part));
            start = k;
          }
        }
      }
      const bool split = next.size() != cells.size();
      cells = std::move(next);
      if (!split) break;
    }
    Refined r;
    r.trace = cells.size();
    for (const auto& cell : cells) {
      r.trace = mix(r.trace, cell.size());
      r.trace = mix(r.trace, static_cast<std::uint64_t>(g_.vertex_colors[static_cast<std::size_t>(cell[0])]));
      for (long x : sig[static_cast<std::size_t>(cell[0])]) r.trace = mix(r.trace, static_cast<std::uint64_t>(x));
    }
    r.cells = std::move(cells);
    return r;
  }

  static int target_cell(const Cells& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].size() > 1) return static_cast<int>(c);
    }
    return -1;
  }

  static Cells individualize(const Cells& cells, int c, int v) {
    Cells out;
    out.reserve(cells.size() + 1);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (static_cast<int>(k) != c) {
        out.push_back(cells[k]);
        continue;
      }
      out.push_back({v});
      std::vector<int> rest;
      for (int u : cells[k]) {
        if (u != v) rest.push_back(u);
      }
      out.push_back(std::move(rest));
    }
    return out;
  }

 private:
  const ColoredGraph& g_;
  int num_colors_;
};

struct FirstPath {
  std::vector<Refined> nodes;  // nodes[i] is the refined partition at depth i
  std::vector<int> chosen;     // vertex individualized at depth i
  std::vector<int> cell;       // index of the target cell at depth i
  std::vector<int> leaf;
};

FirstPath first_path(const Refiner& r, const Cells& start) {
  FirstPath p;
  p.nodes.push_back(r.refine(start));
  while (true) {
    const Cells& cells = p.nodes.back().cells;
    const int c = Refiner::target_cell(cells);
    if (c < 0) break;
    const int x = cells[static_cast<std::size_t>(c)][0];
    p.chosen.push_back(x);
    p.cell.push_back(c);
    p.nodes.push_back(r.refine(Refiner::individualize(cells, c, x)));
  }
  for (const auto& cell : p.nodes.back().cells) p.leaf.push_back(cell[0]);
  return p;
}

bool is_isomorphism(const ColoredGraph& a, const ColoredGraph& b, const std::vector<int>& sigma) {
  for (int i = 0; i < a.n; ++i) {
    if (a.vertex_colors[static_cast<std::size_t>(i)] != b.vertex_colors[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])]) {
      return false;
    }
  }
  for (int i = 0; i < a.n; ++i) {
    for (int j = i + 1; j < a.n; ++j) {
      if (a.edge(i, j) != b.edge(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)])) return false;
    }
  }
  return true;
}

// Depth-first search below `node` (at `depth`) in graph b for a leaf matching
// the first path of graph a.
std::optional<std::vector<int>> search_leaf(const ColoredGraph& a, const ColoredGraph& b, const Refiner& rb,
                                            const FirstPath& path, const Refined& node, std::size_t depth) {
  if (node.trace != path.nodes[depth].trace) return std::nullopt;
  const int c = Refiner::target_cell(node.cells);
  if (c < 0) {
    if (depth + 1 != path.nodes.size()) return std::nullopt;
    std::vector<int> sigma(static_cast<std::size_t>(a.n));
    for (std::size_t k = 0; k < path.leaf.size(); ++k) {
      sigma[static_cast<std::size_t>(path.leaf[k])] = node.cells[k][0];
    }
    if (is_isomorphism(a, b, sigma)) return sigma;
    return std::nullopt;
  }
  if (depth + 1 >= path.nodes.size() || c != path.cell[depth]) return std::nullopt;
  for (int v : node.cells[static_cast<std::size_t>(c)]) {
    Refined child = rb.refine(Refiner::individualize(node.cells, c, v));
    if (auto s = search_leaf(a, b, rb, path, child, depth + 1)) return s;
  }
  return std::nullopt;
}

std::vector<int> orbit_under(const std::vector<Permutation>& gens, int x, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> orbit{x};
  seen[static_cast<std::size_t>(x)] = true;
  for (std::size_t q = 0; q < orbit.size(); ++q) {
    for (const auto& g : gens) {
      const int y = g(orbit[q]);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        orbit.push_back(y);
      }
    }
  }
  return orbit;
}

// ---- vector families -----------------------------------------------------

std::vector<Rational> color_values(const RationalMatrix& v) {
  const std::size_t n = v.rows();
  const RationalMatrix q = v.transpose() * v;
  const auto q_inv = inverse(q);
  if (!q_inv) throw GeometryError("vectors do not span the space");
  const RationalMatrix w = v * *q_inv;
  std::vector<Rational> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < v.cols(); ++k) {
        if (sgn(w(i, k)) != 0 && sgn(v(j, k)) != 0) s += w(i, k) * v(j, k);
      }
      values[i * n + j] = s;
      values[j * n + i] = s;
    }
  }
  return values;
}

ColoredGraph graph_from_values(std::size_t n, const std::vector<Rational>& values, const std::vector<Rational>& palette) {
  auto id = [&](const Rational& x) {
    return static_cast<int>(std::lower_bound(palette.begin(), palette.end(), x) - palette.begin());
  };
  ColoredGraph g;
  g.n = static_cast<int>(n);
  g.palette = palette;
  g.vertex_colors.resize(n);
  g.edge_colors.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    g.vertex_colors[i] = id(values[i * n + i]);
    for (std::size_t j = 0; j < n; ++j) g.edge_colors[i * n + j] = id(values[i * n + j]);
  }
  return g;
}

std::vector<Rational> sorted_distinct(std::vector<Rational> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

ColoredGraph build_colored_graph(const RationalMatrix& v) {
  const std::vector<Rational> values = color_values(v);
  return graph_from_values(v.rows(), values, sorted_distinct(values));
}

std::pair<ColoredGraph, ColoredGraph> build_colored_graph_pair(const RationalMatrix& v, const RationalMatrix& w) {
  const std::vector<Rational> a = color_values(v);
  const std::vector<Rational> b = color_values(w);
  std::vector<Rational> all = a;
  all.insert(all.end(), b.begin(), b.end());
  const std::vector<Rational> palette = sorted_distinct(std::move(all));
  return {graph_from_values(v.rows(), a, palette), graph_from_values(w.rows(), b, palette)};
}

PermGroup colored_graph_automorphisms(const ColoredGraph& g) {
  const Refiner r(g);
  const FirstPath path = first_path(r, r.initial());
  std::vector<Permutation> gens;
  for (std::size_t i = path.chosen.size(); i-- > 0;) {
    const Cells& cells = path.nodes[i].cells;
    const int c = path.cell[i];
    const int x = path.chosen[i];
    for (int w : cells[static_cast<std::size_t>(c)]) {
      if (w == x) continue;
      const std::vector<int> orbit = orbit_under(gens, x, g.n);
      if (std::find(orbit.begin(), orbit.end(), w) != orbit.end()) continue;
      Refined child = r.refine(Refiner::individualize(cells, c, w));
      if (auto sigma = search_leaf(g, g, r, path, child, i + 1)) gens.emplace_back(std::move(*sigma));
    }
  }
  return PermGroup(g.n, std::move(gens));
}

std::optional<Permutation> colored_graph_isomorphism(const ColoredGraph& a, const ColoredGraph& b) {
  if (a.n != b.n) return std::nullopt;
  std::vector<int> ca = a.vertex_colors, cb = b.vertex_colors;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return std::nullopt;
  const Refiner ra(a), rb(b);
  const FirstPath path = first_path(ra, ra.initial());
  const Refined root = rb.refine(rb.initial());
  if (auto sigma = search_leaf(a, b, rb, path, root, 0)) return Permutation(std::move(*sigma));
  return std::nullopt;
}

std::optional<RationalMatrix> linear_witness(const RationalMatrix& v, const RationalMatrix& w, const Permutation& sigma) {
  if (v.rows() != w.rows() || v.cols() != w.cols() || sigma.degree() != static_cast<int>(v.rows())) return std::nullopt;
  const std::vector<int> basis = independent_rows(v);
  if (basis.size() != v.cols()) return std::nullopt;
  std::vector<int> images;
  for (int b : basis) images.push_back(sigma(b));
  const RationalMatrix x = v.select_rows(basis);
  const RationalMatrix y = w.select_rows(images);
  const auto xt_inv = inverse(x.transpose());
  if (!xt_inv) return std::nullopt;
  RationalMatrix a = y.transpose() * *xt_inv;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    if (a * v.row(i) != w.row(static_cast<std::size_t>(sigma(static_cast<int>(i))))) return std::nullopt;
  }
  return a;
}

AutomorphismResult restricted_automorphism_group(const RationalMatrix& v) {
  AutomorphismResult result;
  result.group = colored_graph_automorphisms(build_colored_graph(v));
  for (const auto& g : result.group.generators()) {
    auto a = linear_witness(v, v, g);
    if (!a) throw GeometryError("automorphism without a linear witness");
    result.witnesses.push_back(std::move(*a));
  }
  return result;
}

std::optional<std::pair<Permutation, RationalMatrix>> restricted_isomorphism(const RationalMatrix& v,
                                                                             const RationalMatrix& w) {
  if (v.rows() != w.rows() || v.cols() != w.cols()) return std::nullopt;
  auto [gv, gw] = build_colored_graph_pair(v, w);
  auto sigma = colored_graph_isomorphism(gv, gw);
  if (!sigma) return std::nullopt;
  auto a = linear_witness(v, w, *sigma);
  if (!a) return std::nullopt;
  return std::make_pair(std::move(*sigma), std::move(*a));
}

PermGroup combinatorial_automorphisms(const std::vector<std::vector<bool>>& incidence) {
  const int n = static_cast<int>(incidence.size());
  const int m = n > 0 ? static_cast<int>(incidence[0].size()) : 0;
  ColoredGraph g;
  g.n = n + m;
  g.vertex_colors.assign(static_cast<std::size_t>(n + m), 1);
  for (int i = 0; i < n; ++i) g.vertex_colors[static_cast<std::size_t>(i)] = 0;
  g.edge_colors.assign(static_cast<std::size_t>((n + m) * (n + m)), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!incidence[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
      g.edge_colors[static_cast<std::size_t>(i * (n + m) + n + j)] = 1;
      g.edge_colors[static_cast<std::size_t>((n + j) * (n + m) + i)] = 1;
    }
  }
  const PermGroup full = colored_graph_automorphisms(g);
  std::vector<Permutation> gens;
  for (const auto& p : full.generators()) {
    std::vector<int> images(p.images().begin(), p.images().begin() + n);
    gens.emplace_back(std::move(images));
  }
  return PermGroup(n, std::move(gens));
}

}  // namespace symcone
