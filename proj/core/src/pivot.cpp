#include "symcone/pivot.hpp"

#include "symcone/errors.hpp"
#include "symcone/symmetry.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace symcone {

namespace {

int lex_sign(const RationalVector& v) {
  for (const auto& x : v) {
    if (int s = sign(x); s != 0) return s;
  }
  return 0;
}

RationalVector ray_sum(const RationalMatrix& v) {
  RationalVector c(v.cols(), Rational(0));
  for (std::size_t i = 0; i < v.rows(); ++i) {
    for (std::size_t j = 0; j < v.cols(); ++j) c[j] += v(i, j);
  }
  return c;
}

// Vertex y of the dual system at a basis, y = W·(b_β, 1), with slacks
// s_j = v_j·y - b_j kept symbolically in (1, ε₁, .., ε_k).
struct Dictionary {
  std::vector<int> basis;
  RationalMatrix w;
  /// t(j,p) = v_j · W(:,p).
  RationalMatrix t;
  std::vector<RationalVector> slack;
};

std::optional<Dictionary> dictionary(const Cone& c, const SymbolicRHS& rhs, const std::vector<int>& basis) {
  const std::size_t d = c.dimension();
  const std::size_t n = c.num_rays();
  const std::size_t k = rhs.eps.cols();
  if (basis.size() + 1 != d) return std::nullopt;
  RationalMatrix m = c.rays().select_rows(basis);
  m.append_row(ray_sum(c.rays()));
  auto w = inverse(m);
  if (!w) return std::nullopt;
  Dictionary dict{basis, *w, c.rays() * *w, {}};
  dict.slack.assign(n, RationalVector(k + 1, Rational(0)));
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector& s = dict.slack[j];
    s[0] = dict.t(j, d - 1) - rhs.base[j];
    for (std::size_t q = 0; q < k; ++q) s[q + 1] = -rhs.eps(j, q);
    for (std::size_t p = 0; p + 1 < d; ++p) {
      const Rational& coef = dict.t(j, p);
      if (sign(coef) == 0) continue;
      const auto b = static_cast<std::size_t>(basis[p]);
      s[0] += coef * rhs.base[b];
      for (std::size_t q = 0; q < k; ++q) s[q + 1] += coef * rhs.eps(b, q);
    }
  }
  return dict;
}

bool feasible(const Dictionary& dict) {
  return std::all_of(dict.slack.begin(), dict.slack.end(), [](const auto& s) { return lex_sign(s) >= 0; });
}

BasisNode node_of(const Cone& c, const Dictionary& dict) {
  std::vector<int> coarse;
  std::vector<int> fine;
  for (std::size_t j = 0; j < dict.slack.size(); ++j) {
    if (sign(dict.slack[j][0]) == 0) coarse.push_back(static_cast<int>(j));
    if (lex_sign(dict.slack[j]) == 0) fine.push_back(static_cast<int>(j));
  }
  return {FaceSet(dict.basis), facet_from_support(c, FaceSet(coarse)), FaceSet(fine)};
}

RationalVector scaled(const RationalVector& v, const Rational& f) {
  RationalVector out = v;
  for (auto& x : out) x *= f;
  return out;
}

// Entering candidates of the ratio test when basis position p leaves.
std::vector<int> ratio_ties(const Dictionary& dict, std::size_t p) {
  std::vector<int> ties;
  RationalVector best;
  for (std::size_t j = 0; j < dict.slack.size(); ++j) {
    const Rational& a = dict.t(j, p);
    if (sign(a) >= 0) continue;
    RationalVector r = scaled(dict.slack[j], Rational(-1) / a);
    if (ties.empty() || lex_less(r, best)) {
      best = std::move(r);
      ties.assign(1, static_cast<int>(j));
    } else if (r == best) {
      ties.push_back(static_cast<int>(j));
    }
  }
  return ties;
}

std::vector<int> swapped(const std::vector<int>& basis, std::size_t p, int entering) {
  std::vector<int> out = basis;
  out[p] = entering;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SymbolicRHS unperturbed_rhs(std::size_t n) {
  SymbolicRHS rhs;
  rhs.base.assign(n, Rational(0));
  rhs.eps = RationalMatrix(n, 0);
  rhs.vacuous = true;
  return rhs;
}

SymbolicRHS build_perturbation(const Cone& c, const PerturbationSpec& spec) {
  if (!acts_linearly(c, spec.subgroup)) throw GroupError("perturbation subgroup is not a restricted automorphism group");
  const auto orbits = spec.subgroup.point_orbits();
  std::vector<int> order = spec.order;
  if (order.empty()) {
    for (std::size_t i = 0; i < orbits.size(); ++i) order.push_back(static_cast<int>(i));
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted.size() != orbits.size() || sorted[i] != static_cast<int>(i)) {
      throw std::invalid_argument("perturbation order must list every orbit once");
    }
  }
  if (!spec.signs.empty() && spec.signs.size() != orbits.size()) {
    throw std::invalid_argument("perturbation needs one sign per orbit");
  }
  SymbolicRHS rhs;
  rhs.base.assign(c.num_rays(), Rational(0));
  rhs.eps = RationalMatrix(c.num_rays(), orbits.size());
  for (std::size_t col = 0; col < order.size(); ++col) {
    const auto label = static_cast<std::size_t>(order[col]);
    const int s = spec.signs.empty() ? -1 : spec.signs[label];
    if (s != 1 && s != -1) throw std::invalid_argument("perturbation signs must be +1 or -1");
    for (int i : orbits[label]) rhs.eps(static_cast<std::size_t>(i), col) = -s;
    rhs.orbits.push_back(orbits[label]);
  }
  rhs.vacuous = orbits.size() < 2;
  return rhs;
}

std::optional<BasisNode> make_basis(const Cone& c, const SymbolicRHS& rhs, const FaceSet& indices) {
  auto dict = dictionary(c, rhs, indices.indices());
  if (!dict || !feasible(*dict)) return std::nullopt;
  return node_of(c, *dict);
}

BasisNode pivot(const Cone& c, const BasisNode& b, int leaving, const SymbolicRHS& rhs) {
  const auto& basis = b.indices.indices();
  const auto it = std::find(basis.begin(), basis.end(), leaving);
  if (it == basis.end()) throw std::invalid_argument("pivot: leaving index is not in the basis");
  const auto p = static_cast<std::size_t>(it - basis.begin());
  auto dict = dictionary(c, rhs, basis);
  if (!dict) throw std::logic_error("pivot: singular basis");
  const auto ties = ratio_ties(*dict, p);
  if (ties.empty()) throw std::logic_error("pivot: dual system is unbounded");
  auto next = dictionary(c, rhs, swapped(basis, p, ties.front()));
  if (!next || !feasible(*next)) throw std::logic_error("pivot: ratio test produced an infeasible basis");
  return node_of(c, *next);
}

std::vector<FaceSet> basis_neighbors(const Cone& c, const SymbolicRHS& rhs, const FaceSet& b) {
  const auto& basis = b.indices();
  auto dict = dictionary(c, rhs, basis);
  if (!dict) throw std::logic_error("basis_neighbors: singular basis");
  std::vector<FaceSet> out;
  for (std::size_t p = 0; p < basis.size(); ++p) {
    std::vector<int> entering = ratio_ties(*dict, p);
    for (std::size_t j = 0; j < dict->slack.size(); ++j) {
      if (lex_sign(dict->slack[j]) == 0 && sign(dict->t(j, p)) != 0 && !b.contains(static_cast<int>(j))) {
        entering.push_back(static_cast<int>(j));
      }
    }
    std::sort(entering.begin(), entering.end());
    entering.erase(std::unique(entering.begin(), entering.end()), entering.end());
    for (int j : entering) out.emplace_back(swapped(basis, p, j));
  }
  return out;
}

BasisNode initial_basis(const Cone& c, const SymbolicRHS& rhs) {
  const Facet f0 = initial_facet(c);
  const auto& support = f0.support.indices();
  std::vector<int> basis;
  for (int k : independent_rows(c.rays().select_rows(support))) basis.push_back(support[static_cast<std::size_t>(k)]);
  std::sort(basis.begin(), basis.end());

  RationalVector phi(c.dimension(), Rational(0));
  for (int i : basis) {
    for (std::size_t j = 0; j < c.dimension(); ++j) phi[j] += c.rays()(static_cast<std::size_t>(i), j);
  }
  // Dual simplex for min φ·y with Bland's rule.
  for (std::size_t iter = 0; iter < 100000; ++iter) {
    auto dict = dictionary(c, rhs, basis);
    if (!dict) throw std::logic_error("initial_basis: singular basis");
    int violated = -1;
    for (std::size_t j = 0; j < dict->slack.size() && violated < 0; ++j) {
      if (lex_sign(dict->slack[j]) < 0) violated = static_cast<int>(j);
    }
    if (violated < 0) return node_of(c, *dict);
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t p = 0; p < basis.size(); ++p) {
      const Rational& alpha = dict->t(static_cast<std::size_t>(violated), p);
      if (sign(alpha) <= 0) continue;
      const Rational lambda = dot(phi, dict->w.col(p));
      const Rational ratio = lambda / alpha;
      if (!leave || ratio < best || (ratio == best && basis[p] < basis[*leave])) {
        leave = p;
        best = ratio;
      }
    }
    if (!leave) throw std::logic_error("initial_basis: perturbed system is infeasible");
    basis = swapped(basis, *leave, violated);
  }
  throw std::logic_error("initial_basis: dual simplex did not terminate");
}

bool CanonicalFacets::admits(const FaceSet& facet) {
  const auto ins = db_.insert_if_new(facet);
  if (ins.is_new) first_.emplace(ins.id, facet);
  return first_.at(ins.id) == facet;
}

std::vector<FaceSet> CanonicalFacets::representatives() const {
  std::vector<FaceSet> out;
  for (const auto& e : db_.entries()) out.push_back(e.representative);
  std::sort(out.begin(), out.end());
  return out;
}

bool adjacency_pruning_filter(const FaceSet& facet, CanonicalFacets& known) { return known.admits(facet); }

PivotResult explore_basis_graph(const ConversionTask& task, const std::optional<PerturbationSpec>& spec,
                                const std::optional<FaceSet>& start) {
  const Cone& c = task.cone;
  auto& stats = *task.options.stats;
  const SymbolicRHS rhs = spec ? build_perturbation(c, *spec) : unperturbed_rhs(c.num_rays());
  const PermGroup& g = spec ? spec->subgroup : task.group;

  std::shared_ptr<const ColoredGraph> graph;
  if (task.options.metric_keys) graph = std::make_shared<const ColoredGraph>(build_colored_graph(c.rays()));
  OrbitDatabase bases(g, std::make_shared<const RationalMatrix>(c.rays()), graph, false);
  CanonicalFacets facets(g);

  PivotResult result;
  std::vector<FaceSet> stack{start ? *start : initial_basis(c, rhs).indices};
  std::set<FaceSet> seen;
  std::vector<FaceSet> coarse;
  while (!stack.empty()) {
    const FaceSet b = std::move(stack.back());
    stack.pop_back();
    if (seen.insert(b).second) {
      result.visited.push_back(b);
      ++stats.bases_visited;
    }
    if (bases.find(b)) continue;
    const auto node = make_basis(c, rhs, b);
    if (!node) throw std::logic_error("explore_basis_graph: reached an infeasible basis");
    if (!adjacency_pruning_filter(node->fine_support, facets) && task.options.pivot_pruning) continue;
    bases.insert_if_new(b);
    coarse.push_back(node->facet.support);
    for (auto& nb : basis_neighbors(c, rhs, b)) stack.push_back(std::move(nb));
  }

  for (const auto& e : bases.entries()) result.basis_reps.push_back(e.representative);
  std::sort(result.basis_reps.begin(), result.basis_reps.end());
  result.fine_facets = facets.representatives();
  result.facets = representatives_as_facets(c, task.group, coarse);
  stats.basis_orbits += result.basis_reps.size();
  return result;
}

std::vector<Facet> pivot_orbits(const ConversionTask& task, std::size_t) {
  ++task.options.stats->subproblems;
  return explore_basis_graph(task, std::nullopt).facets;
}

bool verify_valid_perturbation(const RationalMatrix& v, const RationalMatrix& perturbed, const std::vector<int>& nu) {
  const std::size_t n = v.rows();
  if (perturbed.rows() != n || nu.size() != n) return false;
  std::vector<int> mapped(nu.begin(), nu.end());
  std::sort(mapped.begin(), mapped.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (mapped[i] != static_cast<int>(i)) return false;
  }

  // Independent subsets of V must stay independent; only those need extending.
  bool ok = true;
  std::vector<int> w;
  auto extend = [&](auto&& self, std::size_t from) -> void {
    for (std::size_t i = from; i < n && ok; ++i) {
      w.push_back(static_cast<int>(i));
      if (rank(v.select_rows(w)) == w.size()) {
        std::vector<int> image;
        for (int x : w) image.push_back(nu[static_cast<std::size_t>(x)]);
        if (rank(perturbed.select_rows(image)) != w.size()) ok = false;
        if (ok && w.size() < v.cols()) self(self, i + 1);
      }
      w.pop_back();
    }
  };
  extend(extend, 0);
  if (!ok) return false;

  const Cone coarse(v);
  const Cone fine(perturbed);
  if (rank(perturbed) != perturbed.cols()) return false;
  return boundary_complex_refines(dual_description_dd(coarse), dual_description_dd(fine), nu);
}

Cone centered_cube(int d) {
  const std::size_t n = std::size_t{1} << d;
  RationalMatrix m(n, static_cast<std::size_t>(d) + 1);
  for (std::size_t k = 0; k < n; ++k) {
    for (int j = 0; j < d; ++j) m(k, static_cast<std::size_t>(j)) = (k >> j) & 1 ? 1 : -1;
    m(k, static_cast<std::size_t>(d)) = 1;
  }
  return Cone(std::move(m));
}

PerturbationSpec omega_pulling(const Cone& cube, const PermGroup& g) {
  const int n = static_cast<int>(cube.num_rays());
  const std::size_t d = cube.dimension() - 1;
  PerturbationSpec spec;
  spec.subgroup = set_stabilizer(g, FaceSet{0, n - 1});
  const auto orbits = spec.subgroup.point_orbits();
  std::vector<std::pair<Rational, int>> omega;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    Rational s = 0;
    for (std::size_t j = 0; j < d; ++j) s += cube.rays()(static_cast<std::size_t>(orbits[o].front()), j);
    omega.emplace_back(s < 0 ? s : Rational(-s), static_cast<int>(o));
  }
  std::stable_sort(omega.begin(), omega.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [w, o] : omega) spec.order.push_back(o);
  spec.signs.assign(orbits.size(), -1);
  return spec;
}

bool linear_ordering_triangulation_check(int d) {
  const Cone cube = centered_cube(d);
  const PermGroup g = restricted_automorphism_group(cube.rays()).group;
  const PerturbationSpec spec = omega_pulling(cube, g);
  ConversionTask task{cube, g, Method::pivot, {}};
  const PivotResult res = explore_basis_graph(task, spec);
  if (res.basis_reps.size() != 1) return false;

  std::set<FaceSet> fine;
  for (const auto& f : res.fine_facets) {
    for (auto& s : orbit_of_set(spec.subgroup, f)) fine.insert(std::move(s));
  }
  std::size_t factorial = 1;
  for (int i = 2; i <= d; ++i) factorial *= static_cast<std::size_t>(i);
  if (fine.size() != 2 * factorial) return false;

  const auto coarse = dual_description_dd(cube);
  return std::all_of(fine.begin(), fine.end(), [&](const FaceSet& f) {
    return std::any_of(coarse.begin(), coarse.end(), [&](const Facet& cf) { return f.is_subset_of(cf.support); });
  });
}

std::optional<PermGroup> random_subgroup_with_orbits(const PermGroup& g, std::size_t orbits, std::uint64_t seed,
                                                     int attempts) {
  std::mt19937_64 rng(seed);
  for (int a = 0; a < attempts; ++a) {
    std::vector<Permutation> gens;
    for (int k = 0; k <= a % 3; ++k) gens.push_back(g.random_element(rng));
    PermGroup h(g.degree(), std::move(gens));
    if (h.point_orbits().size() == orbits) return h;
  }
  return std::nullopt;
}

}  // namespace symcone
