#include "oracles.hpp"
#include "symcone/errors.hpp"
#include "symcone/pivot.hpp"
#include "symcone/symmetry.hpp"

#include <gtest/gtest.h>

using namespace symcone;

namespace {

Cone polytope(const RationalMatrix& pts) { return homogenize(pts, oracle::empty_matrix(pts.cols())); }

PermGroup restricted(const Cone& c) { return restricted_automorphism_group(c.rays()).group; }

std::set<FaceSet> expanded(const PermGroup& g, const std::vector<FaceSet>& reps) {
  std::set<FaceSet> out;
  for (const auto& r : reps) {
    for (auto& s : orbit_of_set(g, r)) out.insert(std::move(s));
  }
  return out;
}

std::vector<FaceSet> supports(const std::vector<Facet>& facets) {
  std::vector<FaceSet> out;
  for (const auto& f : facets) out.push_back(f.support);
  return out;
}

std::set<FaceSet> dd_supports(const RationalMatrix& rays) {
  std::set<FaceSet> out;
  for (const auto& f : dual_description_dd(Cone(rays))) out.insert(f.support);
  return out;
}

Permutation diagonal_rotation() {
  std::vector<int> img(8);
  for (int k = 0; k < 8; ++k) img[static_cast<std::size_t>(k)] = ((k << 1) | (k >> 2)) & 7;
  return Permutation(img);
}

}  // namespace

TEST(Pivot, SquareMovesToAdjacentFacet) {
  const Cone sq = polytope(oracle::cube_vertices(2));
  const SymbolicRHS rhs = unperturbed_rhs(4);
  // Facet x0 = -1 holds vertices 0 and 2.
  const auto b = make_basis(sq, rhs, FaceSet{0, 2});
  ASSERT_TRUE(b.has_value());
  const BasisNode next = pivot(sq, *b, 2, rhs);
  EXPECT_TRUE(next.indices.contains(0));
  EXPECT_NE(next.facet.support, b->facet.support);
  EXPECT_EQ(next.facet.support.size(), 2u);
  EXPECT_THROW(pivot(sq, *b, 1, rhs), std::invalid_argument);
  EXPECT_FALSE(make_basis(sq, rhs, FaceSet{0, 3}).has_value());
}

TEST(Pivot, SimplexStaysOnFacets) {
  const Cone c(RationalMatrix::identity(4));
  const SymbolicRHS rhs = unperturbed_rhs(4);
  BasisNode b = initial_basis(c, rhs);
  for (int step = 0; step < 12; ++step) {
    const BasisNode next = pivot(c, b, b.indices[static_cast<std::size_t>(step % 3)], rhs);
    EXPECT_EQ(next.facet.support, next.indices);
    b = next;
  }
}

TEST(Perturbation, OrbitStructure) {
  const Cone cube = polytope(oracle::cube_vertices(3));
  const SymbolicRHS trivial = build_perturbation(cube, {PermGroup::trivial(8), {}, {}});
  EXPECT_EQ(trivial.eps.cols(), 8u);
  EXPECT_FALSE(trivial.vacuous);
  const SymbolicRHS full = build_perturbation(cube, {restricted(cube), {}, {}});
  EXPECT_EQ(full.eps.cols(), 1u);
  EXPECT_TRUE(full.vacuous);

  const Cone cc = centered_cube(3);
  const PerturbationSpec spec = omega_pulling(cc, restricted(cc));
  const SymbolicRHS rhs = build_perturbation(cc, spec);
  ASSERT_EQ(rhs.orbits.size(), 2u);
  EXPECT_EQ(rhs.orbits[0], (std::vector<int>{0, 7}));
  EXPECT_EQ(rhs.orbits[1].size(), 6u);

  const Cone op(oracle::oct_pyr_rays());
  const PermGroup comb = combinatorial_automorphisms(incidence_matrix(op, dual_description_dd(op)));
  EXPECT_THROW(build_perturbation(op, {comb, {}, {}}), GroupError);
}

TEST(BasisGraph, CrossPolytopeHasOneBasisOrbit) {
  for (int d : {3, 4, 5}) {
    const Cone c = polytope(oracle::cross_vertices(d));
    ConversionTask t{c, restricted(c), Method::pivot, {}};
    const PivotResult r = explore_basis_graph(t, std::nullopt);
    EXPECT_EQ(r.basis_reps.size(), 1u);
    EXPECT_EQ(r.facets.size(), 1u);
  }
}

TEST(BasisGraph, CubeBasisOrbits) {
  const std::vector<std::size_t> want{1, 4, 17};
  for (int d = 3; d <= 5; ++d) {
    const Cone c = centered_cube(d);
    ConversionTask t{c, restricted(c), Method::pivot, {}};
    const PivotResult r = explore_basis_graph(t, std::nullopt);
    EXPECT_EQ(r.basis_reps.size(), want[static_cast<std::size_t>(d - 3)]) << d;
    EXPECT_EQ(r.facets.size(), 1u);
  }
}

TEST(BasisGraph, PruningLeavesOrbitsUnchanged) {
  for (const Cone& c : {centered_cube(4), Cone(oracle::oct_pyr_rays()), polytope(oracle::cross_vertices(4))}) {
    ConversionTask on{c, restricted(c), Method::pivot, {}};
    ConversionTask off = on;
    off.options.pivot_pruning = false;
    const PivotResult a = explore_basis_graph(on, std::nullopt);
    const PivotResult b = explore_basis_graph(off, std::nullopt);
    EXPECT_EQ(a.basis_reps, b.basis_reps);
    EXPECT_EQ(supports(a.facets), supports(b.facets));
    EXPECT_LE(a.visited.size(), b.visited.size());
  }
}

TEST(BasisGraph, RotatedQuadrilaterals) {
  // Three squares of the 3-cube meet at vertex 0 and are permuted by the
  // rotation about the diagonal; together they hold 12 bases in 4 orbits.
  const Cone c = centered_cube(3);
  const PermGroup h(8, {diagonal_rotation()});
  ASSERT_TRUE(acts_linearly(c, h));
  auto around_apex = [](const std::vector<FaceSet>& bases) {
    std::set<FaceSet> out;
    for (const auto& b : bases) {
      for (int bit = 0; bit < 3; ++bit) {
        if (std::all_of(b.begin(), b.end(), [bit](int v) { return ((v >> bit) & 1) == 0; })) out.insert(b);
      }
    }
    return out;
  };
  ConversionTask t{c, h, Method::pivot, {}};
  const FaceSet start{0, 2, 4};
  t.options.pivot_pruning = false;
  const PivotResult full = explore_basis_graph(t, std::nullopt, start);
  t.options.pivot_pruning = true;
  const PivotResult pruned = explore_basis_graph(t, std::nullopt, start);
  EXPECT_EQ(full.visited.size(), 20u);
  EXPECT_EQ(pruned.visited.size(), 18u);
  EXPECT_EQ(around_apex(full.visited).size(), 10u);
  EXPECT_EQ(around_apex(pruned.visited).size(), 9u);
  EXPECT_EQ(full.basis_reps, pruned.basis_reps);
  EXPECT_EQ(full.basis_reps.size(), 8u);
}

TEST(BasisGraph, SymbolicMatchesNumericPerturbation) {
  std::vector<std::pair<Cone, PerturbationSpec>> cases;
  const Cone cc = centered_cube(3);
  cases.emplace_back(cc, omega_pulling(cc, restricted(cc)));
  PerturbationSpec push = omega_pulling(cc, restricted(cc));
  push.signs = {1, -1};
  cases.emplace_back(cc, push);
  const Cone cube = polytope(oracle::cube_vertices(3));
  cases.emplace_back(cube, PerturbationSpec{PermGroup::trivial(8), {}, {}});
  const Cone op(oracle::oct_pyr_rays());
  cases.emplace_back(op, PerturbationSpec{restricted(op), {4, 3, 2, 1, 0}, {1, -1, 1, -1, -1}});
  const Cone c4 = centered_cube(4);
  auto two = random_subgroup_with_orbits(restricted(c4), 2, 17);
  ASSERT_TRUE(two.has_value());
  cases.emplace_back(c4, PerturbationSpec{*two, {}, {}});

  for (const auto& [c, spec] : cases) {
    ConversionTask t{c, restricted(c), Method::pivot, {}};
    const PivotResult r = explore_basis_graph(t, spec);
    const SymbolicRHS rhs = build_perturbation(c, spec);
    const auto coarse = dd_supports(oracle::numeric_perturbation(c, rhs, Rational(1, 1000)));
    const auto fine = dd_supports(oracle::numeric_perturbation(c, rhs, Rational(1, 1000000)));
    ASSERT_EQ(coarse, fine);
    EXPECT_EQ(expanded(spec.subgroup, r.fine_facets), fine);

    ConversionTask plain{c, restricted(c), Method::pivot, {}};
    EXPECT_EQ(supports(r.facets), supports(explore_basis_graph(plain, std::nullopt).facets));

    // Every basis representative stays a basis under the subgroup.
    for (const auto& b : r.basis_reps) {
      for (const auto& gen : spec.subgroup.generators()) {
        EXPECT_TRUE(make_basis(c, rhs, gen.apply(b)).has_value());
      }
    }
  }
}

TEST(ValidPerturbation, Examples) {
  const Cone cube = polytope(oracle::cube_vertices(3));
  std::vector<int> id(8);
  std::iota(id.begin(), id.end(), 0);
  EXPECT_TRUE(verify_valid_perturbation(cube.rays(), cube.rays(), id));

  RationalMatrix pulled = cube.rays();
  for (std::size_t j = 0; j < 3; ++j) pulled(0, j) *= Rational(9, 8);
  EXPECT_TRUE(verify_valid_perturbation(cube.rays(), pulled, id));

  RationalMatrix collapsed = cube.rays();
  for (std::size_t j = 0; j < 4; ++j) collapsed(1, j) = collapsed(0, j);
  EXPECT_FALSE(verify_valid_perturbation(cube.rays(), collapsed, id));
}

TEST(LinearOrdering, Triangulation) {
  for (int d = 2; d <= 4; ++d) EXPECT_TRUE(linear_ordering_triangulation_check(d)) << d;
}
