#include "oracles.hpp"
#include "symcone/cone.hpp"
#include "symcone/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace symcone;

namespace {

Cone homogenized(const RationalMatrix& points) { return homogenize(points, RationalMatrix(0, points.cols())); }

std::vector<std::pair<FaceSet, RationalVector>> as_pairs(const std::vector<Facet>& fs) {
  std::vector<std::pair<FaceSet, RationalVector>> out;
  for (const auto& f : fs) out.emplace_back(f.support, f.normal);
  std::sort(out.begin(), out.end());
  return out;
}

const Facet& facet_with_normal(const std::vector<Facet>& fs, const RationalVector& n) {
  for (const auto& f : fs) {
    if (f.normal == n) return f;
  }
  throw std::runtime_error("no such facet");
}

}  // namespace

TEST(Homogenize, AppendsCoordinate) {
  Cone sq = homogenized(RationalMatrix{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  EXPECT_EQ(sq.num_rays(), 4u);
  EXPECT_EQ(sq.ray(1), (RationalVector{1, -1, 1}));

  Cone pt = homogenized(RationalMatrix{{0}});
  EXPECT_EQ(pt.ray(0), (RationalVector{0, 1}));

  Cone mixed = homogenize(RationalMatrix{{0}}, RationalMatrix{{1}});
  EXPECT_EQ(mixed.rays(), (RationalMatrix{{0, 1}, {1, 0}}));

  EXPECT_THROW(homogenize(RationalMatrix(0, 2), RationalMatrix(0, 2)), GeometryError);
  EXPECT_THROW(homogenize(RationalMatrix{{1, 2}}, RationalMatrix{{1}}), GeometryError);
}

TEST(Reduce, RemovesLinealityLine) {
  Cone c(RationalMatrix{{1, 0}, {-1, 0}, {0, 1}});
  Cone r = reduce_to_pointed_fulldim(c);
  EXPECT_EQ(r.dimension(), 1u);
  EXPECT_EQ(r.num_rays(), 1u);
  EXPECT_EQ(r.provenance().source_rows, (std::vector<int>{2}));
  ASSERT_EQ(r.provenance().lineality.rows(), 1u);
  EXPECT_EQ(primitive_scaling(r.provenance().lineality.row(0)), (RationalVector{1, 0}));
  // The single facet of the reduced cone lifts to y ≥ 0.
  auto facets = dual_description_dd(r);
  ASSERT_EQ(facets.size(), 1u);
  EXPECT_EQ(lift_normal(r.provenance(), facets[0].normal), (RationalVector{0, 1}));
}

TEST(Reduce, IdentityOnPointedFullDimensional) {
  Cone c = homogenized(oracle::cube_vertices(3));
  Cone r = reduce_to_pointed_fulldim(c);
  EXPECT_EQ(r.rays(), c.rays());
  EXPECT_EQ(r.provenance().lineality.rows(), 0u);
  EXPECT_EQ(r.provenance().selected_coordinates, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Reduce, DegenerateLine) {
  EXPECT_THROW(reduce_to_pointed_fulldim(Cone(RationalMatrix{{1}, {-1}})), DegenerateConeError);
  EXPECT_THROW(reduce_to_pointed_fulldim(Cone(RationalMatrix{{0, 0}})), DegenerateConeError);
}

TEST(Reduce, LowerDimensionalPolygonInSpace) {
  // A square sitting in the plane z = 2 of R^3, homogenized to R^4.
  Cone c = homogenized(RationalMatrix{{1, 1, 2}, {1, -1, 2}, {-1, 1, 2}, {-1, -1, 2}});
  Cone r = reduce_to_pointed_fulldim(c);
  EXPECT_EQ(r.dimension(), 3u);
  auto facets = dual_description_dd(r);
  EXPECT_EQ(facets.size(), 4u);
  for (const auto& f : facets) {
    const RationalVector g = lift_normal(r.provenance(), f.normal);
    for (std::size_t i = 0; i < c.num_rays(); ++i) {
      EXPECT_EQ(sgn(dot(g, c.ray(i))) == 0, f.support.contains(static_cast<int>(i)));
    }
  }
}

TEST(DoubleDescription, Square) {
  Cone sq = homogenized(RationalMatrix{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  auto facets = dual_description_dd(sq);
  ASSERT_EQ(facets.size(), 4u);
  // x ≤ 1 reads (-1,0,1)·(x,y,1) ≥ 0.
  EXPECT_EQ(facets[0].normal, (RationalVector{-1, 0, 1}));
  EXPECT_EQ(facets[1].normal, (RationalVector{0, -1, 1}));
  EXPECT_EQ(facets[2].normal, (RationalVector{0, 1, 1}));
  EXPECT_EQ(facets[3].normal, (RationalVector{1, 0, 1}));
}

TEST(DoubleDescription, MatchesBruteForce) {
  std::vector<RationalMatrix> cases = {oracle::cube_vertices(3), oracle::cube_vertices(4), oracle::cross_vertices(3),
                                       oracle::cross_vertices(4)};
  for (const auto& pts : cases) {
    Cone c = homogenized(pts);
    EXPECT_EQ(as_pairs(dual_description_dd(c)), oracle::brute_force_facets(c.rays()));
  }
  EXPECT_EQ(dual_description_dd(homogenized(oracle::cube_vertices(3))).size(), 6u);
}

TEST(DoubleDescription, OctahedralPyramid) {
  Cone c(oracle::oct_pyr_rays());
  auto facets = dual_description_dd(c);
  const auto brute = oracle::brute_force_facets(c.rays());
  EXPECT_EQ(brute.size(), 9u);
  EXPECT_EQ(as_pairs(facets), brute);
}

TEST(DoubleDescription, RandomPolytopesAndOrderIndependence) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
    const std::size_t n = d + 2 + static_cast<std::size_t>(trial % 5);
    RationalMatrix pts(n, d);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) pts(i, j) = coef(rng);
    }
    Cone c = homogenized(pts);
    if (rank(c.rays()) != d + 1) continue;
    auto facets = dual_description_dd(c);
    EXPECT_EQ(as_pairs(facets), oracle::brute_force_facets(c.rays()));

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Cone shuffled(c.rays().select_rows(perm));
    auto facets2 = dual_description_dd(shuffled);
    ASSERT_EQ(facets.size(), facets2.size());
    for (std::size_t k = 0; k < facets.size(); ++k) EXPECT_EQ(facets[k].normal, facets2[k].normal);

    // Round trip: facets of the dual cone are the extreme rays again.
    RationalMatrix normals(0, d + 1);
    for (const auto& f : facets) normals.append_row(f.normal);
    std::vector<RationalVector> back;
    for (const auto& g : dual_description_dd(Cone(normals))) back.push_back(g.normal);
    std::vector<RationalVector> extreme;
    for (int i : irredundant_generators(c)) extreme.push_back(primitive_scaling(c.ray(static_cast<std::size_t>(i))));
    std::sort(back.begin(), back.end(), lex_less);
    std::sort(extreme.begin(), extreme.end(), lex_less);
    EXPECT_EQ(back, extreme);
  }
}

TEST(Incidence, CountsPerRowAndColumn) {
  Cone sq = homogenized(RationalMatrix{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  auto inc = incidence_matrix(sq, dual_description_dd(sq));
  for (const auto& row : inc) EXPECT_EQ(std::count(row.begin(), row.end(), true), 2);

  Cone simplex(RationalMatrix::identity(3));
  auto sinc = incidence_matrix(simplex, dual_description_dd(simplex));
  for (std::size_t i = 0; i < 3; ++i) {
    // facets come sorted by normal, so facet j is the coordinate plane x_{2-j} = 0
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(sinc[i][j], i != 2 - j);
  }

  Cone cube = homogenized(oracle::cube_vertices(3));
  auto facets = dual_description_dd(cube);
  auto cinc = incidence_matrix(cube, facets);
  for (const auto& row : cinc) EXPECT_EQ(std::count(row.begin(), row.end(), true), 3);
  for (std::size_t j = 0; j < facets.size(); ++j) {
    int col = 0;
    for (const auto& row : cinc) col += row[j];
    EXPECT_EQ(col, 4);
  }
}

TEST(GiftWrap, SquareAndCube) {
  Cone sq = homogenized(RationalMatrix{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  auto facets = dual_description_dd(sq);
  const Facet& x_le_1 = facet_with_normal(facets, {-1, 0, 1});
  Facet other = gift_wrap(sq, x_le_1, FaceSet{0});
  EXPECT_EQ(other.normal, (RationalVector{0, -1, 1}));

  Cone cube = homogenized(oracle::cube_vertices(3));
  auto cf = dual_description_dd(cube);
  const Facet& x1 = facet_with_normal(cf, {-1, 0, 0, 1});
  // vertex index bits: bit j set means coordinate j is +1; (1,1,1) = 7, (1,1,-1) = 3
  Facet x2 = gift_wrap(cube, x1, FaceSet{3, 7});
  EXPECT_EQ(x2.normal, (RationalVector{0, -1, 0, 1}));
  EXPECT_THROW(gift_wrap(cube, x1, FaceSet{7}), GeometryError);
  EXPECT_THROW(gift_wrap(cube, x1, FaceSet{0, 7}), GeometryError);
}

TEST(GiftWrap, DiamondPropertyEverywhere) {
  std::vector<Cone> cones = {homogenized(oracle::cube_vertices(3)), homogenized(oracle::cross_vertices(4)),
                             Cone(RationalMatrix::identity(4)), Cone(oracle::oct_pyr_rays())};
  for (const auto& c : cones) {
    auto facets = dual_description_dd(c);
    for (const auto& f : facets) {
      for (const auto& r : ridges_of(c, f)) {
        EXPECT_EQ(rank(c.rays().select_rows(r.indices())) + 2, c.dimension());
        Facet g = gift_wrap(c, f, r);
        EXPECT_NE(g.normal, f.normal);
        EXPECT_TRUE(r.is_subset_of(g.support));
        EXPECT_TRUE(std::find(facets.begin(), facets.end(), g) != facets.end());
        EXPECT_EQ(gift_wrap(c, g, r), f);
      }
    }
  }
}

TEST(Ridges, SmallFacets) {
  Cone cube = homogenized(oracle::cube_vertices(3));
  for (const auto& f : dual_description_dd(cube)) EXPECT_EQ(ridges_of(cube, f).size(), 4u);

  Cone simplex(RationalMatrix::identity(4));
  for (const auto& f : dual_description_dd(simplex)) {
    auto rs = ridges_of(simplex, f);
    ASSERT_EQ(rs.size(), 3u);
    for (const auto& r : rs) EXPECT_EQ(r.size(), 2u);
  }

  Cone oct = homogenized(oracle::cross_vertices(3));
  for (const auto& f : dual_description_dd(oct)) EXPECT_EQ(ridges_of(oct, f).size(), 3u);
}

TEST(Refinement, PulledCube) {
  const RationalMatrix pts = oracle::cube_vertices(3);
  Cone cube = homogenized(pts);
  auto coarse = dual_description_dd(cube);
  std::vector<int> id(8);
  std::iota(id.begin(), id.end(), 0);
  EXPECT_TRUE(boundary_complex_refines(coarse, coarse, id));

  RationalMatrix pulled = pts;
  for (std::size_t j = 0; j < 3; ++j) pulled(7, j) = Rational(11, 10);
  Cone pc = homogenized(pulled);
  auto fine = dual_description_dd(pc);
  EXPECT_EQ(fine.size(), 9u);
  EXPECT_TRUE(boundary_complex_refines(coarse, fine, id));

  Cone other = homogenized(RationalMatrix{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1},
                                          {3, 3, 3}});
  EXPECT_FALSE(boundary_complex_refines(coarse, dual_description_dd(other), id));
}
