#include "symcone/lp.hpp"
#include "symcone/matrix.hpp"
#include "symcone/rational.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace symcone;

TEST(Rational, ParsesFractions) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, PrimitiveScalingKeepsOrientation) {
  EXPECT_EQ(primitive_scaling({Rational(-1, 2), 0, Rational(3, 4)}), (RationalVector{-2, 0, 3}));
  EXPECT_EQ(primitive_scaling({0, 0}), (RationalVector{0, 0}));
}

TEST(Matrix, RankAndKernel) {
  RationalMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(rank(m), 2u);
  RationalMatrix k = kernel_basis(m);
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_TRUE(is_zero(m * k.row(0)));
  EXPECT_EQ(rank(RationalMatrix::identity(4)), 4u);
  EXPECT_EQ(kernel_basis(RationalMatrix::identity(3)).rows(), 0u);
}

TEST(Matrix, SolveAndInverse) {
  RationalMatrix m{{2, 1}, {1, 3}};
  auto x = solve_linear(m, {3, 5});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (RationalVector{Rational(4, 5), Rational(7, 5)}));
  auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ(m * *inv, RationalMatrix::identity(2));
  EXPECT_FALSE(inverse(RationalMatrix{{1, 2}, {2, 4}}));
  EXPECT_FALSE(solve_linear(RationalMatrix{{1, 1}, {1, 1}}, {1, 2}));
}

TEST(Matrix, IndependentRowsGreedy) {
  RationalMatrix m{{1, 0}, {2, 0}, {0, 1}, {1, 1}};
  EXPECT_EQ(independent_rows(m), (std::vector<int>{0, 2}));
}

TEST(LP, OptimalWithCertificate) {
  // max x + y, x ≤ 2, y ≤ 3, x + 2y ≤ 7
  LPProblem p;
  p.objective = {1, 1};
  p.inequalities = {{{-1, 0}, 2}, {{0, -1}, 3}, {{-1, -2}, 7}};
  LPResult r = lp_solve(p);
  ASSERT_EQ(r.status, LPStatus::optimal);
  EXPECT_EQ(r.value, Rational(9, 2));
  EXPECT_TRUE(verify_certificate(p, r));
}

TEST(LP, UnboundedAndInfeasible) {
  LPProblem u;
  u.objective = {1, 0};
  u.inequalities = {{{1, 0}, 0}};
  LPResult ru = lp_solve(u);
  ASSERT_EQ(ru.status, LPStatus::unbounded);
  EXPECT_TRUE(verify_certificate(u, ru));

  LPProblem f;
  f.objective = {0};
  f.inequalities = {{{1}, -2}, {{-1}, 1}};
  LPResult rf = lp_solve(f);
  ASSERT_EQ(rf.status, LPStatus::infeasible);
  EXPECT_TRUE(verify_certificate(f, rf));
}

TEST(LP, Equalities) {
  // max x - y with x + y = 1, x, y ≥ 0
  LPProblem p;
  p.objective = {1, -1};
  p.inequalities = {{{1, 0}, 0}, {{0, 1}, 0}};
  p.equalities = {{{1, 1}, -1}};
  LPResult r = lp_solve(p);
  ASSERT_EQ(r.status, LPStatus::optimal);
  EXPECT_EQ(r.value, 1);
  EXPECT_TRUE(verify_certificate(p, r));
}

// Compare against the best vertex of random bounded problems, found by
// solving every square subsystem of the constraints.
TEST(LP, RandomBoxedProblemsMatchVertexEnumeration) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t nv = 2 + static_cast<std::size_t>(trial % 3);
    LPProblem p;
    for (std::size_t j = 0; j < nv; ++j) p.objective.push_back(coef(rng));
    for (std::size_t j = 0; j < nv; ++j) {
      AffineForm up{RationalVector(nv, 0), 10}, down{RationalVector(nv, 0), 10};
      up.coeffs[j] = -1;
      down.coeffs[j] = 1;
      p.inequalities.push_back(up);
      p.inequalities.push_back(down);
    }
    while (p.inequalities.size() < 8 + nv) {
      AffineForm f{RationalVector(nv, 0), coef(rng) + 6};
      for (auto& x : f.coeffs) x = coef(rng);
      p.inequalities.push_back(f);
    }
    LPResult r = lp_solve(p);
    ASSERT_TRUE(verify_certificate(p, r));

    bool any = false;
    Rational best;
    const auto& in = p.inequalities;
    oracle::for_each_subset(static_cast<int>(in.size()), static_cast<int>(nv), [&](const std::vector<int>& s) {
      RationalMatrix m(nv, nv);
      RationalVector b(nv);
      for (std::size_t k = 0; k < nv; ++k) {
        const auto& f = in[static_cast<std::size_t>(s[k])];
        for (std::size_t j = 0; j < nv; ++j) m(k, j) = f.coeffs[j];
        b[k] = -f.constant;
      }
      if (rank(m) < nv) return;
      auto x = solve_linear(m, b);
      bool ok = true;
      for (const auto& f : in) ok = ok && sgn(dot(f.coeffs, *x) + f.constant) >= 0;
      if (!ok) return;
      Rational v = dot(p.objective, *x);
      if (!any || v > best) best = v;
      any = true;
    });
    if (!any) {
      EXPECT_EQ(r.status, LPStatus::infeasible);
    } else {
      ASSERT_EQ(r.status, LPStatus::optimal);
      EXPECT_EQ(r.value, best);
    }
  }
}

TEST(LP, SmallVerdicts) {
  LPProblem a;
  a.objective = {1};
  a.inequalities = {{{1}, 0}, {{-1}, 1}};
  LPResult ra = lp_solve(a);
  ASSERT_EQ(ra.status, LPStatus::optimal);
  EXPECT_EQ(ra.point, (RationalVector{1}));

  LPProblem b;
  b.objective = {1};
  b.inequalities = {{{1}, 0}};
  EXPECT_EQ(lp_solve(b).status, LPStatus::unbounded);

  LPProblem c;
  c.objective = {0};
  c.inequalities = {{{1}, -1}, {{-1}, 0}};
  EXPECT_EQ(lp_solve(c).status, LPStatus::infeasible);
}

TEST(Matrix, RankNullityOnRandomMatrices) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        m(i, j) = Rational(coef(rng), 1 + (trial % 3));
        m(i, j).canonicalize();
      }
    }
    EXPECT_EQ(rank(m), r - kernel_basis(m.transpose()).rows());
    const RationalMatrix k = kernel_basis(m);
    EXPECT_EQ(k.rows(), c - rank(m));
    for (std::size_t i = 0; i < k.rows(); ++i) EXPECT_TRUE(is_zero(m * k.row(i)));
    RationalVector x(c);
    for (auto& v : x) v = coef(rng);
    const RationalVector b = m * x;
    auto y = solve_linear(m, b);
    ASSERT_TRUE(y);
    EXPECT_EQ(m * *y, b);
  }
}

TEST(Matrix, SmallKernels) {
  EXPECT_EQ(rank(RationalMatrix(2, 4)), 0u);
  EXPECT_EQ(rank(RationalMatrix{{1, 0}, {0, 1}, {1, 1}}), 2u);
  const RationalMatrix k = kernel_basis(RationalMatrix{{1, -1, 0}, {0, 1, -1}});
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_EQ(primitive_scaling(k.row(0)), (RationalVector{1, 1, 1}));
  EXPECT_EQ(kernel_basis(RationalMatrix{{1, 1, 1}}).rows(), 2u);
  EXPECT_EQ(*solve_linear(RationalMatrix::identity(2), {Rational(2, 3), -1}), (RationalVector{Rational(2, 3), -1}));
}

TEST(LP, RedundantGeneratorSquare) {
  RationalMatrix sq{{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}};
  EXPECT_FALSE(is_redundant_generator(sq, 0, {1}));
  // Oracle: with f(v_1) = 0 imposed, f(v_0) ≥ 0 is implied iff no f violates it.
  // f = (-1,-1,0) vanishes on v_1, is ≥ 0 on v_2, v_3 and negative on v_0.
  const RationalVector f{-1, -1, 0};
  EXPECT_EQ(dot(f, sq.row(1)), 0);
  EXPECT_GE(dot(f, sq.row(2)), 0);
  EXPECT_GE(dot(f, sq.row(3)), 0);
  EXPECT_LT(dot(f, sq.row(0)), 0);

  RationalMatrix simplex = RationalMatrix::identity(3);
  for (int i = 0; i < 3; ++i) EXPECT_FALSE(is_redundant_generator(simplex, i, {}));
  RationalMatrix dup{{1, 0}, {0, 1}, {1, 0}};
  EXPECT_TRUE(is_redundant_generator(dup, 2, {}));
}

TEST(LP, RedundantGenerator) {
  // (1,1,1) is the sum of two others in cone{(1,0,1),(0,1,1),(1,1,2),(0,0,1)}
  RationalMatrix rays{{1, 0, 1}, {0, 1, 1}, {1, 1, 2}, {0, 0, 1}};
  EXPECT_TRUE(is_redundant_generator(rays, 2, {}));
  EXPECT_FALSE(is_redundant_generator(rays, 0, {}));
  EXPECT_THROW(is_redundant_generator(rays, 9, {}), std::out_of_range);
}
