#pragma once

#include "symcone/matrix.hpp"
#include "symcone/rational.hpp"

#include <vector>

namespace symcone {

/// coeffs · x + constant, read as "≥ 0" or "= 0" depending on where it sits.
struct AffineForm {
  RationalVector coeffs;
  Rational constant = 0;
};

/// maximize objective · x over free variables x.
struct LPProblem {
  RationalVector objective;
  std::vector<AffineForm> inequalities;
  std::vector<AffineForm> equalities;
};

enum class LPStatus { optimal, unbounded, infeasible };

/// Exact simplex outcome with a certificate that can be checked by substitution:
///  - optimal:    `point` is an optimal x; `certificate` holds multipliers y
///                (inequalities first, then equalities) with y_ineq ≥ 0,
///                objective = -Σ y_k a_k and objective·x = Σ y_k b_k.
///  - unbounded:  `point` is feasible; `certificate` is a ray r with a_i·r ≥ 0,
///                e·r = 0 on equalities and objective·r > 0.
///  - infeasible: `certificate` holds y with y_ineq ≥ 0, Σ y_k a_k = 0 and
///                Σ y_k b_k < 0 (Farkas).
struct LPResult {
  LPStatus status = LPStatus::infeasible;
  RationalVector certificate;
  RationalVector point;
  Rational value = 0;
};

/// Two-phase tableau simplex with Bland's lowest-index rule.
LPResult lp_solve(const LPProblem& problem);

/// Checks an LPResult against its problem by exact substitution.
bool verify_certificate(const LPProblem& problem, const LPResult& result);

/// True iff f(rays[i]) ≥ 0 is implied by f(rays[j]) ≥ 0 (j ≠ i) together with
/// f(rays[k]) = 0 for k in `equality_set`, over functionals f. Throws
/// std::out_of_range for a bad index.
bool is_redundant_generator(const RationalMatrix& rays, int i, const std::vector<int>& equality_set);

}  // namespace symcone
