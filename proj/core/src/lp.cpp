#include "symcone/lp.hpp"

#include <stdexcept>

namespace symcone {

namespace {

// Standard-form tableau for: maximize c·z subject to A z = beta, z ≥ 0, where
// the last `num_artificial` columns form an identity block at start.
class Tableau {
 public:
  Tableau(RationalMatrix a, RationalVector beta, std::size_t num_artificial)
      : t_(std::move(a)), rhs_(std::move(beta)), num_art_(num_artificial) {
    basis_.resize(t_.rows());
    for (std::size_t k = 0; k < t_.rows(); ++k) basis_[k] = t_.cols() - num_art_ + k;
  }

  enum class Outcome { optimal, unbounded };

  // Bland's rule: lowest-index improving column, lowest-index leaving variable.
  Outcome run(const RationalVector& cost, bool allow_artificial, std::size_t& unbounded_column) {
    const std::size_t limit = allow_artificial ? t_.cols() : t_.cols() - num_art_;
    while (true) {
      std::size_t entering = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (is_basic(j)) continue;
        if (sgn(reduced_cost(cost, j)) > 0) {
          entering = j;
          break;
        }
      }
      if (entering == limit) return Outcome::optimal;
      std::size_t leaving = t_.rows();
      Rational best_ratio;
      for (std::size_t k = 0; k < t_.rows(); ++k) {
        if (sgn(t_(k, entering)) <= 0) continue;
        Rational ratio = rhs_[k] / t_(k, entering);
        if (leaving == t_.rows() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[k] < basis_[leaving])) {
          leaving = k;
          best_ratio = ratio;
        }
      }
      if (leaving == t_.rows()) {
        unbounded_column = entering;
        return Outcome::unbounded;
      }
      pivot(leaving, entering);
    }
  }

  Rational reduced_cost(const RationalVector& cost, std::size_t j) const {
    Rational d = cost[j];
    for (std::size_t k = 0; k < t_.rows(); ++k) {
      const Rational& cb = cost[basis_[k]];
      if (sgn(cb) != 0 && sgn(t_(k, j)) != 0) d -= cb * t_(k, j);
    }
    return d;
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / t_(row, col);
    for (std::size_t j = 0; j < t_.cols(); ++j) {
      if (sgn(t_(row, j)) != 0) t_(row, j) *= inv;
    }
    rhs_[row] *= inv;
    for (std::size_t k = 0; k < t_.rows(); ++k) {
      if (k == row || sgn(t_(k, col)) == 0) continue;
      const Rational f = t_(k, col);
      for (std::size_t j = 0; j < t_.cols(); ++j) {
        if (sgn(t_(row, j)) != 0) t_(k, j) -= f * t_(row, j);
      }
      if (sgn(rhs_[row]) != 0) rhs_[k] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  // Pivots basic artificials at level zero out of the basis where possible.
  void drive_out_artificials() {
    const std::size_t first_art = t_.cols() - num_art_;
    for (std::size_t k = 0; k < t_.rows(); ++k) {
      if (basis_[k] < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (!is_basic(j) && sgn(t_(k, j)) != 0) {
          pivot(k, j);
          break;
        }
      }
    }
  }

  // Simplex multipliers pi = c_B B^{-1}, read off the artificial block.
  RationalVector multipliers(const RationalVector& cost) const {
    const std::size_t first_art = t_.cols() - num_art_;
    RationalVector pi(t_.rows());
    for (std::size_t col = 0; col < t_.rows(); ++col) {
      Rational s = 0;
      for (std::size_t k = 0; k < t_.rows(); ++k) {
        const Rational& cb = cost[basis_[k]];
        if (sgn(cb) != 0 && sgn(t_(k, first_art + col)) != 0) s += cb * t_(k, first_art + col);
      }
      pi[col] = s;
    }
    return pi;
  }

  RationalVector values() const {
    RationalVector z(t_.cols());
    for (std::size_t k = 0; k < t_.rows(); ++k) z[basis_[k]] = rhs_[k];
    return z;
  }

  RationalVector ray(std::size_t entering) const {
    RationalVector z(t_.cols());
    z[entering] = 1;
    for (std::size_t k = 0; k < t_.rows(); ++k) z[basis_[k]] = -t_(k, entering);
    return z;
  }

 private:
  bool is_basic(std::size_t j) const {
    for (auto b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  RationalMatrix t_;
  RationalVector rhs_;
  std::size_t num_art_;
  std::vector<std::size_t> basis_;
};

std::size_t num_variables(const LPProblem& p) { return p.objective.size(); }

void check_shapes(const LPProblem& p) {
  const std::size_t nv = num_variables(p);
  for (const auto& f : p.inequalities) {
    if (f.coeffs.size() != nv) throw std::invalid_argument("lp_solve: inequality dimension mismatch");
  }
  for (const auto& f : p.equalities) {
    if (f.coeffs.size() != nv) throw std::invalid_argument("lp_solve: equality dimension mismatch");
  }
}

}  // namespace

LPResult lp_solve(const LPProblem& problem) {
  check_shapes(problem);
  const std::size_t nv = num_variables(problem);
  const std::size_t ni = problem.inequalities.size();
  const std::size_t ne = problem.equalities.size();
  const std::size_t m = ni + ne;
  const std::size_t cols = 2 * nv + ni + m;

  RationalMatrix a(m, cols);
  RationalVector beta(m);
  std::vector<int> row_sign(m, 1);
  for (std::size_t k = 0; k < m; ++k) {
    const AffineForm& f = k < ni ? problem.inequalities[k] : problem.equalities[k - ni];
    const Rational rhs = -f.constant;
    row_sign[k] = sgn(rhs) < 0 ? -1 : 1;
    const int s = row_sign[k];
    for (std::size_t j = 0; j < nv; ++j) {
      a(k, j) = s * f.coeffs[j];
      a(k, nv + j) = -s * f.coeffs[j];
    }
    if (k < ni) a(k, 2 * nv + k) = -s;
    a(k, 2 * nv + ni + k) = 1;
    beta[k] = s * rhs;
  }

  Tableau tab(std::move(a), std::move(beta), m);
  std::size_t unbounded_col = 0;

  RationalVector phase1_cost(cols);
  for (std::size_t k = 0; k < m; ++k) phase1_cost[2 * nv + ni + k] = -1;
  tab.run(phase1_cost, true, unbounded_col);

  LPResult result;
  const RationalVector z1 = tab.values();
  Rational infeasibility = 0;
  for (std::size_t k = 0; k < m; ++k) infeasibility += z1[2 * nv + ni + k];
  if (sgn(infeasibility) > 0) {
    const RationalVector pi = tab.multipliers(phase1_cost);
    result.status = LPStatus::infeasible;
    result.certificate.resize(m);
    for (std::size_t k = 0; k < m; ++k) result.certificate[k] = -pi[k] * row_sign[k];
    return result;
  }

  tab.drive_out_artificials();
  RationalVector cost(cols);
  for (std::size_t j = 0; j < nv; ++j) {
    cost[j] = problem.objective[j];
    cost[nv + j] = -problem.objective[j];
  }
  const auto outcome = tab.run(cost, false, unbounded_col);
  const RationalVector z = tab.values();
  result.point.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) result.point[j] = z[j] - z[nv + j];

  if (outcome == Tableau::Outcome::unbounded) {
    const RationalVector dz = tab.ray(unbounded_col);
    result.status = LPStatus::unbounded;
    result.certificate.resize(nv);
    for (std::size_t j = 0; j < nv; ++j) result.certificate[j] = dz[j] - dz[nv + j];
    return result;
  }

  const RationalVector pi = tab.multipliers(cost);
  result.status = LPStatus::optimal;
  result.certificate.resize(m);
  for (std::size_t k = 0; k < m; ++k) result.certificate[k] = -pi[k] * row_sign[k];
  result.value = dot(problem.objective, result.point);
  return result;
}

bool verify_certificate(const LPProblem& problem, const LPResult& result) {
  const std::size_t nv = num_variables(problem);
  const std::size_t ni = problem.inequalities.size();
  auto feasible = [&](const RationalVector& x) {
    if (x.size() != nv) return false;
    for (const auto& f : problem.inequalities) {
      if (sgn(dot(f.coeffs, x) + f.constant) < 0) return false;
    }
    for (const auto& f : problem.equalities) {
      if (sgn(dot(f.coeffs, x) + f.constant) != 0) return false;
    }
    return true;
  };
  auto combination = [&](const RationalVector& y, RationalVector& coeffs, Rational& constant) {
    coeffs.assign(nv, 0);
    constant = 0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      const AffineForm& f = k < ni ? problem.inequalities[k] : problem.equalities[k - ni];
      if (k < ni && sgn(y[k]) < 0) return false;
      for (std::size_t j = 0; j < nv; ++j) coeffs[j] += y[k] * f.coeffs[j];
      constant += y[k] * f.constant;
    }
    return true;
  };
  const std::size_t m = ni + problem.equalities.size();

  switch (result.status) {
    case LPStatus::optimal: {
      if (!feasible(result.point) || result.certificate.size() != m) return false;
      RationalVector coeffs;
      Rational constant;
      if (!combination(result.certificate, coeffs, constant)) return false;
      for (std::size_t j = 0; j < nv; ++j) {
        if (coeffs[j] != -problem.objective[j]) return false;
      }
      return dot(problem.objective, result.point) == constant;
    }
    case LPStatus::unbounded: {
      if (!feasible(result.point) || result.certificate.size() != nv) return false;
      const RationalVector& r = result.certificate;
      for (const auto& f : problem.inequalities) {
        if (sgn(dot(f.coeffs, r)) < 0) return false;
      }
      for (const auto& f : problem.equalities) {
        if (sgn(dot(f.coeffs, r)) != 0) return false;
      }
      return sgn(dot(problem.objective, r)) > 0;
    }
    case LPStatus::infeasible: {
      if (result.certificate.size() != m) return false;
      RationalVector coeffs;
      Rational constant;
      if (!combination(result.certificate, coeffs, constant)) return false;
      return is_zero(coeffs) && sgn(constant) < 0;
    }
  }
  return false;
}

bool is_redundant_generator(const RationalMatrix& rays, int i, const std::vector<int>& equality_set) {
  const auto n = static_cast<int>(rays.rows());
  if (i < 0 || i >= n) throw std::out_of_range("is_redundant_generator: index out of range");
  for (int k : equality_set) {
    if (k < 0 || k >= n) throw std::out_of_range("is_redundant_generator: equality index out of range");
  }
  // minimize f(v_i) subject to the remaining system and f(v_i) ≥ -1.
  LPProblem lp;
  const RationalVector vi = rays.row(static_cast<std::size_t>(i));
  lp.objective.resize(vi.size());
  for (std::size_t j = 0; j < vi.size(); ++j) lp.objective[j] = -vi[j];
  std::vector<bool> in_eq(static_cast<std::size_t>(n), false);
  for (int k : equality_set) in_eq[static_cast<std::size_t>(k)] = true;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    AffineForm f{rays.row(static_cast<std::size_t>(j)), 0};
    if (in_eq[static_cast<std::size_t>(j)]) {
      lp.equalities.push_back(std::move(f));
    } else {
      lp.inequalities.push_back(std::move(f));
    }
  }
  lp.inequalities.push_back(AffineForm{vi, 1});
  if (in_eq[static_cast<std::size_t>(i)]) lp.equalities.push_back(AffineForm{vi, 0});
  const LPResult r = lp_solve(lp);
  if (r.status != LPStatus::optimal) return r.status == LPStatus::infeasible;
  return sgn(r.value) <= 0;
}

}  // namespace symcone
