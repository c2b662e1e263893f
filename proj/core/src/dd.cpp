#include "symcone/dd.hpp"

#include "symcone/errors.hpp"
#include "symcone/matrix.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <numeric>

namespace symcone {

namespace {

struct DDRay {
  IntegerVector g;
  boost::dynamic_bitset<> zeros;
};

Integer inner(const IntegerVector& a, const IntegerVector& b) {
  Integer s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (sgn(a[k]) != 0 && sgn(b[k]) != 0) s += a[k] * b[k];
  }
  return s;
}

void make_primitive(IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

bool lex_less_int(const IntegerVector& a, const IntegerVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    const int c = cmp(a[k], b[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace

std::vector<IntegerVector> dd_extreme_rays(const std::vector<IntegerVector>& rows, std::size_t dim) {
  const std::size_t n = rows.size();
  for (const auto& r : rows) {
    if (r.size() != dim) throw GeometryError("dd: row dimension mismatch");
  }
  if (dim == 0) return {};

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lex_less_int(rows[static_cast<std::size_t>(a)], rows[static_cast<std::size_t>(b)]); });

  RationalMatrix ordered(n, dim);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < dim; ++j) ordered(k, j) = Rational(rows[static_cast<std::size_t>(order[k])][j]);
  }
  const std::vector<int> indep = independent_rows(ordered);
  if (indep.size() != dim) throw GeometryError("dd: constraint rows do not span the space");

  const RationalMatrix init = ordered.select_rows(indep);
  const RationalMatrix inv = *inverse(init);

  std::vector<bool> processed_pos(n, false);
  std::vector<DDRay> rays;
  rays.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    DDRay r;
    r.g = primitive_integer(inv.col(k));
    r.zeros.resize(n);
    for (std::size_t j = 0; j < dim; ++j) {
      if (j != k) r.zeros.set(static_cast<std::size_t>(order[static_cast<std::size_t>(indep[j])]));
    }
    rays.push_back(std::move(r));
  }
  for (int p : indep) processed_pos[static_cast<std::size_t>(p)] = true;

  const std::size_t need = dim >= 2 ? dim - 2 : 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (processed_pos[pos]) continue;
    const auto row_index = static_cast<std::size_t>(order[pos]);
    const IntegerVector& a = rows[row_index];

    std::vector<Integer> value(rays.size());
    std::vector<std::size_t> plus, minus;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      value[r] = inner(a, rays[r].g);
      const int s = sgn(value[r]);
      if (s > 0) {
        plus.push_back(r);
      } else if (s < 0) {
        minus.push_back(r);
      }
    }
    if (minus.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r) {
        if (sgn(value[r]) == 0) rays[r].zeros.set(row_index);
      }
      continue;
    }

    std::vector<DDRay> created;
    for (std::size_t p : plus) {
      for (std::size_t q : minus) {
        boost::dynamic_bitset<> common = rays[p].zeros & rays[q].zeros;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r != p && r != q && common.is_subset_of(rays[r].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        DDRay nr;
        nr.g.resize(dim);
        const Integer& vp = value[p];
        const Integer neg_vq = -value[q];
        for (std::size_t j = 0; j < dim; ++j) nr.g[j] = vp * rays[q].g[j] + neg_vq * rays[p].g[j];
        make_primitive(nr.g);
        nr.zeros = std::move(common);
        nr.zeros.set(row_index);
        created.push_back(std::move(nr));
      }
    }

    std::vector<DDRay> next;
    next.reserve(rays.size() - minus.size() + created.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      const int s = sgn(value[r]);
      if (s < 0) continue;
      if (s == 0) rays[r].zeros.set(row_index);
      next.push_back(std::move(rays[r]));
    }
    for (auto& c : created) next.push_back(std::move(c));
    rays = std::move(next);
  }

  std::vector<IntegerVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.g));
  std::sort(out.begin(), out.end(), lex_less_int);
  return out;
}

}  // namespace symcone
