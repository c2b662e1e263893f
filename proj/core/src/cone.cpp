#include "symcone/cone.hpp"

#include "symcone/dd.hpp"
#include "symcone/errors.hpp"
#include "symcone/lp.hpp"

#include <algorithm>
#include <numeric>

namespace symcone {

namespace {

Rational eval(const RationalVector& normal, std::span<const Rational> ray) {
  Rational s = 0;
  for (std::size_t k = 0; k < normal.size(); ++k) {
    if (sgn(normal[k]) != 0 && sgn(ray[k]) != 0) s += normal[k] * ray[k];
  }
  return s;
}

std::vector<int> pivot_columns(const RationalMatrix& m) {
  RationalMatrix copy = m;
  return row_reduce(copy);
}

// True iff some g has w·g > 0 for every nonzero generator w.
bool is_pointed(const RationalMatrix& w) {
  LPProblem lp;
  lp.objective.assign(w.cols(), 0);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    RationalVector r = w.row(i);
    if (is_zero(r)) continue;
    lp.inequalities.push_back(AffineForm{std::move(r), -1});
  }
  return lp_solve(lp).status != LPStatus::infeasible;
}

// -w_i ∈ cone(w).
bool negation_in_cone(const RationalMatrix& w, std::size_t i) {
  const std::size_t n = w.rows();
  const std::size_t d = w.cols();
  LPProblem lp;
  lp.objective.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    AffineForm f{RationalVector(n, 0), 0};
    f.coeffs[j] = 1;
    lp.inequalities.push_back(std::move(f));
  }
  for (std::size_t k = 0; k < d; ++k) {
    AffineForm f{RationalVector(n, 0), w(i, k)};
    for (std::size_t j = 0; j < n; ++j) f.coeffs[j] = w(j, k);
    lp.equalities.push_back(std::move(f));
  }
  return lp_solve(lp).status == LPStatus::optimal;
}

}  // namespace

Cone::Cone(RationalMatrix rays, Provenance provenance) : rays_(std::move(rays)), provenance_(std::move(provenance)) {
  if (provenance_.ambient_dimension == 0) provenance_.ambient_dimension = rays_.cols();
  if (provenance_.selected_coordinates.empty()) {
    provenance_.selected_coordinates.resize(rays_.cols());
    std::iota(provenance_.selected_coordinates.begin(), provenance_.selected_coordinates.end(), 0);
  }
  if (provenance_.source_rows.empty()) {
    provenance_.source_rows.resize(rays_.rows());
    std::iota(provenance_.source_rows.begin(), provenance_.source_rows.end(), 0);
  }
}

Cone homogenize(const RationalMatrix& points, const RationalMatrix& rays) {
  if (points.rows() + rays.rows() == 0) throw GeometryError("homogenize: no points or rays");
  if (points.rows() > 0 && rays.rows() > 0 && points.cols() != rays.cols()) {
    throw GeometryError("homogenize: points and rays have different dimensions");
  }
  const std::size_t d = points.rows() > 0 ? points.cols() : rays.cols();
  RationalMatrix out(points.rows() + rays.rows(), d + 1);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) out(i, j) = points(i, j);
    out(i, d) = 1;
  }
  for (std::size_t i = 0; i < rays.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) out(points.rows() + i, j) = rays(i, j);
  }
  Provenance p;
  p.homogenized = true;
  return Cone(std::move(out), std::move(p));
}

Cone reduce_to_pointed_fulldim(const Cone& c) {
  const RationalMatrix& w = c.rays();
  const std::size_t n = w.rows();
  const std::size_t d = w.cols();
  const std::size_t full_rank = rank(w);
  if (full_rank == 0) throw DegenerateConeError("cone is the zero subspace");

  RationalMatrix lineality;
  if (!is_pointed(w)) {
    RationalMatrix line_rays(0, d);
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_zero(w.row(i)) && negation_in_cone(w, i)) line_rays.append_row(w.row(i));
    }
    lineality = line_rays.select_rows(independent_rows(line_rays));
    if (lineality.rows() == full_rank) throw DegenerateConeError("cone is a linear subspace");
  }

  RationalMatrix projected = w;
  RationalMatrix projection;
  if (lineality.rows() > 0) {
    // P = I - Lᵀ (L Lᵀ)⁻¹ L
    const RationalMatrix lt = lineality.transpose();
    const RationalMatrix gram_inv = *inverse(lineality * lt);
    const RationalMatrix correction = lt * gram_inv * lineality;
    projection = RationalMatrix::identity(d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t s = 0; s < d; ++s) projection(r, s) -= correction(r, s);
    }
    projected = w * projection;
  }

  std::vector<int> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_zero(projected.row(i))) kept.push_back(static_cast<int>(i));
  }
  const RationalMatrix nonzero = projected.select_rows(kept);
  const std::vector<int> cols = pivot_columns(nonzero);

  Provenance p;
  p.homogenized = c.provenance().homogenized;
  p.ambient_dimension = d;
  p.lineality = lineality;
  p.projection = projection;
  p.selected_coordinates = cols;
  p.source_rows = kept;
  return Cone(nonzero.select_cols(cols), std::move(p));
}

RationalVector lift_normal(const Provenance& provenance, const RationalVector& normal) {
  if (normal.size() != provenance.selected_coordinates.size()) {
    throw GeometryError("lift_normal: normal has the wrong dimension");
  }
  RationalVector e(provenance.ambient_dimension, 0);
  for (std::size_t k = 0; k < normal.size(); ++k) {
    e[static_cast<std::size_t>(provenance.selected_coordinates[k])] = normal[k];
  }
  if (provenance.projection.rows() == 0) return e;
  return primitive_scaling(provenance.projection * e);
}

std::vector<int> irredundant_generators(const Cone& c) {
  const std::vector<Facet> facets = dual_description_dd(c);
  const std::size_t d = c.dimension();
  std::vector<int> out;
  std::vector<std::vector<int>> seen;
  for (std::size_t i = 0; i < c.num_rays(); ++i) {
    std::vector<int> tight;
    RationalMatrix normals(0, d);
    for (std::size_t j = 0; j < facets.size(); ++j) {
      if (facets[j].support.contains(static_cast<int>(i))) {
        tight.push_back(static_cast<int>(j));
        normals.append_row(facets[j].normal);
      }
    }
    if (rank(normals) + 1 != d) continue;
    if (std::find(seen.begin(), seen.end(), tight) != seen.end()) continue;
    seen.push_back(tight);
    out.push_back(static_cast<int>(i));
  }
  return out;
}

Facet make_facet(const Cone& c, const RationalVector& normal) {
  if (normal.size() != c.dimension()) throw GeometryError("make_facet: normal has the wrong dimension");
  Facet f;
  f.normal = primitive_scaling(normal);
  std::vector<int> support;
  for (std::size_t i = 0; i < c.num_rays(); ++i) {
    const int s = sgn(eval(f.normal, c.rays().row_span(i)));
    if (s < 0) throw GeometryError("make_facet: normal is negative on generator " + std::to_string(i + 1));
    if (s == 0) support.push_back(static_cast<int>(i));
  }
  f.support = FaceSet(std::move(support));
  if (rank(c.rays().select_rows(f.support.indices())) + 1 != c.dimension()) {
    throw GeometryError("make_facet: support does not span a hyperplane");
  }
  return f;
}

Facet facet_from_support(const Cone& c, const FaceSet& support) {
  const RationalMatrix sub = c.rays().select_rows(support.indices());
  const RationalMatrix k = kernel_basis(sub);
  if (k.rows() != 1) throw GeometryError("facet_from_support: generators do not span a hyperplane");
  RationalVector normal = k.row(0);
  int orientation = 0;
  for (std::size_t i = 0; i < c.num_rays(); ++i) {
    const int s = sgn(eval(normal, c.rays().row_span(i)));
    if (s == 0) continue;
    if (orientation == 0) {
      orientation = s;
    } else if (s != orientation) {
      throw GeometryError("facet_from_support: generators do not lie on a face");
    }
  }
  if (orientation < 0) {
    for (auto& x : normal) x = -x;
  }
  return make_facet(c, normal);
}

std::vector<Facet> dual_description_dd(const Cone& c) {
  const std::size_t d = c.dimension();
  std::vector<IntegerVector> rows;
  rows.reserve(c.num_rays());
  for (std::size_t i = 0; i < c.num_rays(); ++i) rows.push_back(primitive_integer(c.ray(i)));
  std::vector<Facet> out;
  for (const auto& g : dd_extreme_rays(rows, d)) {
    Facet f;
    f.normal = to_rational(g);
    std::vector<int> support;
    for (std::size_t i = 0; i < c.num_rays(); ++i) {
      if (sgn(eval(f.normal, c.rays().row_span(i))) == 0) support.push_back(static_cast<int>(i));
    }
    f.support = FaceSet(std::move(support));
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) { return lex_less(a.normal, b.normal); });
  return out;
}

std::vector<std::vector<bool>> incidence_matrix(const Cone& c, const std::vector<Facet>& facets) {
  std::vector<std::vector<bool>> m(c.num_rays(), std::vector<bool>(facets.size(), false));
  for (std::size_t i = 0; i < c.num_rays(); ++i) {
    for (std::size_t j = 0; j < facets.size(); ++j) {
      m[i][j] = sgn(eval(facets[j].normal, c.rays().row_span(i))) == 0;
    }
  }
  return m;
}

Facet gift_wrap(const Cone& c, const Facet& f, const FaceSet& ridge) {
  const std::size_t d = c.dimension();
  if (!ridge.is_subset_of(f.support)) throw GeometryError("gift_wrap: ridge is not contained in the facet");
  const RationalMatrix r = c.rays().select_rows(ridge.indices());
  if (d < 2 || rank(r) + 2 != d) throw GeometryError("gift_wrap: ridge does not have rank d-2");

  const RationalMatrix k = kernel_basis(r);
  RationalVector h;
  for (std::size_t row = 0; row < k.rows() && h.empty(); ++row) {
    RationalMatrix pair(0, d);
    pair.append_row(f.normal);
    pair.append_row(k.row(row));
    if (rank(pair) == 2) h = k.row(row);
  }
  if (h.empty()) throw GeometryError("gift_wrap: ridge does not have rank d-2");

  int orientation = 0;
  for (int j : f.support) {
    if (ridge.contains(j)) continue;
    const int s = sgn(eval(h, c.rays().row_span(static_cast<std::size_t>(j))));
    if (s == 0) continue;
    if (orientation == 0) {
      orientation = s;
    } else if (s != orientation) {
      throw GeometryError("gift_wrap: generator set is not a face of the facet");
    }
  }
  if (orientation == 0) throw GeometryError("gift_wrap: ridge spans the whole facet");
  if (orientation < 0) {
    for (auto& x : h) x = -x;
  }

  bool have_alpha = false;
  Rational alpha;
  for (std::size_t j = 0; j < c.num_rays(); ++j) {
    const Rational fj = eval(f.normal, c.rays().row_span(j));
    if (sgn(fj) == 0) continue;
    const Rational cand = -eval(h, c.rays().row_span(j)) / fj;
    if (!have_alpha || cand > alpha) {
      alpha = cand;
      have_alpha = true;
    }
  }
  if (!have_alpha) throw GeometryError("gift_wrap: cone is not full-dimensional");

  RationalVector g(d);
  for (std::size_t t = 0; t < d; ++t) g[t] = alpha * f.normal[t] + h[t];
  return make_facet(c, g);
}

Cone subcone(const Cone& c, const FaceSet& support) {
  const RationalMatrix rows = c.rays().select_rows(support.indices());
  const std::vector<int> cols = pivot_columns(rows);
  Provenance p;
  p.ambient_dimension = c.dimension();
  p.selected_coordinates = cols;
  p.source_rows = support.indices();
  return Cone(rows.select_cols(cols), std::move(p));
}

std::vector<FaceSet> ridges_of(const Cone& c, const Facet& f) {
  const Cone sub = subcone(c, f.support);
  std::vector<FaceSet> out;
  for (const Facet& g : dual_description_dd(sub)) {
    std::vector<int> global;
    global.reserve(g.support.size());
    for (int local : g.support) global.push_back(f.support[static_cast<std::size_t>(local)]);
    out.emplace_back(std::move(global));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool boundary_complex_refines(const std::vector<Facet>& coarse, const std::vector<Facet>& fine,
                              const std::vector<int>& nu) {
  std::vector<int> inv(nu.size(), -1);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const int t = nu[i];
    if (t < 0 || static_cast<std::size_t>(t) >= nu.size() || inv[static_cast<std::size_t>(t)] != -1) {
      throw GeometryError("boundary_complex_refines: nu is not a bijection");
    }
    inv[static_cast<std::size_t>(t)] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> covered(coarse.size());
  for (const Facet& g : fine) {
    std::vector<int> mapped;
    for (int j : g.support) {
      if (static_cast<std::size_t>(j) >= inv.size()) return false;
      mapped.push_back(inv[static_cast<std::size_t>(j)]);
    }
    const FaceSet image(std::move(mapped));
    int owner = -1;
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      if (!image.is_subset_of(coarse[k].support)) continue;
      if (owner != -1) return false;
      owner = static_cast<int>(k);
    }
    if (owner == -1) return false;
    auto& cov = covered[static_cast<std::size_t>(owner)];
    cov.insert(cov.end(), image.begin(), image.end());
  }
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    if (FaceSet(covered[k]) != coarse[k].support) return false;
  }
  return true;
}

}  // namespace symcone
