#include "symcone/cascade.hpp"

#include "symcone/errors.hpp"
#include "symcone/orbit_db.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace symcone {

std::vector<int> cascade_order(const Cone& c, const PermGroup& g) {
  const std::size_t n = c.num_rays();
  const std::size_t d = c.dimension();
  std::vector<int> lifted;
  std::vector<bool> used(n, false);
  PermGroup current = g;
  while (lifted.size() + d < n) {
    int best = -1;
    Integer best_order = 0;
    PermGroup best_group;
    for (const auto& orbit : current.point_orbits()) {
      const int x = orbit.front();
      if (used[static_cast<std::size_t>(x)]) continue;
      std::vector<int> rest;
      for (std::size_t i = 0; i < n; ++i) {
        if (!used[i] && static_cast<int>(i) != x) rest.push_back(static_cast<int>(i));
      }
      if (rank(c.rays().select_rows(rest)) < d) continue;
      PermGroup stab = set_stabilizer(current, FaceSet{x});
      Integer order = stab.order();
      if (best < 0 || order > best_order || (order == best_order && x < best)) {
        best = x;
        best_order = order;
        best_group = std::move(stab);
      }
    }
    if (best < 0) throw GeometryError("cascade_order: rays do not span");
    used[static_cast<std::size_t>(best)] = true;
    lifted.push_back(best);
    current = std::move(best_group);
  }
  return lifted;
}

Cone simplicial_lift(const Cone& c, const std::vector<int>& lifted) {
  const std::size_t n = c.num_rays();
  const std::size_t d = c.dimension();
  if (lifted.size() + d != n) throw GeometryError("simplicial_lift: wrong number of lifted rays");
  RationalMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) w(i, j) = c.rays()(i, j);
  }
  for (std::size_t p = 0; p < lifted.size(); ++p) w(static_cast<std::size_t>(lifted[p]), d + p) = 1;
  if (rank(w) != n) throw GeometryError("simplicial_lift: unlifted rays do not span");
  return Cone(std::move(w));
}

Cone projected_lift(const Cone& lift, std::size_t dimension, std::size_t remaining) {
  std::vector<int> cols(dimension + remaining);
  std::iota(cols.begin(), cols.end(), 0);
  return Cone(lift.rays().select_cols(cols));
}

CascadeState cascade_start(const Cone& c, const PermGroup& g, std::vector<int> lifted) {
  const int n = static_cast<int>(c.num_rays());
  CascadeState s;
  s.remaining = lifted.size();
  s.group = set_stabilizer(g, FaceSet(lifted));
  s.lifted = std::move(lifted);
  // Facets of a simplicial cone omit exactly one ray.
  for (const auto& orbit : s.group.point_orbits()) {
    std::vector<int> rest;
    for (int i = 0; i < n; ++i) {
      if (i != orbit.front()) rest.push_back(i);
    }
    s.facet_reps.push_back(canonical_representative(s.group, FaceSet(rest)));
  }
  std::sort(s.facet_reps.begin(), s.facet_reps.end());
  return s;
}

CascadeState project_step(const Cone& lift, std::size_t dimension, const PermGroup& g, const CascadeState& s) {
  if (s.remaining == 0) throw std::logic_error("project_step: nothing left to project");
  const std::size_t dim = dimension + s.remaining;
  const std::size_t t = dim - 1;
  const int leaving = s.lifted[s.remaining - 1];
  const Cone cur = projected_lift(lift, dimension, s.remaining);

  const PermGroup k = set_stabilizer(s.group, FaceSet{leaving});
  const std::vector<FaceSet> k_reps = split(s.facet_reps, s.group, k);

  std::map<FaceSet, int> t_sign;
  for (const auto& rep : s.facet_reps) {
    for (const auto& f : orbit_of_set(s.group, rep)) t_sign.emplace(f, sign(facet_from_support(cur, f).normal[t]));
  }

  std::set<FaceSet> found;
  for (const auto& rep : k_reps) {
    const int sg = t_sign.at(rep);
    if (sg == 0) {
      found.insert(canonical_representative(k, rep));
      continue;
    }
    if (sg < 0) continue;
    for (const auto& [other, osg] : t_sign) {
      if (osg >= 0) continue;
      FaceSet z = rep.intersect(other);
      if (z.size() + 2 < dim) continue;
      if (rank(cur.rays().select_rows(z.indices())) + 2 != dim) continue;
      found.insert(canonical_representative(k, z));
    }
  }

  CascadeState next;
  next.lifted = s.lifted;
  next.remaining = s.remaining - 1;
  next.group = set_stabilizer(g, FaceSet(std::vector<int>(s.lifted.begin(), s.lifted.begin() + static_cast<std::ptrdiff_t>(next.remaining))));
  for (const auto& f : found) next.facet_reps.push_back(canonical_representative(next.group, f));
  std::sort(next.facet_reps.begin(), next.facet_reps.end());
  next.facet_reps.erase(std::unique(next.facet_reps.begin(), next.facet_reps.end()), next.facet_reps.end());
  return next;
}

std::vector<Facet> cascade_convert(const Cone& c, const PermGroup& g, std::vector<int> lifted) {
  if (lifted.empty()) lifted = cascade_order(c, g);
  const Cone lift = simplicial_lift(c, lifted);
  CascadeState s = cascade_start(c, g, std::move(lifted));
  while (s.remaining > 0) s = project_step(lift, c.dimension(), g, s);
  return representatives_as_facets(c, g, s.facet_reps);
}

std::vector<Facet> cascade_orbits(const ConversionTask& task, std::size_t depth) {
  ++task.options.stats->subproblems;
  return cascade_convert(task.cone, task.group, depth == 0 ? task.options.cascade_order : std::vector<int>{});
}

}  // namespace symcone
