#include "symcone/decomp.hpp"

#include "symcone/cascade.hpp"
#include "symcone/pivot.hpp"

#include "symcone/errors.hpp"
#include "symcone/lp.hpp"
#include "symcone/orbit_db.hpp"
#include "symcone/symmetry.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <stdexcept>

namespace symcone {

std::string to_string(Method m) {
  switch (m) {
    case Method::incidence: return "incidence";
    case Method::adjacency: return "adjacency";
    case Method::cascade: return "cascade";
    case Method::pivot: return "pivot";
    case Method::direct: return "direct";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::incidence, Method::adjacency, Method::cascade, Method::pivot, Method::direct}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

namespace {

RationalVector ray_sum(const RationalMatrix& v) {
  RationalVector c(v.cols(), Rational(0));
  for (std::size_t i = 0; i < v.rows(); ++i) {
    for (std::size_t j = 0; j < v.cols(); ++j) c[j] += v(i, j);
  }
  return c;
}

std::vector<FaceSet> supports_of(const std::vector<Facet>& facets) {
  std::vector<FaceSet> out;
  out.reserve(facets.size());
  for (const auto& f : facets) out.push_back(f.support);
  return out;
}

// Orbit database keyed by metric invariants when the options allow it.
OrbitDatabase make_database(const Cone& c, const PermGroup& g, const ConversionOptions& opt) {
  auto rays = std::make_shared<const RationalMatrix>(c.rays());
  std::shared_ptr<const ColoredGraph> graph;
  if (opt.metric_keys) graph = std::make_shared<const ColoredGraph>(build_colored_graph(c.rays()));
  return OrbitDatabase(g, rays, graph);
}

std::vector<Facet> database_facets(const Cone& c, const OrbitDatabase& db) {
  std::vector<FaceSet> reps;
  for (const auto& e : db.entries()) reps.push_back(e.representative);
  return representatives_as_facets(c, db.group(), reps);
}

ConversionTask subtask(const ConversionTask& parent, Cone c, PermGroup g) {
  ConversionTask t{std::move(c), std::move(g), parent.method, parent.options};
  t.options.threads = 1;
  return t;
}

Method method_at(const ConversionTask& task, std::size_t depth) {
  const auto& per = task.options.policy.per_depth;
  return depth < per.size() ? per[depth] : task.method;
}

// Solves a subproblem under `g_big` and returns orbit representatives under `g_small` ≤ g_big.
std::vector<FaceSet> solve_and_split(const ConversionTask& parent, const Cone& sub, const PermGroup& g_small,
                                     std::size_t depth) {
  PermGroup g_big = g_small;
  if (parent.options.enlarge_subgroups) g_big = join(g_small, restricted_automorphism_group(sub.rays()).group);
  const auto facets = recursive_convert(subtask(parent, sub, g_big), depth);
  return split(supports_of(facets), g_big, g_small);
}

}  // namespace

std::vector<Facet> representatives_as_facets(const Cone& c, const PermGroup& g, const std::vector<FaceSet>& supports) {
  std::vector<FaceSet> canon;
  canon.reserve(supports.size());
  for (const auto& s : supports) canon.push_back(canonical_representative(g, s));
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  std::vector<Facet> out;
  out.reserve(canon.size());
  for (const auto& s : canon) out.push_back(facet_from_support(c, s));
  return out;
}

std::vector<Facet> expand_orbits(const Cone& c, const PermGroup& g, const std::vector<Facet>& reps) {
  std::vector<FaceSet> all;
  for (const auto& r : reps) {
    auto orbit = orbit_of_set(g, r.support);
    all.insert(all.end(), orbit.begin(), orbit.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<Facet> out;
  out.reserve(all.size());
  for (const auto& s : all) out.push_back(facet_from_support(c, s));
  std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) { return lex_less(a.normal, b.normal); });
  return out;
}

bool acts_linearly(const Cone& c, const PermGroup& g) {
  if (g.degree() != static_cast<int>(c.num_rays())) return false;
  for (const auto& gen : g.generators()) {
    if (!linear_witness(c.rays(), c.rays(), gen)) return false;
  }
  return true;
}

std::vector<Facet> direct_orbits(const Cone& c, const PermGroup& g) {
  return representatives_as_facets(c, g, supports_of(dual_description_dd(c)));
}

Facet initial_facet(const Cone& c) {
  const RationalMatrix& v = c.rays();
  const std::size_t d = c.dimension();
  const RationalVector total = ray_sum(v);

  LPProblem lp;
  lp.objective.assign(d, Rational(0));
  for (std::size_t i = 0; i < v.rows(); ++i) lp.inequalities.push_back({v.row(i), 0});
  lp.equalities.push_back({total, -1});
  const LPResult res = lp_solve(lp);
  if (res.status != LPStatus::optimal) throw GeometryError("initial_facet: cone is not pointed");
  RationalVector f = res.point;

  for (;;) {
    std::vector<int> tight;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      if (sign(dot(f, v.row(i))) == 0) tight.push_back(static_cast<int>(i));
    }
    RationalMatrix system = v.select_rows(tight);
    if (rank(system) + 1 >= d) break;
    system.append_row(total);
    const RationalMatrix ker = kernel_basis(system);
    RationalVector h = ker.row(0);
    // h sums to zero over the rays, so some value is negative.
    Rational step;
    bool found = false;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      const Rational hv = dot(h, v.row(i));
      if (sign(hv) >= 0) continue;
      const Rational t = -dot(f, v.row(i)) / hv;
      if (!found || t < step) {
        step = t;
        found = true;
      }
    }
    if (!found) throw GeometryError("initial_facet: cone is not full-dimensional");
    for (std::size_t j = 0; j < d; ++j) f[j] += step * h[j];
  }
  return make_facet(c, primitive_scaling(f));
}

bool balinski_skip(const std::vector<Integer>& open_orbit_sizes, std::size_t d) {
  Integer total = 0;
  for (const auto& s : open_orbit_sizes) total += s;
  return total + 1 < Integer(static_cast<unsigned long>(d));
}

std::vector<FaceSet> order_by_incidence_number(std::vector<FaceSet> faces) {
  std::stable_sort(faces.begin(), faces.end(),
                   [](const FaceSet& a, const FaceSet& b) { return a.size() < b.size(); });
  return faces;
}

std::vector<Facet> incidence_decomposition(const ConversionTask& task, std::size_t depth) {
  const Cone& c = task.cone;
  const RationalMatrix& v = c.rays();
  const std::size_t n = v.rows();
  const std::size_t d = c.dimension();
  auto& stats = *task.options.stats;
  OrbitDatabase db = make_database(c, task.group, task.options);

  for (const auto& orbit : task.group.point_orbits()) {
    const int r = orbit.front();
    std::size_t k = 0;
    while (sign(v(static_cast<std::size_t>(r), k)) == 0) ++k;

    // Drop the rays that are redundant once r is forced onto the hyperplane.
    std::vector<int> active;
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<int>(i) != r) active.push_back(static_cast<int>(i));
    }
    for (std::size_t pos = 0; pos < active.size();) {
      std::vector<int> rows{r};
      rows.insert(rows.end(), active.begin(), active.end());
      ++stats.lp_calls;
      if (is_redundant_generator(v.select_rows(rows), static_cast<int>(pos + 1), {0})) {
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(pos));
      } else {
        ++pos;
      }
    }

    // Vertex figure at r: quotient by r, then forget coordinate k.
    RationalMatrix quotient(active.size(), d - 1);
    const RationalVector vr = v.row(static_cast<std::size_t>(r));
    for (std::size_t a = 0; a < active.size(); ++a) {
      const std::size_t i = static_cast<std::size_t>(active[a]);
      const Rational scale = v(i, k) / vr[k];
      RationalVector q;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != k) q.push_back(v(i, j) - scale * vr[j]);
      }
      q = primitive_scaling(q);
      for (std::size_t j = 0; j < d - 1; ++j) quotient(a, j) = q[j];
    }
    const Cone sub(quotient);
    const FaceSet kept(active);
    const PermGroup local = restrict_action(set_stabilizer(task.group, FaceSet{r}), kept);
    ++stats.subproblems;
    for (const auto& rep : solve_and_split(task, sub, local, depth + 1)) {
      const Facet sf = facet_from_support(sub, rep);
      RationalVector g(d, Rational(0));
      Rational acc = 0;
      for (std::size_t j = 0, jj = 0; j < d; ++j) {
        if (j == k) continue;
        g[j] = sf.normal[jj++];
        acc += g[j] * vr[j];
      }
      g[k] = -acc / vr[k];
      db.insert_if_new(make_facet(c, g).support);
    }
  }
  return database_facets(c, db);
}

std::vector<FaceSet> ridge_orbits(const ConversionTask& task, const Facet& f, std::size_t depth) {
  const Cone sub = subcone(task.cone, f.support);
  const PermGroup local = restrict_action(set_stabilizer(task.group, f.support), f.support);
  ++task.options.stats->subproblems;
  std::vector<FaceSet> out;
  for (const auto& rep : solve_and_split(task, sub, local, depth)) {
    std::vector<int> global;
    for (int k : rep) global.push_back(f.support[static_cast<std::size_t>(k)]);
    out.emplace_back(global);
  }
  return out;
}

std::vector<Facet> adjacency_decomposition(const ConversionTask& task, std::size_t depth) {
  const Cone& c = task.cone;
  const auto& opt = task.options;
  auto& stats = *opt.stats;
  OrbitDatabase db = make_database(c, task.group, opt);
  db.insert_if_new(initial_facet(c).support);
  bool closed_any = false;

  auto explore = [&](const FaceSet& rep) {
    const Facet f = facet_from_support(c, rep);
    for (const auto& ridge : ridge_orbits(task, f, depth + 1)) {
      ++stats.ridges;
      db.insert_if_new(gift_wrap(c, f, ridge).support);
    }
  };

  for (;;) {
    std::vector<OrbitDatabase::Entry> open;
    for (std::size_t id : db.open_ids()) open.push_back(db.entry(id));
    if (open.empty()) break;
    if (opt.balinski && closed_any) {
      std::vector<Integer> sizes;
      for (const auto& e : open) sizes.push_back(e.orbit_size);
      if (balinski_skip(sizes, c.dimension())) {
        stats.balinski_skips += open.size();
        for (const auto& e : open) db.close(e.id);
        break;
      }
    }
    if (opt.policy.incidence_ordering) {
      std::stable_sort(open.begin(), open.end(), [](const auto& a, const auto& b) {
        return a.representative.size() < b.representative.size();
      });
    }
    const std::size_t batch = std::min(open.size(), std::max<std::size_t>(1, opt.threads));
    if (batch == 1) {
      explore(open.front().representative);
    } else {
      std::vector<std::future<void>> work;
      for (std::size_t b = 0; b < batch; ++b) {
        work.push_back(std::async(std::launch::async, explore, open[b].representative));
      }
      for (auto& w : work) w.get();
    }
    for (std::size_t b = 0; b < batch; ++b) db.close(open[b].id);
    closed_any = true;
  }
  return database_facets(c, db);
}

std::vector<Facet> recursive_convert(const ConversionTask& task, std::size_t depth) {
  const Cone& c = task.cone;
  const auto& opt = task.options;
  const auto& policy = opt.policy;
  auto& stats = *opt.stats;

  const bool bankable = opt.bank && depth > 0 && c.num_rays() >= opt.bank->min_rays();
  if (bankable) {
    if (auto hit = opt.bank->lookup(c)) {
      ++stats.bank_hits;
      return representatives_as_facets(c, task.group, transport_orbits(*hit, task.group));
    }
  }

  std::vector<Facet> result;
  const Method m = method_at(task, depth);
  if (m == Method::direct || c.num_rays() <= policy.base_rays || c.dimension() <= policy.base_dimension) {
    ++stats.direct_solves;
    result = direct_orbits(c, task.group);
  } else if (depth > policy.max_depth) {
    throw RecursionDepthError("recursion depth " + std::to_string(depth) + " exhausted on a subcone with " +
                                  std::to_string(c.num_rays()) + " rays in dimension " +
                                  std::to_string(c.dimension()),
                              c.num_rays(), c.dimension());
  } else {
    switch (m) {
      case Method::incidence: result = incidence_decomposition(task, depth); break;
      case Method::adjacency: result = adjacency_decomposition(task, depth); break;
      case Method::cascade: result = cascade_orbits(task, depth); break;
      case Method::pivot: result = pivot_orbits(task, depth); break;
      case Method::direct: break;
    }
  }

  if (bankable && opt.bank->store({c.rays(), task.group, supports_of(result)})) ++stats.bank_stores;
  return result;
}

// ---- banking ---------------------------------------------------------------

std::vector<Rational> Bank::fingerprint(const RationalMatrix& rays) {
  const ColoredGraph g = build_colored_graph(rays);
  std::vector<Rational> fp{Rational(static_cast<unsigned long>(rays.rows())),
                           Rational(static_cast<unsigned long>(rays.cols()))};
  for (int i = 0; i < g.n; ++i) {
    for (int j = i; j < g.n; ++j) {
      const int id = i == j ? g.vertex_colors[static_cast<std::size_t>(i)] : g.edge(i, j);
      fp.push_back(g.palette[static_cast<std::size_t>(id)]);
    }
  }
  std::sort(fp.begin() + 2, fp.end());
  return fp;
}

std::optional<BankHit> Bank::lookup(const Cone& c) const {
  const auto fp = fingerprint(c.rays());
  std::vector<BankEntry> candidates;
  {
    std::lock_guard lock(mutex_);
    for (const auto& s : stored_) {
      if (s.fingerprint == fp) candidates.push_back(s.entry);
    }
  }
  for (auto& e : candidates) {
    if (auto iso = restricted_isomorphism(c.rays(), e.rays)) {
      return BankHit{std::move(e), std::move(iso->first), std::move(iso->second)};
    }
  }
  return std::nullopt;
}

bool Bank::store(BankEntry entry) {
  auto fp = fingerprint(entry.rays);
  std::lock_guard lock(mutex_);
  for (const auto& s : stored_) {
    if (s.fingerprint == fp && restricted_isomorphism(entry.rays, s.entry.rays)) return false;
  }
  stored_.push_back({std::move(entry), std::move(fp)});
  return true;
}

std::vector<BankEntry> Bank::entries() const {
  std::lock_guard lock(mutex_);
  std::vector<BankEntry> out;
  for (const auto& s : stored_) out.push_back(s.entry);
  return out;
}

std::size_t Bank::size() const {
  std::lock_guard lock(mutex_);
  return stored_.size();
}

std::vector<FaceSet> transport_orbits(const BankHit& hit, const PermGroup& g) {
  const Permutation back = hit.sigma.inverse();
  std::vector<Permutation> gens;
  for (const auto& h : hit.entry.group.generators()) gens.push_back(hit.sigma.then(h).then(back));
  const PermGroup moved(hit.sigma.degree(), std::move(gens));

  std::vector<FaceSet> reps;
  for (const auto& r : hit.entry.facet_orbit_reps) reps.push_back(back.apply(r));

  bool subgroup = true;
  for (const auto& gen : g.generators()) subgroup = subgroup && moved.contains(gen);
  if (subgroup) return split(reps, moved, g);

  std::vector<FaceSet> all;
  for (const auto& r : reps) {
    auto orbit = orbit_of_set(moved, r);
    all.insert(all.end(), orbit.begin(), orbit.end());
  }
  std::vector<FaceSet> out;
  for (const auto& s : all) out.push_back(canonical_representative(g, s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace symcone
