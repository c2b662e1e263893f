#include "symcone/perm_group.hpp"

#include "symcone/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <random>
#include <set>

namespace symcone {

struct ChainCache {
  std::once_flag once;
  PermGroup::Chain chain;
};

namespace {

// Groups at most this large get canonical forms by listing every element.
constexpr long kEnumerationLimit = 1000;
// Orbits at most this large are split into double cosets by walking the orbit.
constexpr long kOrbitWalkLimit = 200000;

class ChainBuilder {
 public:
  ChainBuilder(int degree, const std::vector<Permutation>& gens) : degree_(degree) {
    std::vector<bool> moved(static_cast<std::size_t>(degree), false);
    for (const auto& g : gens) {
      for (int i = 0; i < degree; ++i) {
        if (g(i) != i) moved[static_cast<std::size_t>(i)] = true;
      }
    }
    for (int i = 0; i < degree; ++i) {
      if (moved[static_cast<std::size_t>(i)]) base_.push_back(i);
    }
    for (const auto& g : gens) add_strong(g);
  }

  PermGroup::Chain build() {
    const std::size_t k = base_.size();
    chain_.levels.resize(k);
    for (std::size_t i = 0; i < k; ++i) chain_.levels[i].base_point = base_[i];
    for (std::size_t i = 0; i < k; ++i) compute_orbit(i);

    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(k) - 1;
    while (i >= 0) {
      const auto level = static_cast<std::size_t>(i);
      bool restarted = false;
      for (std::size_t idx = 0; idx < chain_.levels[level].orbit.size() && !restarted; ++idx) {
        const int y = chain_.levels[level].orbit[idx];
        for (std::size_t s = 0; s < strong_.size(); ++s) {
          if (depth_[s] < level) continue;
          const Permutation& gen = strong_[s];
          const int z = gen(y);
          Permutation h = transversal(level, y).then(gen).then(inverse(level, z));
          if (h.is_identity()) continue;
          auto [residue, stop] = strip(std::move(h), level + 1);
          if (stop == k && residue.is_identity()) continue;
          add_strong(residue);
          for (std::size_t l = level + 1; l <= stop && l < k; ++l) compute_orbit(l);
          i = static_cast<std::ptrdiff_t>(std::min(stop, k - 1));
          restarted = true;
          break;
        }
      }
      if (!restarted) --i;
    }
    chain_.strong_generators = strong_;
    return std::move(chain_);
  }

 private:
  void add_strong(const Permutation& g) {
    if (g.is_identity()) return;
    std::size_t depth = 0;
    while (depth < base_.size() && g(base_[depth]) == base_[depth]) ++depth;
    strong_.push_back(g);
    depth_.push_back(depth);
  }

  const Permutation& transversal(std::size_t level, int point) const {
    const auto& l = chain_.levels[level];
    return l.transversal[static_cast<std::size_t>(l.slot[static_cast<std::size_t>(point)])];
  }
  const Permutation& inverse(std::size_t level, int point) const {
    const auto& l = chain_.levels[level];
    return l.inverse[static_cast<std::size_t>(l.slot[static_cast<std::size_t>(point)])];
  }

  void compute_orbit(std::size_t level) {
    auto& l = chain_.levels[level];
    l.orbit.assign(1, l.base_point);
    l.slot.assign(static_cast<std::size_t>(degree_), -1);
    l.transversal.assign(1, Permutation::identity(degree_));
    l.inverse.assign(1, Permutation::identity(degree_));
    l.slot[static_cast<std::size_t>(l.base_point)] = 0;
    for (std::size_t q = 0; q < l.orbit.size(); ++q) {
      const int y = l.orbit[q];
      for (std::size_t s = 0; s < strong_.size(); ++s) {
        if (depth_[s] < level) continue;
        const int z = strong_[s](y);
        if (l.slot[static_cast<std::size_t>(z)] != -1) continue;
        Permutation u = l.transversal[static_cast<std::size_t>(l.slot[static_cast<std::size_t>(y)])].then(strong_[s]);
        l.slot[static_cast<std::size_t>(z)] = static_cast<int>(l.transversal.size());
        l.inverse.push_back(u.inverse());
        l.transversal.push_back(std::move(u));
        l.orbit.push_back(z);
      }
    }
  }

  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const {
    for (std::size_t j = from; j < base_.size(); ++j) {
      const int y = g(base_[j]);
      const int slot = chain_.levels[j].slot[static_cast<std::size_t>(y)];
      if (slot < 0) return {std::move(g), j};
      g = g.then(chain_.levels[j].inverse[static_cast<std::size_t>(slot)]);
    }
    return {std::move(g), base_.size()};
  }

  int degree_;
  std::vector<int> base_;
  std::vector<Permutation> strong_;
  std::vector<std::size_t> depth_;
  PermGroup::Chain chain_;
};

std::vector<int> stable_orbit(const std::vector<Permutation>& gens, int point) {
  std::vector<int> orbit{point};
  std::set<int> seen{point};
  for (std::size_t q = 0; q < orbit.size(); ++q) {
    for (const auto& g : gens) {
      const int z = g(orbit[q]);
      if (seen.insert(z).second) orbit.push_back(z);
    }
  }
  return orbit;
}

}  // namespace

PermGroup::PermGroup() : cache_(std::make_shared<ChainCache>()) {}

PermGroup::PermGroup(int degree, std::vector<Permutation> generators)
    : degree_(degree), cache_(std::make_shared<ChainCache>()) {
  for (auto& g : generators) {
    if (g.degree() != degree) throw GroupError("generator degree does not match the group degree");
    if (!g.is_identity() && std::find(generators_.begin(), generators_.end(), g) == generators_.end()) {
      generators_.push_back(std::move(g));
    }
  }
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::symmetric(int degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<int> swap(static_cast<std::size_t>(degree)), cycle(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) {
      swap[static_cast<std::size_t>(i)] = i;
      cycle[static_cast<std::size_t>(i)] = (i + 1) % degree;
    }
    std::swap(swap[0], swap[1]);
    gens.emplace_back(swap);
    gens.emplace_back(cycle);
  }
  return PermGroup(degree, std::move(gens));
}

const PermGroup::Chain& PermGroup::chain() const {
  std::call_once(cache_->once, [this] { cache_->chain = ChainBuilder(degree_, generators_).build(); });
  return cache_->chain;
}

Integer PermGroup::order() const {
  Integer n = 1;
  for (const auto& l : chain().levels) n *= static_cast<unsigned long>(l.orbit.size());
  return n;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  const Chain& c = chain();
  Permutation g = p;
  for (const auto& l : c.levels) {
    const int slot = l.slot[static_cast<std::size_t>(g(l.base_point))];
    if (slot < 0) return false;
    g = g.then(l.inverse[static_cast<std::size_t>(slot)]);
  }
  return g.is_identity();
}

std::vector<int> PermGroup::base() const {
  std::vector<int> b;
  for (const auto& l : chain().levels) b.push_back(l.base_point);
  return b;
}

const std::vector<int>& PermGroup::basic_orbit(std::size_t level) const { return chain().levels.at(level).orbit; }

const Permutation& PermGroup::transversal(std::size_t level, int point) const {
  const auto& l = chain().levels.at(level);
  const int slot = l.slot.at(static_cast<std::size_t>(point));
  if (slot < 0) throw GroupError("point is not in the basic orbit");
  return l.transversal[static_cast<std::size_t>(slot)];
}

std::vector<int> PermGroup::point_orbit(int point) const {
  std::vector<int> orbit = stable_orbit(generators_, point);
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::vector<std::vector<int>> PermGroup::point_orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> done(static_cast<std::size_t>(degree_), false);
  for (int p = 0; p < degree_; ++p) {
    if (done[static_cast<std::size_t>(p)]) continue;
    out.push_back(point_orbit(p));
    for (int q : out.back()) done[static_cast<std::size_t>(q)] = true;
  }
  return out;
}

std::vector<Permutation> PermGroup::elements() const {
  const Chain& c = chain();
  std::vector<Permutation> out{Permutation::identity(degree_)};
  for (std::size_t l = c.levels.size(); l-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(out.size() * c.levels[l].transversal.size());
    for (const auto& g : out) {
      for (const auto& u : c.levels[l].transversal) next.push_back(g.then(u));
    }
    out = std::move(next);
  }
  return out;
}

Integer group_order(const PermGroup& g) { return g.order(); }

std::vector<FaceSet> orbit_of_set(const PermGroup& g, const FaceSet& s) {
  std::set<FaceSet> seen{s};
  std::deque<FaceSet> queue{s};
  while (!queue.empty()) {
    FaceSet t = std::move(queue.front());
    queue.pop_front();
    for (const auto& gen : g.generators()) {
      FaceSet u = gen.apply(t);
      if (seen.insert(u).second) queue.push_back(std::move(u));
    }
  }
  return {seen.begin(), seen.end()};
}

namespace {

class StabilizerSearch {
 public:
  StabilizerSearch(const PermGroup& g, const FaceSet& s)
      : g_(g), set_(s), in_set_(static_cast<std::size_t>(g.degree()), false) {
    for (int x : s) in_set_[static_cast<std::size_t>(x)] = true;
    base_ = g.base();
    last_nontrivial_ = 0;
    for (std::size_t l = 0; l < base_.size(); ++l) {
      if (g.basic_orbit(l).size() > 1) last_nontrivial_ = l + 1;
    }
  }

  std::vector<Permutation> run() {
    for (std::size_t j = last_nontrivial_; j-- > 0;) {
      const int bj = base_[j];
      const bool bj_in = in(bj);
      for (int y : g_.basic_orbit(j)) {
        if (y == bj || in(y) != bj_in) continue;
        const std::vector<int> orbit = stable_orbit(found_, bj);
        if (std::find(orbit.begin(), orbit.end(), y) != orbit.end()) continue;
        if (auto h = search(j + 1, g_.transversal(j, y))) found_.push_back(std::move(*h));
      }
    }
    return found_;
  }

 private:
  bool in(int x) const { return in_set_[static_cast<std::size_t>(x)]; }

  // q = u^(m-1) then ... then u^(j); extend with level m choices.
  std::optional<Permutation> search(std::size_t m, const Permutation& q) const {
    if (m >= last_nontrivial_) {
      if (q.apply(set_) == set_) return q;
      return std::nullopt;
    }
    const int bm = base_[m];
    const bool bm_in = in(bm);
    for (int z : g_.basic_orbit(m)) {
      if (in(q(z)) != bm_in) continue;
      if (auto r = search(m + 1, g_.transversal(m, z).then(q))) return r;
    }
    return std::nullopt;
  }

  const PermGroup& g_;
  FaceSet set_;
  std::vector<bool> in_set_;
  std::vector<int> base_;
  std::size_t last_nontrivial_;
  std::vector<Permutation> found_;
};

}  // namespace

PermGroup set_stabilizer(const PermGroup& g, const FaceSet& s) {
  if (g.is_trivial()) return g;
  return PermGroup(g.degree(), StabilizerSearch(g, s).run());
}

std::pair<FaceSet, Permutation> canonical_form(const PermGroup& g, const FaceSet& s) {
  if (g.is_trivial()) return {s, Permutation::identity(g.degree())};
  if (g.order() <= kEnumerationLimit) {
    std::pair<FaceSet, Permutation> best{s, Permutation::identity(g.degree())};
    for (const auto& e : g.elements()) {
      FaceSet t = e.apply(s);
      if (t < best.first) best = {std::move(t), e};
    }
    return best;
  }

  // Candidate images T with an element mapping s onto T; at each base point
  // keep only the candidates that can bring it into the image.
  std::map<FaceSet, Permutation> candidates{{s, Permutation::identity(g.degree())}};
  const std::vector<int> base = g.base();
  for (std::size_t level = 0; level < base.size(); ++level) {
    const std::vector<int>& orbit = g.basic_orbit(level);
    if (orbit.size() == 1) continue;
    bool any_hit = false;
    for (const auto& [t, e] : candidates) {
      for (int y : orbit) {
        if (t.contains(y)) {
          any_hit = true;
          break;
        }
      }
      if (any_hit) break;
    }
    std::map<FaceSet, Permutation> next;
    for (const auto& [t, e] : candidates) {
      for (int y : orbit) {
        if (any_hit && !t.contains(y)) continue;
        const Permutation back = g.transversal(level, y).inverse();
        FaceSet image = back.apply(t);
        if (next.count(image)) continue;
        next.emplace(std::move(image), e.then(back));
      }
    }
    candidates = std::move(next);
  }
  const auto& best = *candidates.begin();
  return {best.first, best.second};
}

FaceSet canonical_representative(const PermGroup& g, const FaceSet& s) { return canonical_form(g, s).first; }

std::optional<Permutation> representative_action(const PermGroup& g, const FaceSet& s, const FaceSet& t) {
  if (s.size() != t.size()) return std::nullopt;
  if (s == t) return Permutation::identity(g.degree());
  auto [cs, gs] = canonical_form(g, s);
  auto [ct, gt] = canonical_form(g, t);
  if (cs != ct) return std::nullopt;
  return gs.then(gt.inverse());
}

Integer orbit_size(const PermGroup& g, const FaceSet& s) {
  const Integer total = g.order();
  return total / set_stabilizer(g, s).order();
}

std::vector<FaceSet> double_coset_split(const PermGroup& g1, const PermGroup& g2, const FaceSet& f) {
  for (const auto& gen : g2.generators()) {
    if (!g1.contains(gen)) throw GroupError("double_coset_split: second group is not a subgroup of the first");
  }
  const Integer total = orbit_size(g1, f);
  std::set<FaceSet> reps;
  if (total <= kOrbitWalkLimit) {
    for (const auto& t : orbit_of_set(g1, f)) reps.insert(canonical_representative(g2, t));
    return {reps.begin(), reps.end()};
  }
  // Large orbit: sample uniform elements of g1 until the g2-orbits found
  // account for the whole g1-orbit.
  std::mt19937_64 rng(0x5eed);
  Integer covered = 0;
  const FaceSet first = canonical_representative(g2, f);
  reps.insert(first);
  covered += orbit_size(g2, first);
  while (covered < total) {
    const FaceSet t = canonical_representative(g2, g1.random_element(rng).apply(f));
    if (reps.insert(t).second) covered += orbit_size(g2, t);
  }
  return {reps.begin(), reps.end()};
}

PermGroup join(const PermGroup& g1, const PermGroup& g2) {
  if (g1.degree() != g2.degree()) throw GroupError("join: groups act on different point sets");
  std::vector<Permutation> gens = g1.generators();
  gens.insert(gens.end(), g2.generators().begin(), g2.generators().end());
  return PermGroup(g1.degree(), std::move(gens));
}

PermGroup restrict_action(const PermGroup& g, const FaceSet& s) {
  std::vector<int> position(static_cast<std::size_t>(g.degree()), -1);
  for (std::size_t k = 0; k < s.size(); ++k) position[static_cast<std::size_t>(s[k])] = static_cast<int>(k);
  std::vector<Permutation> local;
  for (const auto& gen : g.generators()) {
    std::vector<int> images(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      const int p = position[static_cast<std::size_t>(gen(s[k]))];
      if (p < 0) throw GroupError("restrict_action: set is not invariant");
      images[k] = p;
    }
    local.emplace_back(std::move(images));
  }
  return PermGroup(static_cast<int>(s.size()), std::move(local));
}

Permutation extend_from(const FaceSet& s, int degree, const Permutation& local) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i;
  for (std::size_t k = 0; k < s.size(); ++k) images[static_cast<std::size_t>(s[k])] = s[static_cast<std::size_t>(local(static_cast<int>(k)))];
  return Permutation(std::move(images));
}

}  // namespace symcone
