#pragma once

#include "symcone/face_set.hpp"
#include "symcone/permutation.hpp"
#include "symcone/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace symcone {

struct ChainCache;

/// Finite permutation group on {0..n-1} given by generators. The stabilizer
/// chain is built on first use (thread-safe) and shared between copies.
/// The base is every moved point in increasing order.
class PermGroup {
 public:
  PermGroup();
  /// Identity generators are dropped. Throws GroupError on a degree mismatch.
  PermGroup(int degree, std::vector<Permutation> generators);
  static PermGroup trivial(int degree);
  static PermGroup symmetric(int degree);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  bool is_trivial() const { return generators_.empty(); }

  Integer order() const;
  bool contains(const Permutation& p) const;
  std::vector<int> base() const;
  /// Orbit of the base point at `level` under the level stabilizer.
  const std::vector<int>& basic_orbit(std::size_t level) const;
  /// Some element of the level stabilizer sending base point `level` to `point`.
  const Permutation& transversal(std::size_t level, int point) const;

  std::vector<int> point_orbit(int point) const;
  /// Orbits on points, each sorted, ordered by smallest element.
  std::vector<std::vector<int>> point_orbits() const;

  /// All elements, in chain order. Only sensible for small groups.
  std::vector<Permutation> elements() const;
  /// Uniformly random element drawn through the chain.
  template <class Rng>
  Permutation random_element(Rng& rng) const;

  struct Chain;

 private:
  const Chain& chain() const;

  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::shared_ptr<ChainCache> cache_;
};

struct PermGroup::Chain {
  struct Level {
    int base_point = 0;
    std::vector<int> orbit;
    /// Index into `transversal` per point, -1 when outside the orbit.
    std::vector<int> slot;
    std::vector<Permutation> transversal;
    std::vector<Permutation> inverse;
  };
  std::vector<Level> levels;
  std::vector<Permutation> strong_generators;
};

template <class Rng>
Permutation PermGroup::random_element(Rng& rng) const {
  const Chain& c = chain();
  Permutation g = Permutation::identity(degree_);
  for (std::size_t l = c.levels.size(); l-- > 0;) {
    const auto& level = c.levels[l];
    const std::size_t k = static_cast<std::size_t>(rng() % level.orbit.size());
    g = g.then(level.transversal[static_cast<std::size_t>(level.slot[static_cast<std::size_t>(level.orbit[k])])]);
  }
  return g;
}

Integer group_order(const PermGroup& g);

/// Sorted, duplicate-free orbit of `s` under the set-wise action.
std::vector<FaceSet> orbit_of_set(const PermGroup& g, const FaceSet& s);

/// {σ ∈ g : σ(s) = s}, by subgroup backtracking over the chain.
PermGroup set_stabilizer(const PermGroup& g, const FaceSet& s);

/// Lexicographically least element of the orbit of `s`.
FaceSet canonical_representative(const PermGroup& g, const FaceSet& s);

/// Canonical representative together with an element mapping `s` onto it.
std::pair<FaceSet, Permutation> canonical_form(const PermGroup& g, const FaceSet& s);

/// Some σ ∈ g with σ(s) = t.
std::optional<Permutation> representative_action(const PermGroup& g, const FaceSet& s, const FaceSet& t);

/// One representative per g2-orbit inside the g1-orbit of `f`, each the
/// g2-canonical representative, sorted. Throws GroupError unless g2 ≤ g1.
std::vector<FaceSet> double_coset_split(const PermGroup& g1, const PermGroup& g2, const FaceSet& f);

/// ⟨g1, g2⟩.
PermGroup join(const PermGroup& g1, const PermGroup& g2);

/// The action of `g` on an invariant set `s`, with s[k] renamed to k.
/// Throws GroupError if `s` is not invariant.
PermGroup restrict_action(const PermGroup& g, const FaceSet& s);

/// Lifts a permutation of positions within `s` to the whole point set, fixing
/// points outside `s`. Used to push subproblem symmetries back up.
Permutation extend_from(const FaceSet& s, int degree, const Permutation& local);

/// |orbit of s| = |g| / |Stab(g, s)|.
Integer orbit_size(const PermGroup& g, const FaceSet& s);

}  // namespace symcone
