#pragma once

#include "symcone/cone.hpp"
#include "symcone/perm_group.hpp"

#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symcone {

enum class Method { incidence, adjacency, cascade, pivot, direct };

std::string to_string(Method m);
/// Throws std::invalid_argument for an unknown name.
Method parse_method(std::string_view name);

struct RecursionPolicy {
  /// Deeper subproblems that are still above the base case raise RecursionDepthError.
  std::size_t max_depth = 8;
  /// Cones with at most this many rays, or at most `base_dimension`
  /// coordinates, are solved directly.
  std::size_t base_rays = 25;
  std::size_t base_dimension = 4;
  /// Process open orbits with few incident rays first.
  bool incidence_ordering = true;
  /// Method at depth k, overriding the task method where present.
  std::vector<Method> per_depth;
};

/// Work counters, shared by every subproblem of one conversion.
struct ConversionStats {
  std::atomic<std::size_t> subproblems{0};
  std::atomic<std::size_t> direct_solves{0};
  std::atomic<std::size_t> lp_calls{0};
  std::atomic<std::size_t> ridges{0};
  std::atomic<std::size_t> balinski_skips{0};
  std::atomic<std::size_t> bank_hits{0};
  std::atomic<std::size_t> bank_stores{0};
  std::atomic<std::size_t> bases_visited{0};
  std::atomic<std::size_t> basis_orbits{0};
};

class Bank;

struct ConversionOptions {
  RecursionPolicy policy;
  bool balinski = true;
  std::size_t threads = 1;
  /// Enlarge facet subproblem groups by the subcone's own restricted
  /// automorphisms. Only valid when the task group is restricted.
  bool enlarge_subgroups = true;
  /// Use metric invariants in orbit keys. Only valid for restricted groups.
  bool metric_keys = true;
  /// Skip expansion of bases in non-canonical facets during pivoting.
  bool pivot_pruning = true;
  /// Cascade lifting order for the top-level cone; greedy when empty.
  std::vector<int> cascade_order;
  std::shared_ptr<Bank> bank;
  std::shared_ptr<ConversionStats> stats = std::make_shared<ConversionStats>();
};

struct ConversionTask {
  Cone cone;
  PermGroup group;
  Method method = Method::adjacency;
  ConversionOptions options;
};

/// Facet orbit representatives of a pointed full-dimensional cone under the
/// task group, one per orbit, each carrying the lex-least support of its
/// orbit; sorted by support.
std::vector<Facet> incidence_decomposition(const ConversionTask& task, std::size_t depth = 0);
std::vector<Facet> adjacency_decomposition(const ConversionTask& task, std::size_t depth = 0);

/// Direct solve when small, else the method configured for `depth`.
std::vector<Facet> recursive_convert(const ConversionTask& task, std::size_t depth);

/// DD followed by orbit fusion.
std::vector<Facet> direct_orbits(const Cone& c, const PermGroup& g);

/// Some facet, found by an LP and rotated onto a face of rank d-1. Deterministic.
Facet initial_facet(const Cone& c);

/// True when the open orbits hold fewer than d-1 facets in total.
bool balinski_skip(const std::vector<Integer>& open_orbit_sizes, std::size_t d);

/// Stable ascending sort by cardinality.
std::vector<FaceSet> order_by_incidence_number(std::vector<FaceSet> faces);

/// Stab(G,F)-orbit representatives of the ridges inside facet `f`, as global
/// index sets. Subproblems go through recursive_convert at `depth`.
std::vector<FaceSet> ridge_orbits(const ConversionTask& task, const Facet& f, std::size_t depth);

/// Canonical orbit representatives as facets, sorted by support.
std::vector<Facet> representatives_as_facets(const Cone& c, const PermGroup& g, const std::vector<FaceSet>& supports);

/// Every facet, obtained by expanding orbit representatives; sorted by normal.
std::vector<Facet> expand_orbits(const Cone& c, const PermGroup& g, const std::vector<Facet>& reps);

/// True when every generator permutes the rays by a linear map.
bool acts_linearly(const Cone& c, const PermGroup& g);

// ---- banking ---------------------------------------------------------------

struct BankEntry {
  RationalMatrix rays;
  PermGroup group;
  std::vector<FaceSet> facet_orbit_reps;
};

struct BankHit {
  BankEntry entry;
  /// Ray i of the queried cone corresponds to ray sigma(i) of the entry.
  Permutation sigma;
  /// witness · queried ray i = entry ray sigma(i).
  RationalMatrix witness;
};

/// Solved subcones, found again up to restricted isomorphism.
class Bank {
 public:
  /// Subcones with fewer rays than this are not worth storing.
  explicit Bank(std::size_t min_rays = 0) : min_rays_(min_rays) {}

  std::optional<BankHit> lookup(const Cone& c) const;
  /// No-op when an isomorphic cone is already stored.
  bool store(BankEntry entry);
  std::vector<BankEntry> entries() const;
  std::size_t size() const;
  std::size_t min_rays() const { return min_rays_; }

 private:
  struct Stored {
    BankEntry entry;
    std::vector<Rational> fingerprint;
  };
  static std::vector<Rational> fingerprint(const RationalMatrix& rays);

  std::size_t min_rays_;
  mutable std::mutex mutex_;
  std::vector<Stored> stored_;
};

/// Facet orbits of the queried cone under `g`, read off a bank hit.
std::vector<FaceSet> transport_orbits(const BankHit& hit, const PermGroup& g);

}  // namespace symcone
