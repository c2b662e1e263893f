#pragma once

#include "symcone/face_set.hpp"
#include "symcone/matrix.hpp"
#include "symcone/perm_group.hpp"
#include "symcone/symmetry.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

namespace symcone {

/// Cheap invariants that equivalent sets always share.
struct OrbitKey {
  std::size_t cardinality = 0;
  std::size_t rank = 0;
  /// Sorted color ids of all pairs (i ≤ j) inside the set.
  std::vector<int> metric_fingerprint;

  friend auto operator<=>(const OrbitKey&, const OrbitKey&) = default;
  friend bool operator==(const OrbitKey&, const OrbitKey&) = default;
};

/// Rank is taken from `rays` when given; the fingerprint from `graph` when given.
OrbitKey orbit_key(const FaceSet& s, const RationalMatrix* rays, const ColoredGraph* graph);

/// Orbit representatives under a fixed group, bucketed by OrbitKey.
/// insert_if_new is linearizable, so workers may insert concurrently.
class OrbitDatabase {
 public:
  struct Entry {
    std::size_t id = 0;
    FaceSet representative;
    OrbitKey key;
    /// Zero when size tracking is off.
    Integer orbit_size = 0;
    bool open = true;
  };

  struct Insertion {
    bool is_new = false;
    std::size_t id = 0;
    FaceSet representative;
  };

  /// `rays` and `graph` feed the invariant key. The graph must be built from
  /// the same rays and `group` must consist of restricted automorphisms for
  /// the metric part to be sound; pass nullptr otherwise.
  explicit OrbitDatabase(PermGroup group, std::shared_ptr<const RationalMatrix> rays = nullptr,
                         std::shared_ptr<const ColoredGraph> graph = nullptr, bool track_sizes = true);

  Insertion insert_if_new(const FaceSet& s);
  std::optional<std::size_t> find(const FaceSet& s) const;

  std::size_t size() const;
  /// Snapshot in discovery order.
  std::vector<Entry> entries() const;
  Entry entry(std::size_t id) const;
  void close(std::size_t id);
  std::vector<std::size_t> open_ids() const;
  const PermGroup& group() const { return group_; }

 private:
  PermGroup group_;
  std::shared_ptr<const RationalMatrix> rays_;
  std::shared_ptr<const ColoredGraph> graph_;
  bool track_sizes_;
  std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
  std::vector<Entry> entries_;
  std::map<OrbitKey, std::map<FaceSet, std::size_t>> buckets_;
};

/// Representatives of the g2-orbits met by `sets`, which are given up to g1 ≤ g2.
/// Throws GroupError unless every generator of g1 lies in g2.
OrbitDatabase fuse(const std::vector<FaceSet>& sets, const PermGroup& g1, const PermGroup& g2);

/// Splits g1-orbit representatives into g2-orbit representatives (g2 ≤ g1).
std::vector<FaceSet> split(const std::vector<FaceSet>& reps, const PermGroup& g1, const PermGroup& g2);

}  // namespace symcone
