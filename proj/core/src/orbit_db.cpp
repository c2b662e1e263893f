#include "symcone/orbit_db.hpp"

#include "symcone/errors.hpp"

#include <algorithm>

namespace symcone {

OrbitKey orbit_key(const FaceSet& s, const RationalMatrix* rays, const ColoredGraph* graph) {
  OrbitKey key;
  key.cardinality = s.size();
  if (rays != nullptr) key.rank = rank(rays->select_rows(s.indices()));
  if (graph != nullptr) {
    key.metric_fingerprint.reserve(s.size() * (s.size() + 1) / 2);
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a; b < s.size(); ++b) key.metric_fingerprint.push_back(graph->edge(s[a], s[b]));
    }
    std::sort(key.metric_fingerprint.begin(), key.metric_fingerprint.end());
  }
  return key;
}

OrbitDatabase::OrbitDatabase(PermGroup group, std::shared_ptr<const RationalMatrix> rays,
                             std::shared_ptr<const ColoredGraph> graph, bool track_sizes)
    : group_(std::move(group)), rays_(std::move(rays)), graph_(std::move(graph)), track_sizes_(track_sizes) {}

OrbitDatabase::Insertion OrbitDatabase::insert_if_new(const FaceSet& s) {
  OrbitKey key = orbit_key(s, rays_.get(), graph_.get());
  FaceSet canon = canonical_representative(group_, s);
  {
    std::lock_guard lock(*mutex_);
    auto& bucket = buckets_[key];
    if (auto it = bucket.find(canon); it != bucket.end()) return {false, it->second, canon};
  }
  Integer size = track_sizes_ ? orbit_size(group_, canon) : Integer(0);
  std::lock_guard lock(*mutex_);
  auto& bucket = buckets_[key];
  if (auto it = bucket.find(canon); it != bucket.end()) return {false, it->second, canon};
  Entry e;
  e.id = entries_.size();
  e.representative = canon;
  e.key = std::move(key);
  e.orbit_size = std::move(size);
  bucket.emplace(canon, e.id);
  entries_.push_back(std::move(e));
  return {true, entries_.back().id, canon};
}

std::optional<std::size_t> OrbitDatabase::find(const FaceSet& s) const {
  const OrbitKey key = orbit_key(s, rays_.get(), graph_.get());
  const FaceSet canon = canonical_representative(group_, s);
  std::lock_guard lock(*mutex_);
  auto b = buckets_.find(key);
  if (b == buckets_.end()) return std::nullopt;
  auto it = b->second.find(canon);
  if (it == b->second.end()) return std::nullopt;
  return it->second;
}

std::size_t OrbitDatabase::size() const {
  std::lock_guard lock(*mutex_);
  return entries_.size();
}

std::vector<OrbitDatabase::Entry> OrbitDatabase::entries() const {
  std::lock_guard lock(*mutex_);
  return entries_;
}

OrbitDatabase::Entry OrbitDatabase::entry(std::size_t id) const {
  std::lock_guard lock(*mutex_);
  return entries_.at(id);
}

void OrbitDatabase::close(std::size_t id) {
  std::lock_guard lock(*mutex_);
  entries_.at(id).open = false;
}

std::vector<std::size_t> OrbitDatabase::open_ids() const {
  std::lock_guard lock(*mutex_);
  std::vector<std::size_t> out;
  for (const auto& e : entries_) {
    if (e.open) out.push_back(e.id);
  }
  return out;
}

OrbitDatabase fuse(const std::vector<FaceSet>& sets, const PermGroup& g1, const PermGroup& g2) {
  for (const auto& gen : g1.generators()) {
    if (!g2.contains(gen)) throw GroupError("fuse: first group is not a subgroup of the second");
  }
  OrbitDatabase db(g2);
  for (const auto& s : sets) db.insert_if_new(s);
  return db;
}

std::vector<FaceSet> split(const std::vector<FaceSet>& reps, const PermGroup& g1, const PermGroup& g2) {
  std::vector<FaceSet> out;
  for (const auto& r : reps) {
    auto parts = double_coset_split(g1, g2, r);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace symcone
