#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace symcone {

/// A face named by the (0-based) indices of the generators it contains.
/// Always sorted and duplicate-free; ordering is lexicographic on the sorted
/// index sequence, which for equal cardinality is the lexicographic order on
/// subsets used for canonical representatives.
class FaceSet {
 public:
  FaceSet() = default;
  FaceSet(std::initializer_list<int> indices);
  explicit FaceSet(std::vector<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  int operator[](std::size_t k) const { return indices_[k]; }

  bool contains(int index) const;
  bool is_subset_of(const FaceSet& other) const;
  FaceSet intersect(const FaceSet& other) const;

  /// 1-based rendering, e.g. "{1,3,4}".
  std::string to_string() const;

  friend auto operator<=>(const FaceSet&, const FaceSet&) = default;
  friend bool operator==(const FaceSet&, const FaceSet&) = default;

 private:
  std::vector<int> indices_;
};

struct FaceSetHash {
  std::size_t operator()(const FaceSet& s) const noexcept;
};

}  // namespace symcone
