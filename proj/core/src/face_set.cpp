#include "symcone/face_set.hpp"

#include <algorithm>

namespace symcone {

FaceSet::FaceSet(std::initializer_list<int> indices) : FaceSet(std::vector<int>(indices)) {}

FaceSet::FaceSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool FaceSet::contains(int index) const { return std::binary_search(indices_.begin(), indices_.end(), index); }

bool FaceSet::is_subset_of(const FaceSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

FaceSet FaceSet::intersect(const FaceSet& other) const {
  std::vector<int> out;
  std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                        std::back_inserter(out));
  FaceSet f;
  f.indices_ = std::move(out);
  return f;
}

std::string FaceSet::to_string() const {
  std::string s = "{";
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(indices_[k] + 1);
  }
  return s + "}";
}

std::size_t FaceSetHash::operator()(const FaceSet& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL ^ s.size();
  for (int x : s) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace symcone
