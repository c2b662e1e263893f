#pragma once

#include "symcone/face_set.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace symcone {

/// A bijection of {0..n-1}. Composition reads left to right: a.then(b) applies
/// a first and b second.
class Permutation {
 public:
  Permutation() = default;
  /// Throws GroupError unless `images` is a permutation of 0..n-1.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int degree);
  /// 1-based disjoint-cycle notation such as "(1 2 3)(4 5)"; "()" is the identity.
  static Permutation from_cycles(int degree, std::string_view text);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation then(const Permutation& next) const;
  Permutation inverse() const;
  bool is_identity() const;
  FaceSet apply(const FaceSet& s) const;

  /// 1-based cycle notation, "()" for the identity.
  std::string to_cycle_string() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

}  // namespace symcone
