#pragma once

#include <stdexcept>
#include <string>

namespace symcone {

/// The generators span a linear subspace, so there is nothing to convert.
class DegenerateConeError : public std::runtime_error {
 public:
  explicit DegenerateConeError(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition on geometric input failed (rank, incidence, membership).
class GeometryError : public std::invalid_argument {
 public:
  explicit GeometryError(const std::string& what) : std::invalid_argument(what) {}
};

/// A permutation or group argument is inconsistent with its use.
class GroupError : public std::invalid_argument {
 public:
  explicit GroupError(const std::string& what) : std::invalid_argument(what) {}
};

/// Recursive conversion hit its depth limit on a subcone that was still too large.
class RecursionDepthError : public std::runtime_error {
 public:
  RecursionDepthError(const std::string& what, std::size_t rays, std::size_t dimension)
      : std::runtime_error(what), rays_(rays), dimension_(dimension) {}
  std::size_t rays() const { return rays_; }
  std::size_t dimension() const { return dimension_; }

 private:
  std::size_t rays_;
  std::size_t dimension_;
};

}  // namespace symcone
