#pragma once

#include "symcone/face_set.hpp"
#include "symcone/matrix.hpp"
#include "symcone/rational.hpp"

#include <cstddef>
#include <vector>

namespace symcone {

/// How a cone was derived from user input, so facet normals can be lifted back.
struct Provenance {
  /// A homogenizing coordinate was appended as the last column.
  bool homogenized = false;
  /// Coordinate count of the cone this one was reduced from.
  std::size_t ambient_dimension = 0;
  /// Basis (rows) of the removed lineality space, in ambient coordinates.
  RationalMatrix lineality;
  /// Orthogonal projection onto the complement of the lineality space.
  /// Empty when there was no lineality.
  RationalMatrix projection;
  /// Ambient coordinates kept after projection, increasing.
  std::vector<int> selected_coordinates;
  /// Ambient generator index of each kept generator.
  std::vector<int> source_rows;
};

/// cone{v_1..v_n}, generators stored as rows.
class Cone {
 public:
  Cone() = default;
  explicit Cone(RationalMatrix rays, Provenance provenance = {});

  const RationalMatrix& rays() const { return rays_; }
  RationalVector ray(std::size_t i) const { return rays_.row(i); }
  std::size_t num_rays() const { return rays_.rows(); }
  std::size_t dimension() const { return rays_.cols(); }
  const Provenance& provenance() const { return provenance_; }

 private:
  RationalMatrix rays_;
  Provenance provenance_;
};

/// A facet with its incidence set and canonical normal (coprime integers,
/// oriented so that the normal is nonnegative on the cone).
struct Facet {
  FaceSet support;
  RationalVector normal;

  friend bool operator==(const Facet&, const Facet&) = default;
};

/// Cone over (v,1) for points and (v,0) for rays. Throws GeometryError on empty
/// input or mismatched dimensions.
Cone homogenize(const RationalMatrix& points, const RationalMatrix& rays);

/// Removes the lineality space and projects onto independent coordinates.
/// Generators that become zero are dropped. Throws DegenerateConeError when
/// the cone is a linear subspace.
Cone reduce_to_pointed_fulldim(const Cone& c);

/// Maps a normal of a reduced cone back to the coordinates it was reduced from.
RationalVector lift_normal(const Provenance& provenance, const RationalVector& normal);

/// Indices of the extreme, pairwise non-parallel generators of a pointed
/// full-dimensional cone (first of each parallel class is kept).
std::vector<int> irredundant_generators(const Cone& c);

/// Facet with the given normal: canonical scaling and support by exact evaluation.
/// Throws GeometryError when the normal is negative on some generator or does
/// not define a facet.
Facet make_facet(const Cone& c, const RationalVector& normal);

/// Facet spanned by the given generator set. Throws GeometryError if the set
/// does not have rank d-1 or is not a face.
Facet facet_from_support(const Cone& c, const FaceSet& support);

/// Exact Double Description. Facets come back sorted by normal.
std::vector<Facet> dual_description_dd(const Cone& c);

/// Entry [i][j] is true iff facet j vanishes on generator i.
std::vector<std::vector<bool>> incidence_matrix(const Cone& c, const std::vector<Facet>& facets);

/// The other facet through `ridge`. Throws GeometryError when `ridge` is not a
/// ridge of `f`.
Facet gift_wrap(const Cone& c, const Facet& f, const FaceSet& ridge);

/// The cone spanned by the generators in `support`, restricted to independent
/// coordinates so it is full-dimensional in its own span.
Cone subcone(const Cone& c, const FaceSet& support);

/// Ridges inside facet `f`, as generator sets of `c`, computed with the DD base case.
std::vector<FaceSet> ridges_of(const Cone& c, const Facet& f);

/// `nu[i]` is the index in the fine family of coarse generator i.
bool boundary_complex_refines(const std::vector<Facet>& coarse, const std::vector<Facet>& fine,
                              const std::vector<int>& nu);

}  // namespace symcone
