#pragma once

#include "symcone/cone.hpp"
#include "symcone/decomp.hpp"
#include "symcone/perm_group.hpp"

#include <cstddef>
#include <vector>

namespace symcone {

/// Facet orbits of an intermediate projection p_i of the simplicial lift.
/// Supports index the original rays throughout.
struct CascadeState {
  /// Lifted ray indices in lifting order; the last `remaining` are still lifted.
  std::vector<int> lifted;
  std::size_t remaining = 0;
  /// Set stabilizer of the still-lifted rays.
  PermGroup group;
  std::vector<FaceSet> facet_reps;
};

/// Rays that leave a spanning set behind, chosen one at a time to keep the
/// set stabilizer as large as possible (ties to the lowest index).
std::vector<int> cascade_order(const Cone& c, const PermGroup& g);

/// Ray i is (v_i, 0) unless i = lifted[p], which becomes (v_i, e_p).
/// Throws GeometryError when the unlifted rays do not span.
Cone simplicial_lift(const Cone& c, const std::vector<int>& lifted);

/// The lift with only the first `remaining` lifted coordinates kept.
Cone projected_lift(const Cone& lift, std::size_t dimension, std::size_t remaining);

CascadeState cascade_start(const Cone& c, const PermGroup& g, std::vector<int> lifted);

/// Eliminates the last remaining lifted coordinate.
CascadeState project_step(const Cone& lift, std::size_t dimension, const PermGroup& g, const CascadeState& s);

/// Runs every step; `lifted` defaults to cascade_order.
std::vector<Facet> cascade_convert(const Cone& c, const PermGroup& g, std::vector<int> lifted = {});

/// Entry point for recursive_convert.
std::vector<Facet> cascade_orbits(const ConversionTask& task, std::size_t depth);

}  // namespace symcone
