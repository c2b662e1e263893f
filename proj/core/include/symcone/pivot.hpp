#pragma once

#include "symcone/cone.hpp"
#include "symcone/decomp.hpp"
#include "symcone/orbit_db.hpp"
#include "symcone/perm_group.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace symcone {

/// Orbitwise lexicographic perturbation of the rays under a subgroup H.
struct PerturbationSpec {
  PermGroup subgroup;
  /// Orbit labels (positions in subgroup.point_orbits()) in perturbation
  /// order. Empty means orbits by smallest index.
  std::vector<int> order;
  /// Per orbit label: +1 push, -1 pull. Empty means pull everything.
  std::vector<int> signs;
};

/// Right-hand side b(ε) = base + N·(ε₁..ε_k) of the dual system
/// v_i·y ≥ b_i(ε), c·y = 1, with c the sum of the rays.
struct SymbolicRHS {
  RationalVector base;
  /// n × k; column j belongs to orbits[j].
  RationalMatrix eps;
  std::vector<std::vector<int>> orbits;
  /// Fewer than two orbits: the perturbation does not break any degeneracy.
  bool vacuous = false;
};

SymbolicRHS unperturbed_rhs(std::size_t n);
/// Throws GroupError unless H permutes the rays linearly.
SymbolicRHS build_perturbation(const Cone& c, const PerturbationSpec& spec);

/// D-1 ray indices spanning a facet hyperplane of the perturbed cone.
struct BasisNode {
  FaceSet indices;
  /// The facet of the unperturbed cone containing the basis.
  Facet facet;
  /// Rays on the perturbed facet.
  FaceSet fine_support;
};

/// nullopt when the indices are not a feasible basis.
std::optional<BasisNode> make_basis(const Cone& c, const SymbolicRHS& rhs, const FaceSet& indices);

/// Ratio-test pivot; remaining ties go to the lowest ray index.
/// Throws std::invalid_argument when `leaving` is not in the basis.
BasisNode pivot(const Cone& c, const BasisNode& b, int leaving, const SymbolicRHS& rhs);

/// Every feasible basis differing from `b` in one index, by ascending
/// leaving index, then ascending entering index.
std::vector<FaceSet> basis_neighbors(const Cone& c, const SymbolicRHS& rhs, const FaceSet& b);

/// Feasible basis inside initial_facet, found by dual simplex steps.
BasisNode initial_basis(const Cone& c, const SymbolicRHS& rhs);

/// Facet orbits with the member that was discovered first.
class CanonicalFacets {
 public:
  explicit CanonicalFacets(PermGroup g) : db_(std::move(g)) {}
  /// Registers the facet; true iff it is the first-discovered member of its orbit.
  bool admits(const FaceSet& facet);
  std::vector<FaceSet> representatives() const;

 private:
  OrbitDatabase db_;
  std::map<std::size_t, FaceSet> first_;
};

/// False iff the facet's orbit is known through a different member.
bool adjacency_pruning_filter(const FaceSet& facet, CanonicalFacets& known);

struct PivotResult {
  /// Facet orbits of the unperturbed cone under the task group.
  std::vector<Facet> facets;
  /// Facet orbits of the perturbed cone under the basis group.
  std::vector<FaceSet> fine_facets;
  std::vector<FaceSet> basis_reps;
  /// Distinct bases popped from the search stack, in order.
  std::vector<FaceSet> visited;
};

/// Depth-first search of the basis graph up to H (or the task group when
/// unperturbed). Pruning follows task.options.pivot_pruning.
PivotResult explore_basis_graph(const ConversionTask& task, const std::optional<PerturbationSpec>& spec,
                                const std::optional<FaceSet>& start = std::nullopt);

/// Entry point for recursive_convert.
std::vector<Facet> pivot_orbits(const ConversionTask& task, std::size_t depth);

/// Independent subsets stay independent, and every perturbed facet lies in
/// an original facet. nu[i] is the perturbed index of ray i. Exponential.
bool verify_valid_perturbation(const RationalMatrix& v, const RationalMatrix& perturbed, const std::vector<int>& nu);

/// Homogenized vertices of [-1,1]^d; vertex k has coordinate j = +1 iff bit j of k is set.
Cone centered_cube(int d);

/// Stabilizer of {-e, e} in the cube group, pulled orbitwise by increasing
/// min(e·v, -e·v).
PerturbationSpec omega_pulling(const Cone& cube, const PermGroup& g);

/// One basis orbit and 2·d! perturbed facets refining the cube's facets.
bool linear_ordering_triangulation_check(int d);

/// Subgroup generated by random elements with exactly `orbits` ray orbits,
/// or nullopt after `attempts` tries.
std::optional<PermGroup> random_subgroup_with_orbits(const PermGroup& g, std::size_t orbits, std::uint64_t seed,
                                                     int attempts = 200);

}  // namespace symcone
