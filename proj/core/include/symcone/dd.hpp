#pragma once

#include "symcone/rational.hpp"

#include <cstddef>
#include <vector>

namespace symcone {

/// Extreme rays of {g : a·g ≥ 0 for every row a}, as primitive integer vectors.
/// The rows must span ℝ^dim so the solution cone is pointed. Rows are inserted
/// in lexicographic order; adjacency uses the combinatorial zero-set test.
std::vector<IntegerVector> dd_extreme_rays(const std::vector<IntegerVector>& rows, std::size_t dim);

}  // namespace symcone
