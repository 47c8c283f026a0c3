#pragma once

#include <vector>

#include "chabauty/group.hpp"

namespace chabauty {

struct StructuralFlags {
  bool contains_full_r2 = false;        // pure translations span both directions
  bool all_matrix_parts_unipotent = false;  // up to the +- sheet
  int component_count = 1;              // 2 when a -(unipotent) matrix part shows up
  bool abelian = false;
};

/// Coarse structure of a sampled limit: translation span, unipotency of the
/// matrix parts (allowing the +- sheet), a second component through -N+, and
/// commutativity of the sampled points.
StructuralFlags structural_probe(const std::vector<GroupElementd>& points, double tol);

}  // namespace chabauty
