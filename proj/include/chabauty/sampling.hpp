#pragma once

#include <vector>

#include "chabauty/descriptor.hpp"
#include "chabauty/window.hpp"

namespace chabauty {

// Where a sample point came from: chart index for one-dimensional families
// (with chart parameter in params[0]), chart = -1 with the full parameter
// vector for grid-sampled families.
struct SampleTag {
  int chart = -1;
  std::vector<double> params;
};

struct SampleResult {
  std::vector<GroupElementd> points;
  std::vector<SampleTag> tags;  // parallel to points
  // Cover fineness actually realized. Equals w.mesh for one- and
  // two-dimensional families; higher-dimensional families may be sampled
  // coarser to stay within the point budget.
  double effective_mesh = 0.0;
};

/// In-window sample of the family: elements within w.radius of the identity,
/// covering the in-window part of the family at the effective mesh.
SampleResult sample_detailed(const SubgroupDescriptor& d, const Window& w);

std::vector<GroupElementd> sample(const SubgroupDescriptor& d, const Window& w);

// Greedy k-center thinning; keeps at most max_points, preserving coverage
// as evenly as possible. Returns indices into pts.
std::vector<std::size_t> thin_cover(const std::vector<GroupElementd>& pts, std::size_t max_points);

}  // namespace chabauty
