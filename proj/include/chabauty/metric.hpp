#pragma once

#include <cstddef>
#include <vector>

#include "chabauty/descriptor.hpp"
#include "chabauty/distance.hpp"
#include "chabauty/window.hpp"

namespace chabauty {

// Windowed symmetric Hausdorff estimate between two described subgroups.
struct HausdorffEstimate {
  double forward = 0.0;   // sup over samples of h1 of the distance to h2
  double backward = 0.0;  // symmetric counterpart
  double value = 0.0;     // max of both
  double residual = 0.0;  // worst minimization residual encountered
  bool certified = true;
  std::size_t samples_forward = 0;
  std::size_t samples_backward = 0;
};

struct DirectedResult {
  double value = 0.0;
  double residual = 0.0;
  bool certified = true;
  std::size_t samples_used = 0;
};

/// max over points of distance_to(target, point).
DirectedResult directed_hausdorff_detailed(const std::vector<GroupElementd>& points,
                                           const SubgroupDescriptor& target, const Window& w);

double directed_hausdorff(const std::vector<GroupElementd>& points,
                          const SubgroupDescriptor& target);

HausdorffEstimate chabauty_distance(const SubgroupDescriptor& h1, const SubgroupDescriptor& h2,
                                    const Window& w);

}  // namespace chabauty
