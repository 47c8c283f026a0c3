#pragma once

#include "chabauty/descriptor.hpp"
#include "chabauty/sampling.hpp"
#include "chabauty/window.hpp"

namespace chabauty {

// Uncertified minimizations above this residual poison convergence verdicts.
// Since the true infimum is nonnegative, the found value itself bounds
// the gap, and a small relative gap cannot flip any verdict.
inline constexpr double kDistanceCertTol = 1e-6;
inline constexpr double kDistanceCertRel = 0.005;

struct DistanceResult {
  double value = 0.0;
  double residual = 0.0;  // optimizer gap estimate; 0 for closed forms
  bool certified = true;
};

/// Distance from x to the subgroup described by d: the infimum over family
/// parameters of dist(parametrize(d, p), x). Closed-form where the family
/// allows it, seeded local minimization otherwise. The window bounds the
/// parameter search region; hint (a sample tag of d) seeds the search.
DistanceResult distance_to_detailed(const SubgroupDescriptor& d, const GroupElementd& x,
                                    const Window& w = Window{}, const SampleTag* hint = nullptr);

double distance_to(const SubgroupDescriptor& d, const GroupElementd& x);

}  // namespace chabauty
