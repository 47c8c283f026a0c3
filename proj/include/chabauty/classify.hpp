#pragma once

#include <vector>

#include "chabauty/descriptor.hpp"
#include "chabauty/probe.hpp"
#include "chabauty/sequence.hpp"
#include "chabauty/window.hpp"

namespace chabauty {

// Conjugacy classes of catalog families, the level at which catalog
// membership of a fitted limit is decided.
enum class LimitClass {
  Levi,
  Compact,
  Diagonal,
  Borel,
  BorelFull,
  UnipotentLine,    // N+, N+_c and the (a, 0, c) one-parameter lines
  TildeNPlus,
  TranslationLine,  // every pure-translation line
  HeisenbergLine,   // mixed lines with both a and b active
  NPlusSemidirectR2,
  R2Full,
  NPlusTimesXAxis,
};

const char* limit_class_name(LimitClass c);
LimitClass limit_class(const SubgroupDescriptor& d);

struct LimitReport {
  SubgroupDescriptor family;  // fitted descriptor, canonical representative
  bool definitive = false;
  double residual = 0.0;
  double conjugator_norm = 0.0;
  StructuralFlags flags;
  std::vector<SubgroupDescriptor> ties;  // equally fitting descriptions
  ConvergenceReport trace;               // filled by sequence-driven callers
};

/// Fits catalog families (parameters plus a conjugator) to a sampled limit,
/// preferring window-bounded conjugators and escalating the conjugator box
/// only when nothing fits. residual is the symmetric windowed gap of the
/// returned fit; definitive requires residual <= tol.
LimitReport classify_limit(const std::vector<GroupElementd>& points, const Window& w,
                           double tol = 0.05);

/// True iff every definitive fitted family has the base dimension. Callers
/// restrict this to sequences inside the exponential subgroup Borel x| R^2
/// with a connected base.
bool dimension_check(const std::vector<LimitReport>& reports, int base_dim);

// Tangent-space dimension of the cloud at the identity (SVD rank of the
// near-identity embedding). Exposed for testing.
int estimate_dimension(const std::vector<GroupElementd>& points);

}  // namespace chabauty
