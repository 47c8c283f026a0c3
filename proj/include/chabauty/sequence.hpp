#pragma once

#include <string>
#include <vector>

#include "chabauty/metric.hpp"
#include "chabauty/schema.hpp"
#include "chabauty/window.hpp"

namespace chabauty {

enum class Verdict { Converged, Diverged, Inconclusive };

const char* verdict_name(Verdict v);

struct ConvergenceReport {
  std::vector<long> indices;
  std::vector<double> distances;  // windowed distance per index
  std::vector<double> forward;
  std::vector<double> backward;
  Verdict verdict = Verdict::Inconclusive;
  double final_distance = 0.0;
  bool residual_flag = false;  // an inner minimization missed certification
  Window window;
  double tol = 0.05;
  std::string schema_description;
};

/// Conjugates base along the schema and tracks the windowed distance to the
/// candidate at each index. Converged requires the final distance under tol
/// and a non-increasing tail (within 10%); an uncertified inner minimization
/// forces Inconclusive.
ConvergenceReport run_sequence(const SubgroupDescriptor& base, const ConjugatorSchema& schema,
                               const SubgroupDescriptor& candidate, const Window& w,
                               const std::vector<long>& indices, double tol);

}  // namespace chabauty
