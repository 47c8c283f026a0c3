#include "chabauty/sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace chabauty {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::Diverged: return "diverged";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

ConvergenceReport run_sequence(const SubgroupDescriptor& base, const ConjugatorSchema& schema,
                               const SubgroupDescriptor& candidate, const Window& w,
                               const std::vector<long>& indices, double tol) {
  if (indices.empty()) throw std::invalid_argument("run_sequence: empty index list");
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i] <= indices[i - 1]) {
      throw std::invalid_argument("run_sequence: indices must be strictly increasing");
    }
  }

  ConvergenceReport report;
  report.indices = indices;
  report.window = w;
  report.tol = tol;
  report.schema_description = schema.description();
  report.distances.resize(indices.size());
  report.forward.resize(indices.size());
  report.backward.resize(indices.size());

  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto conjugated = conjugate_descriptor(schema.at(indices[i]), base);
    const auto est = chabauty_distance(conjugated, candidate, w);
    report.distances[i] = est.value;
    report.forward[i] = est.forward;
    report.backward[i] = est.backward;
    report.residual_flag = report.residual_flag || !est.certified;
  }
  report.final_distance = report.distances.back();

  if (report.residual_flag) {
    report.verdict = Verdict::Inconclusive;
    return report;
  }

  const std::size_t n = report.distances.size();
  const std::size_t tail = std::min<std::size_t>(3, n);
  bool tail_nonincreasing = true;
  for (std::size_t i = n - tail; i + 1 < n; ++i) {
    if (report.distances[i + 1] > 1.10 * report.distances[i] + 1e-12) tail_nonincreasing = false;
  }
  bool tail_above_tol = true;
  for (std::size_t i = n - tail; i < n; ++i) {
    if (report.distances[i] <= tol) tail_above_tol = false;
  }

  if (report.final_distance <= tol && tail_nonincreasing) {
    report.verdict = Verdict::Converged;
  } else if (report.final_distance > tol && tail_above_tol) {
    report.verdict = Verdict::Diverged;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

}  // namespace chabauty
