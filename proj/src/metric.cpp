#include "chabauty/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chabauty/parallel.hpp"
#include "chabauty/sampling.hpp"

namespace chabauty {

namespace {

int g_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

constexpr std::size_t kSupBudget = 700;  // points driving the sup

DirectedResult directed_impl(const std::vector<GroupElementd>& points,
                             const SubgroupDescriptor& target, const Window& w) {
  DirectedResult out;
  if (points.empty()) return out;

  const auto keep = thin_cover(points, kSupBudget);
  out.samples_used = keep.size();

  // Nearest in-window sample of the target seeds each point's search.
  SampleResult target_samples;
  const bool hinted = dimension(target) == 1;
  if (hinted) {
    Window wc = w;
    wc.mesh = std::max(w.mesh, w.radius / 40.0);
    target_samples = sample_detailed(target, wc);
  }

  std::vector<DistanceResult> results(keep.size());
  parallel_for(keep.size(), [&](std::size_t i) {
    const GroupElementd& p = points[keep[i]];
    const SampleTag* hint = nullptr;
    if (hinted && !target_samples.points.empty()) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_j = 0;
      for (std::size_t j = 0; j < target_samples.points.size(); ++j) {
        const double dj = dist(target_samples.points[j], p);
        if (dj < best) {
          best = dj;
          best_j = j;
        }
      }
      hint = &target_samples.tags[best_j];
    }
    results[i] = distance_to_detailed(target, p, w, hint);
  });

  for (const auto& r : results) {
    if (r.value > out.value) out.value = r.value;
    out.residual = std::max(out.residual, r.residual);
    out.certified = out.certified && r.certified;
  }
  return out;
}

}  // namespace

int parallel_jobs() { return g_jobs; }

void set_parallel_jobs(int jobs) { g_jobs = std::max(1, jobs); }

DirectedResult directed_hausdorff_detailed(const std::vector<GroupElementd>& points,
                                           const SubgroupDescriptor& target, const Window& w) {
  return directed_impl(points, target, w);
}

double directed_hausdorff(const std::vector<GroupElementd>& points,
                          const SubgroupDescriptor& target) {
  return directed_impl(points, target, Window{}).value;
}

HausdorffEstimate chabauty_distance(const SubgroupDescriptor& h1, const SubgroupDescriptor& h2,
                                    const Window& w) {
  w.validate();
  const auto s1 = sample_detailed(h1, w);
  const auto s2 = sample_detailed(h2, w);
  const DirectedResult fwd = directed_impl(s1.points, h2, w);
  const DirectedResult bwd = directed_impl(s2.points, h1, w);
  HausdorffEstimate est;
  est.forward = fwd.value;
  est.backward = bwd.value;
  est.value = std::max(fwd.value, bwd.value);
  est.residual = std::max(fwd.residual, bwd.residual);
  est.certified = fwd.certified && bwd.certified;
  est.samples_forward = fwd.samples_used;
  est.samples_backward = bwd.samples_used;
  return est;
}

}  // namespace chabauty
