#include "chabauty/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <functional>

#include "chabauty/optim.hpp"

namespace chabauty {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kGridBudget = 60000;   // grid nodes before ball rejection
constexpr std::size_t kSheetBudget = 20000;  // points per one-dimensional sheet
constexpr double kBoxCap = 32.0;             // directional parameter cap (rotation
                                             // coordinates are periodic and never
                                             // leave the ball on their own)

double chord(const ComponentChart& chart, double t0, double t1) {
  return dist(chart.elem(t0), chart.elem(t1));
}

// Parameter step moving approximately `mesh` in dist, found from a local
// speed estimate plus one correction pass.
double step_for_mesh(const ComponentChart& chart, double t, double dir, double mesh) {
  const double h = 1e-5 * (1.0 + std::abs(t));
  double speed = chord(chart, t - h, t + h) / (2 * h);
  if (!(speed > 1e-12)) speed = 1e-12;
  double dt = mesh / speed;
  for (int i = 0; i < 2; ++i) {
    const double c = chord(chart, t, t + dir * dt);
    if (c > 1e-300) dt *= mesh / c;
    dt = std::min(dt, 1e12);
  }
  return dt;
}

void sample_sheet(const ComponentChart& chart, int chart_index, double seed, const Window& w,
                  SampleResult& result) {
  const GroupElementd id = GroupElementd::Identity();
  const double r = w.radius + 1e-9 * (1.0 + w.radius);

  auto push = [&](const GroupElementd& e, double t) {
    result.points.push_back(e);
    result.tags.push_back(SampleTag{chart_index, {t}});
  };

  // A seed outside the ball (conjugated second sheets) is first pulled
  // toward the sheet's closest approach to the identity.
  if (dist(chart.elem(seed), id) > r) {
    auto closeness = [&](double t) { return dist(chart.elem(t), id); };
    const auto m = optim::minimize_1d(closeness, seed, 1.0, 1e-9, 300);
    seed = m.x;
    if (m.value > r) return;  // sheet misses the window
  }
  push(chart.elem(seed), seed);

  const double max_range = chart.periodic ? chart.period / 2.0 : std::numeric_limits<double>::infinity();

  for (double dir : {1.0, -1.0}) {
    double t = seed;
    std::size_t misses = 0;
    for (std::size_t k = 0; k < kSheetBudget; ++k) {
      const double dt = step_for_mesh(chart, t, dir, w.mesh);
      t += dir * dt;
      if (std::abs(t - seed) > max_range) break;
      GroupElementd e = chart.elem(t);
      if (dist(e, id) <= r) {
        push(e, t);
        misses = 0;
      } else {
        // allow shallow exits before giving up the sweep
        if (++misses > 30) break;
      }
    }
  }
}

using GridChart = std::function<GroupElementd(const std::vector<double>&)>;

// Axis-plus-diagonal expansion: largest coordinate box whose directions
// stay in the ball, with margin for tilted in-window regions.
Eigen::VectorXd expand_box(const GridChart& chart, int dim, const Window& w) {
  std::vector<Eigen::VectorXd> dirs;
  // enumerate {-1,0,1}^dim \ {0}
  const int total = static_cast<int>(std::pow(3, dim));
  for (int code = 1; code < total; ++code) {
    int c = code;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    bool nonzero = false;
    for (int i = 0; i < dim; ++i) {
      const int digit = c % 3;
      c /= 3;
      if (digit == 1) v[i] = 1.0;
      if (digit == 2) v[i] = -1.0;
      nonzero = nonzero || digit != 0;
    }
    if (nonzero) dirs.push_back(v.normalized());
  }

  const GroupElementd id = GroupElementd::Identity();
  auto inside = [&](const Eigen::VectorXd& p) {
    std::vector<double> pv(p.data(), p.data() + p.size());
    return dist(chart(pv), id) <= w.radius;
  };

  Eigen::VectorXd box = Eigen::VectorXd::Constant(dim, 1e-6);
  for (const auto& dir : dirs) {
    // find the exit scale along dir by doubling then bisection
    double lo = 0.0, hi = 1e-3;
    while (hi < kBoxCap && inside(hi * dir)) {
      lo = hi;
      hi *= 2.0;
    }
    if (hi >= kBoxCap && inside(kBoxCap * dir)) {
      lo = hi = kBoxCap;
    } else {
      for (int i = 0; i < 30; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (inside(mid * dir)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
    for (int i = 0; i < dim; ++i) box[i] = std::max(box[i], std::abs(hi * dir[i]));
  }
  return box.cwiseMin(kBoxCap) * 1.25;
}

void sample_grid_chart(const GridChart& chart, int dim, const Window& w, SampleResult& result) {
  const Eigen::VectorXd box = expand_box(chart, dim, w);

  // Per-axis speeds at the box scale set the grid steps.
  const GroupElementd id = GroupElementd::Identity();
  Eigen::VectorXd speed(dim);
  for (int i = 0; i < dim; ++i) {
    std::vector<double> p0(dim, 0.0), p1(dim, 0.0);
    const double h = std::max(1e-7, 1e-4 * box[i]);
    p0[i] = -h;
    p1[i] = h;
    double sp = dist(chart(p0), chart(p1)) / (2 * h);
    // probe near the box edge as well; conjugated families speed up there
    std::vector<double> q0(dim, 0.0), q1(dim, 0.0);
    q0[i] = box[i] * 0.7 - h;
    q1[i] = box[i] * 0.7 + h;
    sp = std::max(sp, dist(chart(q0), chart(q1)) / (2 * h));
    speed[i] = std::max(sp, 1e-9);
  }

  // Grid cell diameter in dist units ~ mesh; solve for the coarsest mesh
  // within budget when the requested one would overflow.
  double mesh = w.mesh;
  auto count_for = [&](double m) {
    double nodes = 1.0;
    for (int i = 0; i < dim; ++i) {
      const double step = m / (speed[i] * std::sqrt(static_cast<double>(dim)));
      nodes *= std::max(1.0, std::floor(2 * box[i] / step) + 1);
    }
    return nodes;
  };
  if (count_for(mesh) > static_cast<double>(kGridBudget)) {
    double lo = mesh, hi = 4.0 * w.radius;
    for (int i = 0; i < 40; ++i) {
      const double mid = std::sqrt(lo * hi);
      if (count_for(mid) > static_cast<double>(kGridBudget)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    mesh = hi;
  }
  result.effective_mesh = std::max(result.effective_mesh, mesh);

  std::vector<double> step(dim);
  std::vector<long> halfn(dim);
  for (int i = 0; i < dim; ++i) {
    step[i] = mesh / (speed[i] * std::sqrt(static_cast<double>(dim)));
    halfn[i] = static_cast<long>(std::floor(box[i] / step[i]));
  }

  std::vector<long> idx(dim, 0);
  for (int i = 0; i < dim; ++i) idx[i] = -halfn[i];
  const double r = w.radius + 1e-9 * (1.0 + w.radius);
  std::vector<double> p(dim);
  while (true) {
    for (int i = 0; i < dim; ++i) p[i] = idx[i] * step[i];
    GroupElementd e = chart(p);
    if (dist(e, id) <= r) {
      result.points.push_back(e);
      result.tags.push_back(SampleTag{-1, p});
    }
    int axis = 0;
    while (axis < dim) {
      if (++idx[axis] <= halfn[axis]) break;
      idx[axis] = -halfn[axis];
      ++axis;
    }
    if (axis == dim) break;
  }
}

// The conjugated Levi family is {(G, (I - G) h_v)}; its in-window set is a
// thin sliver around the stabilizer of h_v. An exponential chart whose first
// axis is that stabilizer's nilpotent generator keeps the grid box aligned
// with the sliver.
GridChart levi_chart(const SubgroupDescriptor& d) {
  const Vector2d hv = d.conjugator.translation;
  Matrix2d b0;
  if (hv.norm() > 1e-9) {
    const Vector2d u = hv.normalized();
    const Vector2d perp(-u.y(), u.x());
    b0 = u * perp.transpose();  // nilpotent, kills hv
  } else {
    b0 << 0, 1, 0, 0;
  }
  // orthonormal completion inside traceless matrices
  std::vector<Matrix2d> basis{b0 / b0.norm()};
  const Matrix2d cands[3] = {(Matrix2d() << 1, 0, 0, -1).finished() / std::sqrt(2.0),
                             (Matrix2d() << 0, 1, 0, 0).finished(),
                             (Matrix2d() << 0, 0, 1, 0).finished()};
  for (const auto& c : cands) {
    Matrix2d m = c;
    for (const auto& b : basis) m -= (m.array() * b.array()).sum() * b;
    if (m.norm() > 1e-6) basis.push_back(Matrix2d(m / m.norm()));
    if (basis.size() == 3) break;
  }
  return [basis, hv](const std::vector<double>& p) {
    LieAlgebraElementd xi;
    for (std::size_t i = 0; i < 3; ++i) xi.m += p[i] * basis[i];
    const GroupElementd g = exp_lie(xi);
    GroupElementd out;
    out.matrix = g.matrix;
    out.translation = hv - g.matrix * hv;
    return out;
  };
}

void sample_grid(const SubgroupDescriptor& d, const Window& w, SampleResult& result) {
  if (d.family == Family::Levi) {
    sample_grid_chart(levi_chart(d), 3, w, result);
    return;
  }
  SubgroupDescriptor dd = d;
  sample_grid_chart([dd](const std::vector<double>& p) { return parametrize(dd, p); }, dimension(d),
                    w, result);
}

}  // namespace

SampleResult sample_detailed(const SubgroupDescriptor& d, const Window& w) {
  w.validate();
  SampleResult result;
  result.effective_mesh = w.mesh;
  if (dimension(d) == 1) {
    const auto charts = component_charts_1d(d);
    for (std::size_t ci = 0; ci < charts.size(); ++ci) {
      for (double seed : charts[ci].seeds) {
        sample_sheet(charts[ci], static_cast<int>(ci), seed, w, result);
      }
    }
  } else {
    sample_grid(d, w, result);
  }
  // The identity belongs to every family; keep it present even if grid
  // placement or stepping skipped the exact origin.
  const GroupElementd id = GroupElementd::Identity();
  bool has_id = false;
  for (const auto& p : result.points) {
    if (dist(p, id) <= 1e-9) {
      has_id = true;
      break;
    }
  }
  if (!has_id) {
    result.points.push_back(id);
    result.tags.push_back(SampleTag{dimension(d) == 1 ? 0 : -1,
                                    std::vector<double>(dimension(d) == 1 ? 1 : dimension(d), 0.0)});
  }
  return result;
}

std::vector<GroupElementd> sample(const SubgroupDescriptor& d, const Window& w) {
  return sample_detailed(d, w).points;
}

std::vector<std::size_t> thin_cover(const std::vector<GroupElementd>& pts, std::size_t max_points) {
  std::vector<std::size_t> keep;
  if (pts.empty()) return keep;
  if (pts.size() <= max_points) {
    keep.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) keep[i] = i;
    return keep;
  }
  std::vector<double> min_dist(pts.size(), std::numeric_limits<double>::infinity());
  std::size_t current = 0;
  keep.push_back(current);
  for (std::size_t k = 1; k < max_points; ++k) {
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      min_dist[i] = std::min(min_dist[i], dist(pts[i], pts[current]));
      if (min_dist[i] > best) {
        best = min_dist[i];
        best_i = i;
      }
    }
    current = best_i;
    keep.push_back(current);
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

}  // namespace chabauty
