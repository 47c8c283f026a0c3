#include "chabauty/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "chabauty/optim.hpp"

namespace chabauty {

namespace {

constexpr double kPi = 3.14159265358979323846;

// min over s of ||A - s N||_F; the matrix pencil is affine in s.
double nearest_on_matrix_pencil(const Matrix2d& A, const Matrix2d& N, double* s_out = nullptr) {
  const double nn = N.squaredNorm();
  double s = 0.0;
  if (nn > 1e-300) s = (A.array() * N.array()).sum() / nn;
  if (s_out) *s_out = s;
  return (A - s * N).norm();
}

double point_to_line(const Vector2d& p, const Vector2d& dir, double* t_out = nullptr) {
  const double nn = dir.squaredNorm();
  const double t = nn > 1e-300 ? p.dot(dir) / nn : 0.0;
  if (t_out) *t_out = t;
  return (p - t * dir).norm();
}

Vector2d rot90(const Vector2d& v) { return Vector2d(-v.y(), v.x()); }

DistanceResult finalize(DistanceResult r) {
  r.residual = std::min(r.residual, std::max(0.0, r.value));
  r.certified = r.residual <= std::max(kDistanceCertTol, kDistanceCertRel * r.value);
  return r;
}

double chart_speed(const ComponentChart& chart, double t) {
  const double h = std::max(1e-9, 1e-6 * (1.0 + std::abs(t)));
  const double sp = dist(chart.elem(t - h), chart.elem(t + h)) / (2 * h);
  return std::max(sp, 1e-12);
}

// Per-coordinate initial simplex steps sized so a step moves the objective
// by roughly target_move.
Eigen::VectorXd nm_steps(const optim::Objective& f, const Eigen::VectorXd& seed, double target_move) {
  const int n = static_cast<int>(seed.size());
  Eigen::VectorXd steps(n);
  const double f0 = f(seed);
  for (int i = 0; i < n; ++i) {
    const double h = std::max(1e-8, 1e-5 * (1.0 + std::abs(seed[i])));
    Eigen::VectorXd p = seed;
    p[i] += h;
    const double slope = std::abs(f(p) - f0) / h;
    steps[i] = target_move / std::max(slope, 1e-6);
    steps[i] = std::min(steps[i], 1e6);
  }
  return steps;
}

struct RawSeed {
  int chart = 0;
  double t = 0.0;
};

// Family-specific parameter guesses for the pulled-back point y (the raw,
// unconjugated family member closest to y in the obvious chart).
std::vector<RawSeed> analytic_raw_seeds(const SubgroupDescriptor& d, const GroupElementd& y) {
  std::vector<RawSeed> seeds;
  const Matrix2d& m = y.matrix;
  switch (d.family) {
    case Family::MaximalCompact: {
      const double theta = std::atan2(m(0, 1) - m(1, 0), m(0, 0) + m(1, 1));
      seeds.push_back({0, theta});
      seeds.push_back({0, theta + kPi});
      break;
    }
    case Family::Diagonal: {
      if (m(0, 0) > 1e-12 && m(1, 1) > 1e-12) {
        seeds.push_back({0, 0.5 * std::log(m(0, 0) / m(1, 1))});
      }
      break;
    }
    case Family::UnipotentUpper:
      seeds.push_back({0, m(0, 1)});
      break;
    case Family::UnipotentC: {
      seeds.push_back({0, m(0, 1)});
      const double c = d.params[0];
      if (std::abs(c) > 1e-12) seeds.push_back({0, y.translation.x() / c});
      break;
    }
    case Family::TildeNPlus:
      seeds.push_back({0, m(0, 1)});
      seeds.push_back({1, -m(0, 1)});
      break;
    case Family::HeisenbergLine: {
      const double a = d.params[0], b = d.params[1], c = d.params[2];
      if (std::abs(a) > 1e-12) seeds.push_back({0, m(0, 1) / a});
      if (std::abs(b) > 1e-12) seeds.push_back({0, y.translation.y() / b});
      if (std::abs(c) > 1e-12) seeds.push_back({0, y.translation.x() / c});
      break;
    }
    default:
      break;
  }
  return seeds;
}

DistanceResult one_dim_distance(const SubgroupDescriptor& d, const GroupElementd& x,
                                const Window& w, const SampleTag* hint) {
  const auto charts = component_charts_1d(d);
  const GroupElementd y = conj(inv(d.conjugator), x);

  std::vector<RawSeed> seeds;
  for (std::size_t ci = 0; ci < charts.size(); ++ci) {
    for (double s : charts[ci].seeds) seeds.push_back({static_cast<int>(ci), s});
  }
  for (const auto& s : analytic_raw_seeds(d, y)) seeds.push_back(s);
  if (hint && hint->chart >= 0 && hint->chart < static_cast<int>(charts.size()) &&
      hint->params.size() == 1) {
    seeds.push_back({hint->chart, hint->params[0]});
  }

  DistanceResult best;
  best.value = std::numeric_limits<double>::infinity();
  best.residual = 0.0;

  std::vector<std::pair<int, double>> tried;
  for (const auto& seed : seeds) {
    bool dup = false;
    for (const auto& t : tried) {
      if (t.first == seed.chart && std::abs(t.second - seed.t) <= 1e-12 * (1.0 + std::abs(seed.t))) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    tried.emplace_back(seed.chart, seed.t);

    const auto& chart = charts[seed.chart];
    auto f = [&chart, &x](double t) { return dist(chart.elem(t), x); };
    const double scale = 0.5 * w.mesh / chart_speed(chart, seed.t);
    const auto r = optim::minimize_1d(f, seed.t, scale, 1e-12, 120);
    if (r.value < best.value) {
      best.value = r.value;
      best.residual = r.residual;
    }
  }
  return best;
}

// conj(h, Levi) = {(G, (I - G) h_v) : G in SL(2,R)}; only the conjugator's
// translation part matters.
DistanceResult levi_distance(const SubgroupDescriptor& d, const GroupElementd& x) {
  const Vector2d hv = d.conjugator.translation;
  const Matrix2d& gx = x.matrix;
  const Vector2d& vx = x.translation;

  DistanceResult best;
  if (hv.norm() <= 1e-12) {
    best.value = vx.norm();  // G = gx matches the matrix part exactly
    return best;
  }

  auto f_of = [&](const Matrix2d& G) {
    return (G - gx).norm() + ((Matrix2d::Identity() - G) * hv - vx).norm();
  };

  // Unconstrained-translation candidate.
  best.value = f_of(gx);

  // Constrained route: G hv = hv - vx exactly, a line inside SL(2,R).
  const Vector2d b = hv - vx;
  const Vector2d wh = hv.normalized();
  const Vector2d wp = rot90(wh);
  Matrix2d R;
  R.col(0) = wh;
  R.col(1) = wp;
  const Vector2d beta = b / hv.norm();
  Matrix2d G_tau;
  bool have_constrained = false;
  if (beta.norm() > 1e-6) {
    const Vector2d gamma0 = rot90(beta) / beta.squaredNorm();
    Matrix2d A0, B;
    A0.col(0) = beta;
    A0.col(1) = gamma0;
    A0 = Matrix2d(A0 * R.transpose());
    B.col(0) = Vector2d::Zero();
    B.col(1) = beta;
    B = Matrix2d(B * R.transpose());
    const double tau = ((gx - A0).array() * B.array()).sum() / B.squaredNorm();
    G_tau = A0 + tau * B;
    have_constrained = true;
    best.value = std::min(best.value, f_of(G_tau));
  }

  // Polish over Iwasawa coordinates of G.
  auto obj = [&](const Eigen::VectorXd& p) {
    return f_of(iwasawa_compose<double>({p[0], p[1], p[2]}));
  };
  std::vector<Eigen::VectorXd> starts;
  {
    const auto c = iwasawa_decompose(gx);
    starts.push_back((Eigen::VectorXd(3) << c.s, c.t, c.theta).finished());
  }
  if (have_constrained) {
    const auto c = iwasawa_decompose(Matrix2d(renormalize_det(G_tau)));
    starts.push_back((Eigen::VectorXd(3) << c.s, c.t, c.theta).finished());
  }
  optim::NelderMeadOptions opts;
  opts.max_evaluations = 420;
  opts.restarts = 2;
  for (const auto& s : starts) {
    const Eigen::VectorXd steps = nm_steps(obj, s, 0.25);
    const auto r = optim::nelder_mead(obj, s, steps, opts);
    if (r.value < best.value) {
      best.value = r.value;
      best.residual = r.residual;
    }
  }
  return best;
}

DistanceResult borel_distance(const SubgroupDescriptor& d, const GroupElementd& x) {
  const GroupElementd h = d.conjugator;
  const GroupElementd y = conj(inv(h), x);
  auto obj = [&](const Eigen::VectorXd& p) {
    GroupElementd raw;
    raw.matrix = unipotent_upper(p[1]) * diagonal_log(p[0]);
    return dist(conj(h, raw), x);
  };
  const auto c = iwasawa_decompose(y.matrix);
  std::vector<Eigen::VectorXd> starts;
  starts.push_back((Eigen::VectorXd(2) << c.t, c.s).finished());
  starts.push_back(Eigen::VectorXd::Zero(2));

  DistanceResult best;
  best.value = std::numeric_limits<double>::infinity();
  optim::NelderMeadOptions opts;
  opts.max_evaluations = 420;
  opts.restarts = 2;
  for (const auto& s : starts) {
    const Eigen::VectorXd steps = nm_steps(obj, s, 0.25);
    const auto r = optim::nelder_mead(obj, s, steps, opts);
    if (r.value < best.value) {
      best.value = r.value;
      best.residual = r.residual;
    }
  }
  return best;
}

// Translation part is all of R^2, so only the matrix pencil matters.
DistanceResult nplus_r2_distance(const SubgroupDescriptor& d, const GroupElementd& x) {
  const Matrix2d& hg = d.conjugator.matrix;
  const Matrix2d N = hg * unipotent_upper(1.0) * hg.inverse() - Matrix2d::Identity();
  DistanceResult res;
  res.value = nearest_on_matrix_pencil(x.matrix - Matrix2d::Identity(), N);
  return res;
}

DistanceResult borel_full_distance(const SubgroupDescriptor& d, const GroupElementd& x) {
  const Matrix2d& hg = d.conjugator.matrix;
  const Matrix2d hgi = hg.inverse();
  // For fixed diagonal part the conjugated matrix is affine in s.
  auto value_at = [&](double t) {
    const Matrix2d base = hg * diagonal_log(t) * hgi;
    const Matrix2d pencil = hg * Matrix2d((Matrix2d() << 0, std::exp(-t), 0, 0).finished()) * hgi;
    return nearest_on_matrix_pencil(x.matrix - base, pencil);
  };
  const GroupElementd y = conj(inv(d.conjugator), x);
  const auto c = iwasawa_decompose(y.matrix);
  DistanceResult res;
  const auto r0 = optim::minimize_1d(value_at, c.t, 0.1, 1e-12, 140);
  const auto r1 = optim::minimize_1d(value_at, 0.0, 0.1, 1e-12, 140);
  res.value = std::min(r0.value, r1.value);
  res.residual = (r0.value < r1.value ? r0 : r1).residual;
  return res;
}

DistanceResult nplus_x_axis_distance(const SubgroupDescriptor& d, const GroupElementd& x) {
  const GroupElementd h = d.conjugator;
  const Matrix2d N = h.matrix * unipotent_upper(1.0) * h.matrix.inverse() - Matrix2d::Identity();
  const Vector2d line_dir = h.matrix * Vector2d(1.0, 0.0);
  auto value_at = [&](double s) {
    const Matrix2d M = Matrix2d::Identity() + s * N;
    const Vector2d base = h.translation - M * h.translation;
    return (x.matrix - M).norm() + point_to_line(x.translation - base, line_dir);
  };
  double s_pencil = 0.0;
  nearest_on_matrix_pencil(x.matrix - Matrix2d::Identity(), N, &s_pencil);
  const GroupElementd y = conj(inv(h), x);
  DistanceResult res;
  const auto r0 = optim::minimize_1d(value_at, s_pencil, 0.05, 1e-12, 120);
  const auto r1 = optim::minimize_1d(value_at, y.matrix(0, 1), 0.05, 1e-12, 120);
  res.value = std::min(r0.value, r1.value);
  res.residual = (r0.value < r1.value ? r0 : r1).residual;
  return res;
}

}  // namespace

DistanceResult distance_to_detailed(const SubgroupDescriptor& d, const GroupElementd& x,
                                    const Window& w, const SampleTag* hint) {
  switch (d.family) {
    case Family::R2Full: {
      DistanceResult res;
      res.value = (x.matrix - Matrix2d::Identity()).norm();
      return finalize(res);
    }
    case Family::LineV: {
      const Vector2d dir = d.conjugator.matrix *
                           (d.line_infinite ? Vector2d(0.0, 1.0) : Vector2d(1.0, d.params[0]));
      DistanceResult res;
      res.value = (x.matrix - Matrix2d::Identity()).norm() + point_to_line(x.translation, dir);
      return finalize(res);
    }
    case Family::Levi:
      return finalize(levi_distance(d, x));
    case Family::NPlusSemidirectR2:
      return finalize(nplus_r2_distance(d, x));
    case Family::BorelFull:
      return finalize(borel_full_distance(d, x));
    case Family::NPlusTimesXAxis:
      return finalize(nplus_x_axis_distance(d, x));
    case Family::Borel:
      return finalize(borel_distance(d, x));
    default:
      return finalize(one_dim_distance(d, x, w, hint));
  }
}

double distance_to(const SubgroupDescriptor& d, const GroupElementd& x) {
  return distance_to_detailed(d, x).value;
}

}  // namespace chabauty
