#include "chabauty/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace chabauty::optim {

namespace {

struct Simplex {
  std::vector<Eigen::VectorXd> x;
  std::vector<double> f;

  void sort() {
    std::vector<std::size_t> idx(f.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    std::vector<Eigen::VectorXd> nx(x.size());
    std::vector<double> nf(f.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      nx[i] = x[idx[i]];
      nf[i] = f[idx[i]];
    }
    x.swap(nx);
    f.swap(nf);
  }

  double spread_f() const { return f.back() - f.front(); }

  double spread_x() const {
    double m = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) m = std::max(m, (x[i] - x[0]).norm());
    return m;
  }
};

}  // namespace

Result nelder_mead(const Objective& f, const Eigen::VectorXd& start,
                   const Eigen::VectorXd& steps, const NelderMeadOptions& opts) {
  const int n = static_cast<int>(start.size());
  Result res;
  res.x = start;
  res.value = f(start);
  res.evaluations = 1;

  if (n == 0) {
    res.converged = true;
    return res;
  }

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  Eigen::VectorXd best = start;
  double best_f = res.value;

  for (int round = 0; round <= opts.restarts; ++round) {
    Simplex s;
    s.x.push_back(best);
    s.f.push_back(best_f);
    const double shrink_scale = std::pow(0.25, round);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd p = best;
      double step = steps[i] * shrink_scale;
      if (step == 0.0) step = 1e-8;
      p[i] += step;
      s.x.push_back(p);
      s.f.push_back(f(p));
      ++res.evaluations;
    }

    while (res.evaluations < opts.max_evaluations) {
      s.sort();
      if (s.spread_f() <= opts.f_tol * (1.0 + std::abs(s.f.front())) || s.spread_x() <= opts.x_tol) {
        break;
      }
      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
      for (int i = 0; i < n; ++i) centroid += s.x[i];
      centroid /= n;

      const Eigen::VectorXd& worst = s.x[n];
      Eigen::VectorXd xr = centroid + alpha * (centroid - worst);
      double fr = f(xr);
      ++res.evaluations;

      if (fr < s.f[0]) {
        Eigen::VectorXd xe = centroid + gamma * (centroid - worst);
        double fe = f(xe);
        ++res.evaluations;
        if (fe < fr) {
          s.x[n] = xe;
          s.f[n] = fe;
        } else {
          s.x[n] = xr;
          s.f[n] = fr;
        }
      } else if (fr < s.f[n - 1]) {
        s.x[n] = xr;
        s.f[n] = fr;
      } else {
        Eigen::VectorXd xc = centroid + rho * (s.x[n] - centroid);
        double fc = f(xc);
        ++res.evaluations;
        if (fc < s.f[n]) {
          s.x[n] = xc;
          s.f[n] = fc;
        } else {
          for (int i = 1; i <= n; ++i) {
            s.x[i] = s.x[0] + sigma * (s.x[i] - s.x[0]);
            s.f[i] = f(s.x[i]);
            ++res.evaluations;
          }
        }
      }
    }
    s.sort();
    const bool round_converged =
        s.spread_f() <= opts.f_tol * (1.0 + std::abs(s.f.front())) || s.spread_x() <= opts.x_tol;
    if (s.f.front() <= best_f) {
      best_f = s.f.front();
      best = s.x.front();
      res.residual = s.spread_f();
      res.converged = round_converged;
    }
  }

  res.x = best;
  res.value = best_f;
  return res;
}

Result multistart_nelder_mead(const Objective& f, const std::vector<Eigen::VectorXd>& starts,
                              const Eigen::VectorXd& steps, const NelderMeadOptions& opts) {
  Result best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    Result r = nelder_mead(f, s, steps, opts);
    best.evaluations += r.evaluations;
    if (r.value < best.value) {
      best.x = r.x;
      best.value = r.value;
      best.residual = r.residual;
      best.converged = r.converged;
    }
  }
  return best;
}

Result1d minimize_1d(const Objective1d& f, double seed, double scale, double x_tol,
                     int max_evaluations) {
  Result1d res;
  if (scale <= 0.0) scale = 1.0;

  // Bracket by expansion around the seed.
  double a = seed, b = seed;
  double fa, fb;
  double fm = f(seed);
  res.evaluations = 1;
  double m = seed;
  double h = scale;
  for (int i = 0; i < 40; ++i) {
    a = m - h;
    b = m + h;
    fa = f(a);
    fb = f(b);
    res.evaluations += 2;
    if (fm <= fa && fm <= fb) break;  // bracketed
    if (fa < fb) {
      m = a;
      fm = fa;
    } else {
      m = b;
      fm = fb;
    }
    h *= 1.8;
    if (res.evaluations + 2 > max_evaluations) break;
  }

  // Golden-section on [a, b].
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  res.evaluations += 2;
  while ((b - a) > x_tol * (1.0 + std::abs(a) + std::abs(b)) && res.evaluations < max_evaluations) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
    ++res.evaluations;
  }
  if (f1 < f2) {
    res.x = x1;
    res.value = f1;
  } else {
    res.x = x2;
    res.value = f2;
  }
  if (fm < res.value) {
    res.x = m;
    res.value = fm;
  }
  const double slope = std::abs(f2 - f1) / std::max(1e-300, std::abs(x2 - x1));
  res.residual = (b - a) * slope;
  res.converged = (b - a) <= x_tol * (1.0 + std::abs(a) + std::abs(b));
  return res;
}

}  // namespace chabauty::optim
