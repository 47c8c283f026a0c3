#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace chabauty::optim {

using Objective = std::function<double(const Eigen::VectorXd&)>;
using Objective1d = std::function<double(double)>;

struct Result {
  Eigen::VectorXd x;
  double value = 0.0;
  // Estimated gap to the local optimum the search converged to
  // (simplex value spread, or bracket width times local slope).
  double residual = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  int max_evaluations = 600;
  double f_tol = 1e-12;
  double x_tol = 1e-11;
  int restarts = 1;  // re-expand the simplex around the best point
};

// Downhill simplex with per-coordinate initial steps. steps sets the
// scale of the starting simplex along each axis, which is what keeps
// stiff conjugated-family objectives tractable.
Result nelder_mead(const Objective& f, const Eigen::VectorXd& start,
                   const Eigen::VectorXd& steps, const NelderMeadOptions& opts = {});

struct Result1d {
  double x = 0.0;
  double value = 0.0;
  double residual = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Expands around seed with growing steps until a bracket is found, then
// golden-section down to x_tol * scale.
Result1d minimize_1d(const Objective1d& f, double seed, double scale,
                     double x_tol = 1e-10, int max_evaluations = 220);

// Multi-start helper: runs nelder_mead from each start and keeps the best.
Result multistart_nelder_mead(const Objective& f, const std::vector<Eigen::VectorXd>& starts,
                              const Eigen::VectorXd& steps, const NelderMeadOptions& opts = {});

}  // namespace chabauty::optim
