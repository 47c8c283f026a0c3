#include "chabauty/probe.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace chabauty {

StructuralFlags structural_probe(const std::vector<GroupElementd>& points, double tol) {
  if (points.empty()) throw std::invalid_argument("structural_probe: no points");
  StructuralFlags flags;

  // translation span among near-identity matrix parts
  std::vector<Vector2d> translations;
  for (const auto& p : points) {
    if ((p.matrix - Matrix2d::Identity()).norm() <= tol) translations.push_back(p.translation);
  }
  if (translations.size() >= 2) {
    Eigen::MatrixXd m(2, translations.size());
    for (std::size_t i = 0; i < translations.size(); ++i) m.col(i) = translations[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const double sigma2 = svd.singularValues().size() > 1 ? svd.singularValues()[1] : 0.0;
    flags.contains_full_r2 =
        sigma2 / std::sqrt(static_cast<double>(translations.size())) >= std::max(10 * tol, 0.15);
  }

  // unipotency up to sign; trace is conjugation-invariant
  flags.all_matrix_parts_unipotent = true;
  for (const auto& p : points) {
    if (std::abs(std::abs(p.matrix.trace()) - 2.0) > tol) {
      flags.all_matrix_parts_unipotent = false;
      break;
    }
  }

  // a point on the -(unipotent) sheet marks the second component
  for (const auto& p : points) {
    if (std::abs(p.matrix.trace() + 2.0) <= tol) {
      flags.component_count = 2;
      break;
    }
  }

  // commutativity; commutators of near-identity pairs scale quadratically,
  // so favor pairs far from the identity
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return norm(points[a]) > norm(points[b]);
  });
  const std::size_t take = std::min<std::size_t>(order.size(), 40);
  double max_comm = 0.0;
  for (std::size_t i = 0; i < take; ++i) {
    for (std::size_t j = i + 1; j < take; ++j) {
      const auto& x = points[order[i]];
      const auto& y = points[order[j]];
      max_comm = std::max(max_comm, dist(mul(x, y), mul(y, x)));
    }
  }
  flags.abelian = max_comm <= std::max(tol, 1e-9);
  return flags;
}

}  // namespace chabauty
