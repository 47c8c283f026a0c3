#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>

// Arithmetic for the affine special-linear group SL(2,R) x| R^2.
// Elements are pairs (g, v) with g in SL(2,R), v in R^2 and product
// (g, v)(g', v') = (g g', v + g v').

namespace chabauty {

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

using Matrix2d = Matrix2<double>;
using Vector2d = Vector2<double>;

// |det - 1| above this triggers renormalization after a product.
inline constexpr double kDetDriftTol = 1e-12;
// |det(I - g)| at or below this band means "1 is an eigenvalue of g".
inline constexpr double kSingularTol = 1e-8;
// Trace band for the unipotency test.
inline constexpr double kUnipotentTol = 1e-6;

template <typename Scalar>
struct GroupElement {
  Matrix2<Scalar> matrix = Matrix2<Scalar>::Identity();
  Vector2<Scalar> translation = Vector2<Scalar>::Zero();

  static GroupElement Identity() { return GroupElement{}; }
};

using GroupElementd = GroupElement<double>;

/// Rescales m back onto det = 1 when floating-point drift has accumulated.
template <typename Scalar>
Matrix2<Scalar> renormalize_det(const Matrix2<Scalar>& m) {
  const Scalar det = m.determinant();
  if (det > Scalar(0) && std::abs(det - Scalar(1)) > Scalar(kDetDriftTol)) {
    return m / std::sqrt(det);
  }
  return m;
}

template <typename Scalar>
GroupElement<Scalar> mul(const GroupElement<Scalar>& x, const GroupElement<Scalar>& y) {
  GroupElement<Scalar> out;
  out.matrix = renormalize_det<Scalar>(x.matrix * y.matrix);
  out.translation = x.translation + x.matrix * y.translation;
  return out;
}

// (g, v)^-1 = (g^-1, -g^-1 v)
template <typename Scalar>
GroupElement<Scalar> inv(const GroupElement<Scalar>& x) {
  GroupElement<Scalar> out;
  out.matrix = renormalize_det<Scalar>(x.matrix.inverse().eval());
  out.translation = -(out.matrix * x.translation);
  return out;
}

template <typename Scalar>
GroupElement<Scalar> conj(const GroupElement<Scalar>& h, const GroupElement<Scalar>& x) {
  return mul(mul(h, x), inv(h));
}

// (I, v)(g, 0)(I, v)^-1 = (g, v - g v)
template <typename VDerived, typename MDerived>
GroupElement<typename MDerived::Scalar> conj_translation(const Eigen::MatrixBase<VDerived>& v,
                                                         const Eigen::MatrixBase<MDerived>& g) {
  GroupElement<typename MDerived::Scalar> out;
  out.matrix = g;
  out.translation = v - g * v;
  return out;
}

/// Frobenius norm on the matrix part plus Euclidean norm on the translation.
template <typename Scalar>
Scalar dist(const GroupElement<Scalar>& x, const GroupElement<Scalar>& y) {
  return (x.matrix - y.matrix).norm() + (x.translation - y.translation).norm();
}

template <typename Scalar>
Scalar norm(const GroupElement<Scalar>& x) {
  return dist(x, GroupElement<Scalar>::Identity());
}

// For det = 1 the trace characterizes unipotency (both eigenvalues 1);
// the identity matrix counts as unipotent.
template <typename Derived>
bool is_unipotent(const Eigen::MatrixBase<Derived>& g,
                  typename Derived::Scalar tol = typename Derived::Scalar(kUnipotentTol)) {
  using Scalar = typename Derived::Scalar;
  return std::abs(g.trace() - Scalar(2)) <= tol;
}

// Dichotomy behind the translation-conjugation limits: either 1 is an
// eigenvalue of g (returns nullopt) or (I - g) is invertible and the
// conjugating translations must converge to (I - g)^-1 v.
template <typename Derived, typename VDerived>
std::optional<Vector2<typename Derived::Scalar>> fixed_point_predict(
    const Eigen::MatrixBase<Derived>& g, const Eigen::MatrixBase<VDerived>& v,
    typename Derived::Scalar singular_tol = typename Derived::Scalar(kSingularTol)) {
  using Scalar = typename Derived::Scalar;
  const Matrix2<Scalar> img = Matrix2<Scalar>::Identity() - g;
  if (std::abs(img.determinant()) <= singular_tol) return std::nullopt;
  return Vector2<Scalar>(img.inverse() * v);
}

template <typename Scalar>
Matrix2<Scalar> unipotent_upper(Scalar s) {
  Matrix2<Scalar> m;
  m << Scalar(1), s, Scalar(0), Scalar(1);
  return m;
}

template <typename Scalar>
Matrix2<Scalar> unipotent_lower(Scalar s) {
  Matrix2<Scalar> m;
  m << Scalar(1), Scalar(0), s, Scalar(1);
  return m;
}

// diag(e^t, e^-t); parametrized by log a so the one-parameter law is additive.
template <typename Scalar>
Matrix2<Scalar> diagonal_log(Scalar t) {
  Matrix2<Scalar> m;
  m << std::exp(t), Scalar(0), Scalar(0), std::exp(-t);
  return m;
}

// [[cos t, sin t], [-sin t, cos t]]
template <typename Scalar>
Matrix2<Scalar> rotation(Scalar t) {
  Matrix2<Scalar> m;
  const Scalar c = std::cos(t), s = std::sin(t);
  m << c, s, -s, c;
  return m;
}

template <typename Scalar>
struct IwasawaCoords {
  Scalar s = Scalar(0);      // upper unipotent parameter
  Scalar t = Scalar(0);      // log of the diagonal entry
  Scalar theta = Scalar(0);  // rotation angle
};

using IwasawaCoordsd = IwasawaCoords<double>;

// g = u(s) a(t) k(theta), the N+ A K decomposition of SL(2,R).
template <typename Scalar>
Matrix2<Scalar> iwasawa_compose(const IwasawaCoords<Scalar>& c) {
  return Matrix2<Scalar>(unipotent_upper(c.s) * diagonal_log(c.t) * rotation(c.theta));
}

template <typename Scalar>
IwasawaCoords<Scalar> iwasawa_decompose(const Matrix2<Scalar>& g) {
  IwasawaCoords<Scalar> c;
  const Scalar r = std::hypot(g(1, 0), g(1, 1));  // = e^-t
  c.t = -std::log(r);
  c.theta = std::atan2(-g(1, 0), g(1, 1));
  const Matrix2<Scalar> m = g * rotation(-c.theta);  // u(s) a(t)
  c.s = m(0, 1) / r;
  return c;
}

// Element of the Lie algebra sl(2,R) x| R^2 (m traceless).
template <typename Scalar>
struct LieAlgebraElement {
  Matrix2<Scalar> m = Matrix2<Scalar>::Zero();
  Vector2<Scalar> w = Vector2<Scalar>::Zero();
};

using LieAlgebraElementd = LieAlgebraElement<double>;

template <typename Scalar>
Scalar lie_norm(const LieAlgebraElement<Scalar>& x) {
  return std::sqrt(x.m.squaredNorm() + x.w.squaredNorm());
}

// Ad_(h_g, h_v)(m, w) = (h_g m h_g^-1, h_g w - h_g m h_g^-1 h_v)
template <typename Scalar>
LieAlgebraElement<Scalar> adjoint(const GroupElement<Scalar>& h, const LieAlgebraElement<Scalar>& x) {
  LieAlgebraElement<Scalar> out;
  out.m = h.matrix * x.m * h.matrix.inverse();
  out.w = h.matrix * x.w - out.m * h.translation;
  return out;
}

// exp(m, w) = (exp m, V(m) w) with V(m) = integral of exp(tau m) over [0,1].
// For traceless m, m^2 = -det(m) I, so both series collapse to two terms.
template <typename Scalar>
GroupElement<Scalar> exp_lie(const LieAlgebraElement<Scalar>& x) {
  const Scalar delta = -x.m.determinant();  // m^2 = delta I
  Scalar c, s, f1, f2;                      // exp = cI + sm, V = f1 I + f2 m
  if (delta > Scalar(1e-12)) {
    const Scalar r = std::sqrt(delta);
    c = std::cosh(r);
    s = std::sinh(r) / r;
    f1 = s;
    f2 = (std::cosh(r) - Scalar(1)) / delta;
  } else if (delta < Scalar(-1e-12)) {
    const Scalar r = std::sqrt(-delta);
    c = std::cos(r);
    s = std::sin(r) / r;
    f1 = s;
    f2 = (Scalar(1) - std::cos(r)) / (-delta);
  } else {
    c = Scalar(1) + delta / Scalar(2);
    s = Scalar(1) + delta / Scalar(6);
    f1 = Scalar(1) + delta / Scalar(6);
    f2 = Scalar(0.5) + delta / Scalar(24);
  }
  GroupElement<Scalar> out;
  out.matrix = c * Matrix2<Scalar>::Identity() + s * x.m;
  out.translation = f1 * x.w + f2 * (x.m * x.w);
  return out;
}

}  // namespace chabauty
