#include "chabauty/witness.hpp"

#include <cmath>
#include <stdexcept>

namespace chabauty {

namespace {

constexpr double kPi = 3.14159265358979323846;

GroupElementd pure_translation(double x, double y) {
  GroupElementd e;
  e.translation << x, y;
  return e;
}

GroupElementd matrix_only(const Matrix2d& m) {
  GroupElementd e;
  e.matrix = m;
  return e;
}

}  // namespace

GroupElementd levi_approximator(const GroupElementd& target, double alpha) {
  const double x = target.matrix(0, 1);
  if ((target.matrix - unipotent_upper(x)).norm() > 1e-9) {
    throw std::invalid_argument("levi_approximator: target matrix must be upper unipotent");
  }
  const double s = target.translation.x();
  const double t = target.translation.y();
  if (std::abs(alpha - s) < 1e-12) {
    throw std::invalid_argument("levi_approximator: alpha equals the x-displacement");
  }
  Matrix2d squeeze;
  squeeze << (alpha - s) / alpha, 0, 0, alpha / (alpha - s);
  const Matrix2d lower = unipotent_lower(-t / alpha);
  const Matrix2d g = squeeze * lower * unipotent_upper(x);
  return conj(pure_translation(alpha, 0.0), matrix_only(g));
}

ConjugatorSchema compact_case_schema(CompactCase c, double ratio) {
  switch (c) {
    case CompactCase::VerticalToV0:
      return ConjugatorSchema::translation_along(Vector2d(0, 1), GrowthSpec::power(1, 1));
    case CompactCase::HorizontalToVInf:
      return ConjugatorSchema::translation_along(Vector2d(1, 0), GrowthSpec::power(1, 1));
    case CompactCase::RatioLine:
      return ConjugatorSchema::translation_along(Vector2d(ratio, 1), GrowthSpec::power(1, 1));
    case CompactCase::TildeSheetPlus:
    case CompactCase::TildeSheetMinus:
      return ConjugatorSchema::iwasawa(GrowthSpec::constant(0), GrowthSpec::constant(0),
                                       GrowthSpec::power(1, 1), GrowthSpec::constant(0),
                                       GrowthSpec::constant(0));
  }
  throw std::invalid_argument("compact_case_schema: unknown case");
}

WitnessSample compact_witness(CompactCase c, double t, long n, double ratio) {
  const GroupElementd h = compact_case_schema(c, ratio).at(n);
  const double nn = static_cast<double>(n);
  WitnessSample ws;
  switch (c) {
    case CompactCase::VerticalToV0: {
      // v - k v = (-beta sin z, beta (1 - cos z)); sin z = -t / beta
      const double zeta = std::asin(-t / nn);
      ws.element = conj(h, matrix_only(rotation(zeta)));
      ws.target = pure_translation(t, 0.0);
      break;
    }
    case CompactCase::HorizontalToVInf: {
      // v - k v = (alpha (1 - cos z), alpha sin z); sin z = t / alpha
      const double zeta = std::asin(t / nn);
      ws.element = conj(h, matrix_only(rotation(zeta)));
      ws.target = pure_translation(0.0, t);
      break;
    }
    case CompactCase::RatioLine: {
      // v = (ratio, 1) n: beta sin z = -t lands on (t, -ratio t)
      const double zeta = std::asin(-t / nn);
      ws.element = conj(h, matrix_only(rotation(zeta)));
      ws.target = pure_translation(t, -ratio * t);
      break;
    }
    case CompactCase::TildeSheetPlus: {
      const double zeta = std::asin(t / (nn * nn + 1.0));
      ws.element = conj(h, matrix_only(rotation(zeta)));
      ws.target = matrix_only(unipotent_upper(t));
      break;
    }
    case CompactCase::TildeSheetMinus: {
      const double zeta = kPi + std::asin(t / (nn * nn + 1.0));
      ws.element = conj(h, matrix_only(rotation(zeta)));
      ws.target = matrix_only(Matrix2d(-unipotent_upper(t)));
      break;
    }
  }
  return ws;
}

ConjugatorSchema diagonal_case_schema(DiagonalCase c, double ratio) {
  const auto zero = GrowthSpec::constant(0);
  switch (c) {
    case DiagonalCase::ShearBalanced:
      // s_n = sqrt(n), v_n = (2n, sqrt(n)): adjoint direction (-2, 1, 0)/sqrt(5)
      return ConjugatorSchema::iwasawa(zero, zero, GrowthSpec::power(1, 0.5),
                                       GrowthSpec::power(2, 1), GrowthSpec::power(1, 0.5));
    case DiagonalCase::ShearDominated:
      // s_n = n, v_n = (2 n^1.5 + n, sqrt(n)): direction (-2, 0, -1)/sqrt(5)
      return ConjugatorSchema::iwasawa(zero, zero, GrowthSpec::power(1, 1),
                                       GrowthSpec::power_sum(2, 1.5, 1, 1),
                                       GrowthSpec::power(1, 0.5));
    case DiagonalCase::HorizontalToV0:
      return ConjugatorSchema::translation_along(Vector2d(1, 0), GrowthSpec::power(1, 1));
    case DiagonalCase::VerticalToVInf:
      return ConjugatorSchema::translation_along(Vector2d(0, 1), GrowthSpec::power(1, 1));
    case DiagonalCase::RatioLine:
      return ConjugatorSchema::translation_along(Vector2d(1, ratio), GrowthSpec::power(1, 1));
  }
  throw std::invalid_argument("diagonal_case_schema: unknown case");
}

WitnessSample diagonal_witness(DiagonalCase c, double t, long n, double ratio) {
  const ConjugatorSchema schema = diagonal_case_schema(c, ratio);
  const GroupElementd h = schema.at(n);
  const double nn = static_cast<double>(n);
  WitnessSample ws;
  switch (c) {
    case DiagonalCase::ShearBalanced:
    case DiagonalCase::ShearDominated:
      return heisenberg_witness(schema, t, n);
    case DiagonalCase::HorizontalToV0: {
      const double b = 1.0 - t / nn;  // (1 - b) alpha = t exactly
      ws.element = conj(h, matrix_only((Matrix2d() << b, 0, 0, 1.0 / b).finished()));
      ws.target = pure_translation(t, 0.0);
      break;
    }
    case DiagonalCase::VerticalToVInf: {
      const double b = nn / (nn - t);  // (1 - 1/b) beta = t exactly
      ws.element = conj(h, matrix_only((Matrix2d() << b, 0, 0, 1.0 / b).finished()));
      ws.target = pure_translation(0.0, t);
      break;
    }
    case DiagonalCase::RatioLine: {
      const double b = 1.0 - t / nn;
      ws.element = conj(h, matrix_only((Matrix2d() << b, 0, 0, 1.0 / b).finished()));
      ws.target = pure_translation(t, -ratio * t);
      break;
    }
  }
  return ws;
}

ConjugatorSchema borel_case_schema(BorelCase c) {
  switch (c) {
    case BorelCase::VerticalToR2:
      return ConjugatorSchema::translation_along(Vector2d(0, 1), GrowthSpec::power(1, 1));
    case BorelCase::HorizontalToAxis:
      return ConjugatorSchema::translation_along(Vector2d(1, 0), GrowthSpec::power(1, 1));
  }
  throw std::invalid_argument("borel_case_schema: unknown case");
}

WitnessSample borel_witness(BorelCase c, double x, double y, long n) {
  const GroupElementd h = borel_case_schema(c).at(n);
  const double nn = static_cast<double>(n);
  WitnessSample ws;
  switch (c) {
    case BorelCase::VerticalToR2: {
      // s_n = -x / beta, a_n = beta / (beta - y): displacement (x, y) exactly
      const double s = -x / nn;
      const double a = nn / (nn - y);
      Matrix2d b;
      b << a, s, 0, 1.0 / a;
      ws.element = conj(h, matrix_only(b));
      ws.target = pure_translation(x, y);
      break;
    }
    case BorelCase::HorizontalToAxis: {
      // squeeze handles the displacement, the shear passes through unchanged
      const double a = 1.0 - x / nn;
      Matrix2d b = unipotent_upper(y) * (Matrix2d() << a, 0, 0, 1.0 / a).finished();
      ws.element = conj(h, matrix_only(b));
      ws.target.matrix = unipotent_upper(y);
      ws.target.translation << x, 0;
      break;
    }
  }
  return ws;
}

ConjugatorSchema unipotent_case_schema() {
  return ConjugatorSchema::translation_along(Vector2d(0, 1), GrowthSpec::power(1, 1));
}

WitnessSample unipotent_witness(double t, long n) {
  const double beta = static_cast<double>(n);
  const GroupElementd h = unipotent_case_schema().at(n);
  WitnessSample ws;
  // (u(s), (-s beta, 0)) with s = -t / beta hits (t, 0) exactly
  ws.element = conj(h, matrix_only(unipotent_upper(-t / beta)));
  ws.target = pure_translation(t, 0.0);
  return ws;
}

LieAlgebraElementd conjugated_diagonal_direction(const ConjugatorSchema& schema, long n_ref) {
  LieAlgebraElementd diag;
  diag.m << 1, 0, 0, -1;
  LieAlgebraElementd x = adjoint(schema.at(n_ref), diag);
  const double s = lie_norm(x);
  x.m /= s;
  x.w /= s;
  return x;
}

WitnessSample heisenberg_witness(const ConjugatorSchema& schema, double t, long n) {
  LieAlgebraElementd diag;
  diag.m << 1, 0, 0, -1;
  const GroupElementd h = schema.at(n);
  const LieAlgebraElementd xn = adjoint(h, diag);
  const double lambda = t / lie_norm(xn);

  WitnessSample ws;
  // conj(h, exp(lambda D)) = exp(t X_n / |X_n|) stays in the conjugated family
  ws.element = conj(h, matrix_only(diagonal_log(lambda)));

  // orientation-match the reference direction so targets vary continuously in n
  LieAlgebraElementd limit = conjugated_diagonal_direction(schema, 100000000L);
  LieAlgebraElementd xhat = xn;
  xhat.m /= lie_norm(xn);
  xhat.w /= lie_norm(xn);
  const double align = (xhat.m.array() * limit.m.array()).sum() + xhat.w.dot(limit.w);
  if (align < 0) {
    limit.m *= -1;
    limit.w *= -1;
  }
  limit.m *= t;
  limit.w *= t;
  ws.target = exp_lie(limit);
  return ws;
}

}  // namespace chabauty
