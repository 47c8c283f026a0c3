#include <doctest.h>

#include <cmath>
#include <random>

#include "chabauty/group.hpp"
#include "test_helpers.hpp"

using namespace chabauty;
using chabauty::testing::random_element;
using chabauty::testing::random_sl2;
using chabauty::testing::random_vec2;

namespace {

GroupElementd elem(double a11, double a12, double a21, double a22, double x, double y) {
  GroupElementd e;
  e.matrix << a11, a12, a21, a22;
  e.translation << x, y;
  return e;
}

}  // namespace

TEST_CASE("product law on explicit elements") {
  const GroupElementd id = GroupElementd::Identity();

  // translations compose under the identity matrix
  const auto t1 = elem(1, 0, 0, 1, 1, 0);
  const auto t2 = elem(1, 0, 0, 1, 0, 1);
  const auto p = mul(t1, t2);
  CHECK(dist(p, elem(1, 0, 0, 1, 1, 1)) == doctest::Approx(0.0).epsilon(1e-14));

  // hand-evaluated product of a shear and a transvection
  const auto a = elem(1, 1, 0, 1, 1, 0);
  const auto b = elem(1, 0, 1, 1, 0, 1);
  const auto ab = mul(a, b);
  CHECK(ab.matrix(0, 0) == doctest::Approx(2.0));
  CHECK(ab.matrix(0, 1) == doctest::Approx(1.0));
  CHECK(ab.matrix(1, 0) == doctest::Approx(1.0));
  CHECK(ab.matrix(1, 1) == doctest::Approx(1.0));
  CHECK(ab.translation.x() == doctest::Approx(2.0));
  CHECK(ab.translation.y() == doctest::Approx(1.0));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_element(rng);
    CHECK(dist(mul(x, id), x) <= 1e-12);
    CHECK(dist(mul(id, x), x) <= 1e-12);
  }
}

TEST_CASE("inverses") {
  const auto t = elem(1, 0, 0, 1, 3, -2);
  const auto ti = inv(t);
  CHECK(ti.translation.x() == doctest::Approx(-3.0));
  CHECK(ti.translation.y() == doctest::Approx(2.0));

  // solved by hand from mul(x, x^-1) = id
  const auto s = elem(1, 1, 0, 1, 1, 0);
  const auto si = inv(s);
  CHECK(si.matrix(0, 1) == doctest::Approx(-1.0));
  CHECK(si.translation.x() == doctest::Approx(-1.0));
  CHECK(si.translation.y() == doctest::Approx(0.0));

  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_element(rng);
    CHECK(dist(mul(x, inv(x)), GroupElementd::Identity()) <= 1e-10);
    CHECK(dist(inv(inv(x)), x) <= 1e-9);
  }
}

TEST_CASE("conjugation") {
  const GroupElementd id = GroupElementd::Identity();
  std::mt19937_64 rng(13);
  const auto x0 = random_element(rng, 3.0);
  CHECK(dist(conj(id, x0), x0) <= 1e-13);

  // conjugate of a squeeze by a horizontal translation: v - g v = (1, 0)
  GroupElementd h;
  h.translation << 10, 0;
  GroupElementd g;
  g.matrix << 0.9, 0, 0, 1.0 / 0.9;
  const auto c = conj(h, g);
  CHECK((c.matrix - g.matrix).norm() <= 1e-14);
  CHECK(c.translation.x() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.translation.y() == doctest::Approx(0.0).epsilon(1e-12));

  for (int i = 0; i < 100; ++i) {
    const auto hh = random_element(rng, 3.0);
    const auto xx = random_element(rng, 3.0);
    CHECK(dist(conj(hh, conj(inv(hh), xx)), xx) <= 1e-8 * (1.0 + norm(xx)));
  }
}

TEST_CASE("conjugation of matrices by translations") {
  // v = (10, 0), squeeze: fixed displacement (1, 0)
  const Matrix2d g = (Matrix2d() << 0.9, 0, 0, 1.0 / 0.9).finished();
  const auto a = conj_translation(Vector2d(10, 0), g);
  CHECK(a.translation.x() == doctest::Approx(1.0));
  CHECK(a.translation.y() == doctest::Approx(0.0));

  // v = (0, beta), shear u(s): displacement (-s beta, 0)
  const double s = 1.7, beta = 4.0;
  const auto b = conj_translation(Vector2d(0, beta), unipotent_upper(s));
  CHECK(b.translation.x() == doctest::Approx(-s * beta));
  CHECK(b.translation.y() == doctest::Approx(0.0));

  // identity matrix: no displacement
  const auto c = conj_translation(Vector2d(5, -7), Matrix2d::Identity());
  CHECK(c.translation.norm() <= 1e-15);

  // agreement with the full conjugation
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    const Matrix2d m = random_sl2(rng);
    const Vector2d v = random_vec2(rng);
    GroupElementd hv;
    hv.translation = v;
    GroupElementd gm;
    gm.matrix = m;
    CHECK(dist(conj_translation(v, m), conj(hv, gm)) <= 1e-12);
  }
}

TEST_CASE("fixed point prediction dichotomy") {
  // quarter turn: (I - g) = [[1, 1], [-1, 1]], inverse applied to (1, 0)
  const Matrix2d rot = (Matrix2d() << 0, -1, 1, 0).finished();
  const auto r = fixed_point_predict(rot, Vector2d(1, 0));
  REQUIRE(r.has_value());
  CHECK(r->x() == doctest::Approx(0.5));
  CHECK(r->y() == doctest::Approx(0.5));

  // unipotent: absent
  CHECK(!fixed_point_predict(unipotent_upper(1.0), Vector2d(1, 1)).has_value());

  // diag(2, 1/2): (I - g) = diag(-1, 1/2)
  const Matrix2d d = (Matrix2d() << 2, 0, 0, 0.5).finished();
  const auto rd = fixed_point_predict(d, Vector2d(1, 1));
  REQUIRE(rd.has_value());
  CHECK(rd->x() == doctest::Approx(-1.0));
  CHECK(rd->y() == doctest::Approx(2.0));

  // residual bound whenever the prediction exists
  std::mt19937_64 rng(15);
  int present = 0;
  for (int i = 0; i < 500; ++i) {
    const Matrix2d g = random_sl2(rng);
    const Vector2d v = random_vec2(rng);
    const auto p = fixed_point_predict(g, v);
    // det(I - g) = 2 - tr(g) for det 1, so the branch matches the trace band
    const double band = std::abs(2.0 - g.trace());
    CHECK(p.has_value() == (band > kSingularTol));
    if (p) {
      ++present;
      const Vector2d back = (Matrix2d::Identity() - g) * (*p);
      CHECK((back - v).norm() <= 1e-9 * (1.0 + v.norm()));
    }
  }
  CHECK(present > 450);
}

TEST_CASE("unipotency via the trace") {
  CHECK(is_unipotent(unipotent_upper(7.0)));
  CHECK(is_unipotent(Matrix2d::Identity()));
  CHECK(!is_unipotent((Matrix2d() << 2, 0, 0, 0.5).finished()));
  // trace 2 cos(0.3) ~ 1.955 misses the band
  CHECK(!is_unipotent(rotation(0.3)));
  CHECK(!is_unipotent(Matrix2d(-unipotent_upper(1.0))));  // trace -2
}

TEST_CASE("metric properties") {
  const GroupElementd id = GroupElementd::Identity();
  std::mt19937_64 rng(16);

  const auto x = random_element(rng);
  CHECK(dist(x, x) == 0.0);

  CHECK(dist(elem(1, 0, 0, 1, 1, 0), id) == doctest::Approx(1.0));

  // sqrt(0.01 + (1/0.9 - 1)^2), matrix parts only differ
  const auto a = elem(0.9, 0, 0, 1.0 / 0.9, 1, 0);
  const auto b = elem(1, 0, 0, 1, 1, 0);
  CHECK(dist(a, b) == doctest::Approx(std::sqrt(0.01 + std::pow(1.0 / 0.9 - 1.0, 2))).epsilon(1e-12));

  for (int i = 0; i < 1000; ++i) {
    const auto p = random_element(rng);
    const auto q = random_element(rng);
    const auto r = random_element(rng);
    CHECK(dist(p, q) == dist(q, p));
    CHECK(dist(p, r) <= dist(p, q) + dist(q, r) + 1e-12);
  }
}

TEST_CASE("associativity under renormalization") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_element(rng);
    const auto y = random_element(rng);
    const auto z = random_element(rng);
    CHECK(dist(mul(mul(x, y), z), mul(x, mul(y, z))) <= 1e-10 * (1 + norm(x) + norm(y) + norm(z)));
  }
}

TEST_CASE("fixed point prediction drives convergence of conjugated translations") {
  std::mt19937_64 rng(18);
  int done = 0;
  while (done < 60) {
    const Matrix2d g = random_sl2(rng, 3.0);
    if (is_unipotent(g, 1e-3)) continue;
    const Vector2d target = random_vec2(rng, 3.0);
    const auto vstar = fixed_point_predict(g, target);
    if (!vstar) continue;
    ++done;
    const double gap = (Matrix2d::Identity() - g).norm();
    for (double delta : {1.0, 0.1, 0.01, 1e-4}) {
      const Vector2d vn = *vstar + delta * Vector2d(1, -1).normalized();
      const auto c = conj_translation(vn, g);
      CHECK((c.translation - target).norm() <= gap * delta + 1e-9);
    }
  }
}

TEST_CASE("iwasawa coordinates round trip") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 300; ++i) {
    const Matrix2d g = random_sl2(rng, 5.0);
    const auto c = iwasawa_decompose(g);
    CHECK((iwasawa_compose(c) - g).norm() <= 1e-9 * (1 + g.norm()));
  }
  // the composition reaches -I at theta = pi
  const auto mi = iwasawa_compose<double>({0.0, 0.0, 3.14159265358979323846});
  CHECK((mi + Matrix2d::Identity()).norm() <= 1e-12);
}

TEST_CASE("lie exponential matches one-parameter curves") {
  // exp of the diagonal generator
  LieAlgebraElementd diag;
  diag.m << 1, 0, 0, -1;
  const auto e = exp_lie(diag);
  CHECK((e.matrix - diagonal_log(1.0)).norm() <= 1e-12);

  // exp of a rotation generator stays in SO(2)
  LieAlgebraElementd so2;
  so2.m << 0, 1, -1, 0;
  const auto r = exp_lie(so2);
  CHECK((r.matrix - rotation(1.0)).norm() <= 1e-12);

  // translation part integrates the matrix flow
  LieAlgebraElementd mix;
  mix.m << 0, 1, 0, 0;
  mix.w << 0.5, 2.0;
  const auto x = exp_lie(mix);
  CHECK(x.matrix(0, 1) == doctest::Approx(1.0));
  // V(m) w = w + m w / 2 for nilpotent m
  CHECK(x.translation.x() == doctest::Approx(0.5 + 2.0 / 2.0));
  CHECK(x.translation.y() == doctest::Approx(2.0));

  // numerically: exp((t+s)X) = exp(tX) exp(sX)
  std::mt19937_64 rng(20);
  for (int i = 0; i < 50; ++i) {
    LieAlgebraElementd v;
    v.m << 0.3, 1.1, -0.7, -0.3;
    v.w = random_vec2(rng, 2.0);
    const double t = 0.37, s = -0.81;
    auto scale = [&](double f) {
      LieAlgebraElementd out = v;
      out.m *= f;
      out.w *= f;
      return out;
    };
    CHECK(dist(mul(exp_lie(scale(t)), exp_lie(scale(s))), exp_lie(scale(t + s))) <= 1e-9);
  }
}
