#include <doctest.h>

#include <cmath>
#include <random>

#include "chabauty/descriptor.hpp"
#include "chabauty/sampling.hpp"
#include "chabauty/distance.hpp"
#include "test_helpers.hpp"

using namespace chabauty;
using chabauty::testing::random_element;

namespace {

const Family kAllFamilies[] = {
    Family::Levi,           Family::MaximalCompact,    Family::Diagonal,
    Family::Borel,          Family::BorelFull,         Family::UnipotentUpper,
    Family::UnipotentC,     Family::TildeNPlus,        Family::LineV,
    Family::HeisenbergLine, Family::NPlusSemidirectR2, Family::R2Full,
    Family::NPlusTimesXAxis};

SubgroupDescriptor make_default(Family f) {
  switch (f) {
    case Family::UnipotentC: return SubgroupDescriptor::unipotent_c(1.5);
    case Family::LineV: return SubgroupDescriptor::line_v(0.7);
    case Family::HeisenbergLine: return SubgroupDescriptor::heisenberg_line(1.0, 2.0, 3.0);
    default: return SubgroupDescriptor::make(f);
  }
}

std::vector<double> zero_params(const SubgroupDescriptor& d) {
  return std::vector<double>(dimension(d), 0.0);
}

}  // namespace

TEST_CASE("parametrization at explicit points") {
  // one-parameter Heisenberg line through (a, b, c) = (1, 2, 3) at t = 1:
  // x = c t + a b t^2 / 2 = 4, y = b t = 2
  const auto h = SubgroupDescriptor::heisenberg_line(1, 2, 3);
  const auto e = parametrize1(h, 1.0);
  CHECK(e.matrix(0, 1) == doctest::Approx(1.0));
  CHECK(e.translation.x() == doctest::Approx(4.0));
  CHECK(e.translation.y() == doctest::Approx(2.0));

  const auto v0 = parametrize1(SubgroupDescriptor::line_v(0.0), 5.0);
  CHECK((v0.matrix - Matrix2d::Identity()).norm() == 0.0);
  CHECK(v0.translation.x() == doctest::Approx(5.0));
  CHECK(v0.translation.y() == doctest::Approx(0.0));

  const auto nc = parametrize1(SubgroupDescriptor::unipotent_c(2.0), 3.0);
  CHECK(nc.matrix(0, 1) == doctest::Approx(3.0));
  CHECK(nc.translation.x() == doctest::Approx(6.0));
  CHECK(nc.translation.y() == doctest::Approx(0.0));

  CHECK_THROWS(parametrize(make_default(Family::Levi), std::vector<double>{1.0}));
}

TEST_CASE("dimension table matches basis rank") {
  auto expected = [](Family f) {
    switch (f) {
      case Family::Levi: return 3;
      case Family::MaximalCompact: return 1;
      case Family::Diagonal: return 1;
      case Family::Borel: return 2;
      case Family::BorelFull: return 4;
      case Family::UnipotentUpper: return 1;
      case Family::UnipotentC: return 1;
      case Family::TildeNPlus: return 1;
      case Family::LineV: return 1;
      case Family::HeisenbergLine: return 1;
      case Family::NPlusSemidirectR2: return 3;
      case Family::R2Full: return 2;
      case Family::NPlusTimesXAxis: return 2;
    }
    return -1;
  };
  std::mt19937_64 rng(31);
  for (Family f : kAllFamilies) {
    auto d = make_default(f);
    CHECK(dimension(d) == expected(f));

    for (int round = 0; round < 2; ++round) {
      const auto basis = lie_algebra_basis(d);
      REQUIRE(static_cast<int>(basis.size()) == dimension(d));
      // rank check: flatten into a 6 x k matrix
      Eigen::MatrixXd flat(6, basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i) {
        flat.col(i) << basis[i].m(0, 0), basis[i].m(0, 1), basis[i].m(1, 0), basis[i].m(1, 1),
            basis[i].w.x(), basis[i].w.y();
        CHECK(std::abs(basis[i].m.trace()) <= 1e-12);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(flat);
      CHECK(svd.rank() == dimension(d));
      // conjugation preserves the rank and tracelessness
      d = conjugate_descriptor(random_element(rng, 2.0), d);
    }
  }
}

TEST_CASE("basis elements are derivatives of the parametrization") {
  // differentiating the Heisenberg line at t = 0 gives ([[0,a],[0,0]], (c, b))
  const auto h = SubgroupDescriptor::heisenberg_line(1.0, 0.0, 2.5);
  const auto basis = lie_algebra_basis(h);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0].m(0, 1) == doctest::Approx(1.0));
  CHECK(basis[0].w.x() == doctest::Approx(2.5));
  CHECK(basis[0].w.y() == doctest::Approx(0.0));

  const auto a = lie_algebra_basis(make_default(Family::Diagonal));
  REQUIRE(a.size() == 1);
  CHECK(a[0].m(0, 0) == doctest::Approx(1.0));
  CHECK(a[0].m(1, 1) == doctest::Approx(-1.0));

  // finite-difference cross-check on every one-dimensional family
  for (Family f : kAllFamilies) {
    auto d = make_default(f);
    if (dimension(d) != 1) continue;
    const double h2 = 1e-6;
    const auto ep = parametrize1(d, h2);
    const auto em = parametrize1(d, -h2);
    const Matrix2d dm = (ep.matrix - em.matrix) / (2 * h2);
    const Vector2d dw = (ep.translation - em.translation) / (2 * h2);
    const auto b = lie_algebra_basis(d);
    CHECK((dm - b[0].m).norm() <= 1e-6);
    CHECK((dw - b[0].w).norm() <= 1e-6);
  }
}

TEST_CASE("one parameter law") {
  const auto heis = SubgroupDescriptor::heisenberg_line(1, 2, 3);
  CHECK(one_param_check(heis, 1.0, -1.0) <= 1e-10);

  const auto line = SubgroupDescriptor::line_v(2.0);
  CHECK(one_param_check(line, 0.3, 1.9) == 0.0);

  CHECK(one_param_check(make_default(Family::Diagonal), 0.3, 0.4) <= 1e-10);

  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (Family f : kAllFamilies) {
    auto d = make_default(f);
    if (dimension(d) != 1) continue;
    for (int i = 0; i < 100; ++i) {
      CHECK(one_param_check(d, u(rng), u(rng)) <= 1e-10);
    }
    // conjugation preserves the law
    d = conjugate_descriptor(random_element(rng, 2.0), d);
    for (int i = 0; i < 20; ++i) {
      CHECK(one_param_check(d, u(rng), u(rng)) <= 1e-8);
    }
  }
}

TEST_CASE("multi dimensional families are closed under products") {
  std::mt19937_64 rng(33);
  const Window w{3.0, 0.05};
  for (Family f : kAllFamilies) {
    const auto d = make_default(f);
    if (dimension(d) == 1) continue;
    const auto pts = sample(d, w);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    for (int i = 0; i < 40; ++i) {
      const auto prod = mul(pts[pick(rng)], pts[pick(rng)]);
      CHECK(distance_to(d, prod) <= 1e-7 * (1.0 + norm(prod)));
    }
  }
}

TEST_CASE("descriptor conjugation") {
  std::mt19937_64 rng(34);
  const auto d = make_default(Family::UnipotentUpper);

  // identity conjugator leaves the parametrization unchanged
  const auto same = conjugate_descriptor(GroupElementd::Identity(), d);
  CHECK(dist(parametrize1(same, 1.3), parametrize1(d, 1.3)) == 0.0);

  // vertical translation shears the translation part: (u(s), (-s beta, 0))
  GroupElementd h;
  h.translation << 0, 4.0;
  const auto moved = conjugate_descriptor(h, d);
  const auto e = parametrize1(moved, 1.5);
  CHECK(e.matrix(0, 1) == doctest::Approx(1.5));
  CHECK(e.translation.x() == doctest::Approx(-1.5 * 4.0));
  CHECK(e.translation.y() == doctest::Approx(0.0).epsilon(1e-12));

  // double conjugation composes
  for (int i = 0; i < 20; ++i) {
    const auto h1 = random_element(rng, 2.0);
    const auto h2 = random_element(rng, 2.0);
    const auto c2 = conjugate_descriptor(h2, conjugate_descriptor(h1, d));
    const auto cc = conjugate_descriptor(mul(h2, h1), d);
    for (double t : {-1.0, 0.4, 2.2}) {
      CHECK(dist(parametrize1(c2, t), parametrize1(cc, t)) <= 1e-9);
    }
  }
}

TEST_CASE("window sampling on lines") {
  // a line sampled at mesh 0.1 within radius 2 gives the 41 grid points
  const auto d = SubgroupDescriptor::line_v(0.0);
  const auto pts = sample(d, Window{2.0, 0.1});
  CHECK(pts.size() == 41);
  double max_x = 0.0;
  for (const auto& p : pts) {
    CHECK((p.matrix - Matrix2d::Identity()).norm() == 0.0);
    CHECK(std::abs(p.translation.y()) <= 1e-12);
    max_x = std::max(max_x, std::abs(p.translation.x()));
  }
  CHECK(max_x == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("sampling includes the second sheet when it fits") {
  const auto d = SubgroupDescriptor::make(Family::TildeNPlus);
  const auto pts = sample(d, Window{3.0, 0.05});
  bool has_minus = false;
  for (const auto& p : pts) {
    if ((p.matrix + Matrix2d::Identity()).norm() <= 1e-9 && p.translation.norm() <= 1e-9) {
      has_minus = true;
    }
  }
  CHECK(has_minus);

  // radius below 2 sqrt(2) excludes the sheet entirely
  const auto small = sample(d, Window{2.0, 0.05});
  for (const auto& p : small) CHECK(p.matrix.trace() > 0.0);
}

TEST_CASE("samples are members of their family") {
  std::mt19937_64 rng(35);
  const Window w{3.0, 0.05};
  for (Family f : kAllFamilies) {
    auto d = make_default(f);
    auto pts = sample(d, w);
    CHECK(!pts.empty());
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    for (int i = 0; i < 25; ++i) {
      const auto& p = pts[pick(rng)];
      CHECK(norm(p) <= w.radius + 1e-6);
      CHECK(distance_to(d, p) <= 1e-8 * (1.0 + norm(p)));
    }
  }
}
