#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "chabauty/distance.hpp"
#include "chabauty/sampling.hpp"
#include "test_helpers.hpp"

using namespace chabauty;
using chabauty::testing::random_element;

namespace {

// Independent check: scan the family chart on a dense grid and refine the
// best cell by trisection. Deliberately avoids the production search.
double grid_scan_oracle(const SubgroupDescriptor& d, const GroupElementd& x, double lo, double hi,
                        int n = 2001) {
  auto f = [&](double t) { return dist(parametrize1(d, t), x); };
  double best_t = lo, best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * i / (n - 1);
    const double v = f(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  double a = best_t - (hi - lo) / (n - 1), b = best_t + (hi - lo) / (n - 1);
  for (int i = 0; i < 200; ++i) {
    const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
    if (f(m1) < f(m2)) {
      b = m2;
    } else {
      a = m1;
    }
  }
  return f(0.5 * (a + b));
}

}  // namespace

TEST_CASE("distance to the vertical line") {
  const auto v_inf = SubgroupDescriptor::line_v_infinity();
  GroupElementd x;
  x.translation << 2, 0;
  // min over s of sqrt(4 + s^2) = 2
  CHECK(distance_to(v_inf, x) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("distance to the Heisenberg group matches a grid scan") {
  const auto d = SubgroupDescriptor::make(Family::NPlusSemidirectR2);
  GroupElementd x;
  x.matrix = rotation(0.5);
  const double got = distance_to(d, x);
  // oracle: 1-d scan over the shear parameter (translations are free)
  auto line = SubgroupDescriptor::make(Family::UnipotentUpper);
  GroupElementd matrix_only = x;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 4000; ++i) {
    const double s = -4.0 + 8.0 * i / 4000.0;
    best = std::min(best, (matrix_only.matrix - unipotent_upper(s)).norm());
  }
  CHECK(got == doctest::Approx(best).epsilon(1e-6));
  // closed form for comparison: s = sin(theta)
  const double c = std::cos(0.5), s = std::sin(0.5);
  CHECK(got == doctest::Approx(std::sqrt(2 * (c - 1) * (c - 1) + s * s)).epsilon(1e-9));
  (void)line;
}

TEST_CASE("family members are at distance zero") {
  std::mt19937_64 rng(41);
  const Family families[] = {Family::Levi,           Family::MaximalCompact,
                             Family::Diagonal,       Family::Borel,
                             Family::BorelFull,      Family::UnipotentUpper,
                             Family::TildeNPlus,     Family::LineV,
                             Family::HeisenbergLine, Family::NPlusSemidirectR2,
                             Family::R2Full,         Family::NPlusTimesXAxis};
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (Family f : families) {
    SubgroupDescriptor d;
    switch (f) {
      case Family::LineV: d = SubgroupDescriptor::line_v(-1.2); break;
      case Family::HeisenbergLine: d = SubgroupDescriptor::heisenberg_line(0.5, 1.0, -2.0); break;
      default: d = SubgroupDescriptor::make(f);
    }
    for (int i = 0; i < 10; ++i) {
      std::vector<double> p(dimension(d));
      for (auto& v : p) v = u(rng);
      const auto e = parametrize(d, p);
      CHECK(distance_to(d, e) <= 1e-8 * (1.0 + norm(e)));
    }
    // and with a conjugator
    const auto dc = conjugate_descriptor(random_element(rng, 2.0), d);
    for (int i = 0; i < 10; ++i) {
      std::vector<double> p(dimension(dc));
      for (auto& v : p) v = u(rng);
      const auto e = parametrize(dc, p);
      CHECK(distance_to(dc, e) <= 1e-7 * (1.0 + norm(e)));
    }
  }
}

TEST_CASE("distance to conjugated lines against the scan oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 12; ++trial) {
    const auto base = trial % 2 == 0 ? SubgroupDescriptor::unipotent_c(1.0)
                                     : SubgroupDescriptor::heisenberg_line(1.0, -0.5, 0.3);
    const auto d = conjugate_descriptor(random_element(rng, 1.5), base);
    const auto x = random_element(rng, 1.5);
    const double got = distance_to(d, x);
    const double want = grid_scan_oracle(d, x, -8.0, 8.0, 4001);
    CHECK(got <= want + 1e-7);
    CHECK(got >= want - 0.02 * (1 + want));  // scan may miss narrow valleys
  }
}

TEST_CASE("distance to a heavily conjugated Levi family") {
  // the family {(G, (I-G) w)}: distances stay resolvable as |w| grows
  for (double alpha : {10.0, 100.0, 1000.0}) {
    GroupElementd h;
    h.translation << alpha, 0;
    const auto d = conjugate_descriptor(h, SubgroupDescriptor::make(Family::Levi));

    // the shear (u(s), (x, y)) is approachable to O(1/alpha)
    GroupElementd target;
    target.matrix = unipotent_upper(0.8);
    target.translation << 1.0, -2.0;
    const double got = distance_to(d, target);
    CHECK(got <= 12.0 / alpha);

    // members at distance zero
    GroupElementd member = conj(h, GroupElementd{rotation(0.4), Vector2d::Zero()});
    CHECK(distance_to(d, member) <= 1e-7 * (1 + norm(member)));
  }
}

TEST_CASE("certification residuals are reported") {
  const auto d = SubgroupDescriptor::make(Family::MaximalCompact);
  GroupElementd x;
  x.matrix = rotation(1.1);
  const auto r = distance_to_detailed(d, x);
  CHECK(r.value <= 1e-9);
  CHECK(r.certified);
}
