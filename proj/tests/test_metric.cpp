#include <doctest.h>

#include <random>

#include "chabauty/metric.hpp"
#include "chabauty/sampling.hpp"
#include "test_helpers.hpp"

using namespace chabauty;
using chabauty::testing::random_element;

TEST_CASE("directed distance basics") {
  const Window w{2.0, 0.05};
  const auto line0 = SubgroupDescriptor::line_v(0.0);
  const auto line_inf = SubgroupDescriptor::line_v_infinity();

  // points of the target itself
  const auto pts = sample(line0, w);
  CHECK(directed_hausdorff(pts, line0) <= 1e-7);

  // horizontal line against the vertical one: extremal point (I, (2, 0))
  CHECK(directed_hausdorff_detailed(pts, line_inf, w).value == doctest::Approx(2.0).epsilon(1e-4));

  // the identity alone is in every family
  std::vector<GroupElementd> singleton{GroupElementd::Identity()};
  for (Family f : {Family::Levi, Family::Borel, Family::TildeNPlus, Family::R2Full}) {
    CHECK(directed_hausdorff(singleton, SubgroupDescriptor::make(f)) <= 1e-9);
  }
}

TEST_CASE("symmetric windowed distance") {
  const Window w{2.0, 0.05};
  const auto est = chabauty_distance(SubgroupDescriptor::line_v(0.0),
                                     SubgroupDescriptor::line_v_infinity(), w);
  CHECK(est.value == doctest::Approx(2.0).epsilon(w.mesh));
  CHECK(est.value == doctest::Approx(std::max(est.forward, est.backward)));

  // two names for the same subgroup
  const Window w3{3.0, 0.05};
  const auto same = chabauty_distance(SubgroupDescriptor::unipotent_c(0.0),
                                      SubgroupDescriptor::heisenberg_line(1.0, 0.0, 0.0), w3);
  CHECK(same.value <= w3.mesh);
}

TEST_CASE("self distance stays within the mesh for conjugated families") {
  std::mt19937_64 rng(51);
  const Window w{3.0, 0.05};
  const Family fams[] = {Family::MaximalCompact, Family::Diagonal, Family::UnipotentUpper,
                         Family::LineV,          Family::Borel,    Family::NPlusSemidirectR2,
                         Family::TildeNPlus};
  for (Family f : fams) {
    SubgroupDescriptor base =
        f == Family::LineV ? SubgroupDescriptor::line_v(1.0) : SubgroupDescriptor::make(f);
    for (int i = 0; i < 2; ++i) {
      const auto h = random_element(rng, 1.0);
      const auto d = conjugate_descriptor(h, base);
      const auto est = chabauty_distance(d, d, w);
      CHECK(est.value <= w.mesh);
    }
  }
}

TEST_CASE("window monotonicity") {
  std::mt19937_64 rng(52);
  const Window small{2.0, 0.05};
  const Window big{3.0, 0.05};
  const SubgroupDescriptor pool[] = {
      SubgroupDescriptor::line_v(0.0),
      SubgroupDescriptor::line_v(2.0),
      SubgroupDescriptor::line_v_infinity(),
      SubgroupDescriptor::unipotent_c(1.0),
      SubgroupDescriptor::make(Family::Diagonal),
      SubgroupDescriptor::make(Family::MaximalCompact),
      SubgroupDescriptor::make(Family::UnipotentUpper),
      SubgroupDescriptor::heisenberg_line(1.0, 1.0, 0.0),
  };
  std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
  for (int i = 0; i < 20; ++i) {
    auto a = pool[pick(rng)];
    auto b = pool[pick(rng)];
    const double ds = chabauty_distance(a, b, small).value;
    const double db = chabauty_distance(a, b, big).value;
    CHECK(db >= ds - 2 * small.mesh);
  }
}

TEST_CASE("bounded conjugation moves windowed distances controllably") {
  std::mt19937_64 rng(53);
  const Window w{2.0, 0.05};
  for (int i = 0; i < 4; ++i) {
    const auto h = random_element(rng, 0.8);
    const auto a = SubgroupDescriptor::line_v(0.5);
    const auto b = SubgroupDescriptor::make(Family::UnipotentUpper);

    // Lipschitz bound of x -> h x h^-1 over window samples
    double lip = 1.0;
    const auto pts = sample(a, w);
    for (std::size_t j = 1; j < pts.size(); ++j) {
      const double num = dist(conj(h, pts[j]), conj(h, pts[j - 1]));
      const double den = dist(pts[j], pts[j - 1]);
      if (den > 1e-9) lip = std::max(lip, num / den);
    }

    const double d0 = chabauty_distance(a, b, w).value;
    Window wbig{w.radius * lip, w.mesh};
    const auto ca = conjugate_descriptor(h, a);
    const auto cb = conjugate_descriptor(h, b);
    const double d1 = chabauty_distance(ca, cb, wbig).value;

    // every window point maps into the enlarged window, so the conjugated
    // distance cannot collapse below d0 / lip (up to sampling error)
    CHECK(d1 >= d0 / lip - 2 * lip * w.mesh);

    // and it cannot exceed lip times the distance over a further-enlarged window
    Window whuge{w.radius * lip * lip, w.mesh};
    const double d2 = chabauty_distance(a, b, whuge).value;
    CHECK(d1 <= lip * d2 + 2 * lip * w.mesh);
  }
}
