#pragma once

#include <random>

#include "chabauty/group.hpp"

namespace chabauty::testing {

// Random SL(2,R) matrix with entries of the given magnitude; rejects
// near-singular draws and rescales onto det = 1.
inline Matrix2d random_sl2(std::mt19937_64& rng, double magnitude = 10.0) {
  std::uniform_real_distribution<double> u(-magnitude, magnitude);
  while (true) {
    Matrix2d m;
    m << u(rng), u(rng), u(rng), u(rng);
    const double det = m.determinant();
    if (det > 0.05) return Matrix2d(m / std::sqrt(det));
  }
}

inline Vector2d random_vec2(std::mt19937_64& rng, double magnitude = 10.0) {
  std::uniform_real_distribution<double> u(-magnitude, magnitude);
  return Vector2d(u(rng), u(rng));
}

inline GroupElementd random_element(std::mt19937_64& rng, double magnitude = 10.0) {
  return GroupElementd{random_sl2(rng, magnitude), random_vec2(rng, magnitude)};
}

}  // namespace chabauty::testing
