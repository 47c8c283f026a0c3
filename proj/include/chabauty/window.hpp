#pragma once

#include <stdexcept>

namespace chabauty {

// Compact ball around the identity on which subgroups are compared.
// radius bounds dist(x, id); mesh is the requested cover fineness.
struct Window {
  double radius = 3.0;
  double mesh = 0.05;

  void validate() const {
    if (!(radius > 0)) throw std::invalid_argument("Window: radius must be positive");
    if (!(mesh > 0) || mesh > radius / 4.0) {
      throw std::invalid_argument("Window: mesh must satisfy 0 < mesh <= radius/4");
    }
  }
};

}  // namespace chabauty
