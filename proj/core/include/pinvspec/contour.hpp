#pragma once

#include <complex>
#include <vector>

#include "pinvspec/spectra.hpp"

namespace pinvspec {

// Rectangular integration contour with vertical sides at a < 0 and b > 0 and
// horizontal sides at +-y0, traversed positively oriented (counterclockwise).
// nodes_per_side is the quadrature node count on each horizontal side;
// vertical sides get a proportional share.
struct RectContour {
  double a = -0.5;
  double b = 6.5;
  double y0 = 0.2;
  int nodes_per_side = 2048;

  void validate() const;
  RectContour with_nodes(int n) const {
    RectContour c = *this;
    c.nodes_per_side = n;
    return c;
  }
};

struct ContourNode {
  std::complex<double> z;       // evaluation point
  std::complex<double> weight;  // quadrature weight, includes dz direction
};

// Composite Gauss-Legendre panels along each straight side. Integrands that
// are analytic near the sides are resolved to near machine precision.
std::vector<ContourNode> contour_nodes(const RectContour& contour);

// Contour around the support of the limit law (which includes the atom at 0):
// a = -margin * upper, b = (1 + margin) * upper, upper = a.c. support end.
RectContour build_contour(const SpectralLimit& limit, double margin = 0.1, double y0 = 0.2,
                          int nodes_per_side = 2048);

// Strictly nested inner contour for double integrals: margins and y0 halved.
RectContour nested_inner(const RectContour& outer, const SpectralLimit& limit, double margin = 0.1);

// true if inner lies strictly inside outer
bool strictly_inside(const RectContour& inner, const RectContour& outer);

// Quadrature of f along the contour; f: complex -> complex.
template <class F>
std::complex<double> contour_integrate(const RectContour& contour, F&& f) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& node : contour_nodes(contour)) acc += node.weight * f(node.z);
  return acc;
}

}  // namespace pinvspec
