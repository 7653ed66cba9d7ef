#include "pinvspec/contour.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace pinvspec {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1]
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

// append GL panel nodes for the straight segment z0 -> z1
void append_segment(std::vector<ContourNode>& out, std::complex<double> z0,
                    std::complex<double> z1, int node_count) {
  const int panels = std::max(1, (node_count + 15) / 16);
  const std::complex<double> dir = (z1 - z0) / static_cast<double>(panels);
  for (int p = 0; p < panels; ++p) {
    const std::complex<double> mid = z0 + dir * (static_cast<double>(p) + 0.5);
    const std::complex<double> half = dir * 0.5;
    for (int k = 0; k < 8; ++k) {
      out.push_back({mid - half * kGlNodes[k], half * kGlWeights[k]});
      out.push_back({mid + half * kGlNodes[k], half * kGlWeights[k]});
    }
  }
}

}  // namespace

void RectContour::validate() const {
  if (!(a < 0.0) || !(b > 0.0)) throw std::invalid_argument("RectContour: need a < 0 < b");
  if (!(y0 > 0.0)) throw std::invalid_argument("RectContour: need y0 > 0");
  if (nodes_per_side < 1) throw std::invalid_argument("RectContour: need nodes_per_side >= 1");
}

std::vector<ContourNode> contour_nodes(const RectContour& contour) {
  contour.validate();
  const double a = contour.a, b = contour.b, y0 = contour.y0;
  const int nh = contour.nodes_per_side;
  // vertical sides proportional to their length, rounded to whole panels
  const int nv = std::max(16, static_cast<int>(std::lround(nh * (2.0 * y0) / (b - a))));

  std::vector<ContourNode> nodes;
  nodes.reserve(static_cast<std::size_t>(2 * nh + 2 * nv) + 64);
  using C = std::complex<double>;
  append_segment(nodes, C(a, -y0), C(b, -y0), nh);  // bottom, left to right
  append_segment(nodes, C(b, -y0), C(b, y0), nv);   // right, upward
  append_segment(nodes, C(b, y0), C(a, y0), nh);    // top, right to left
  append_segment(nodes, C(a, y0), C(a, -y0), nv);   // left, downward
  return nodes;
}

RectContour build_contour(const SpectralLimit& limit, double margin, double y0,
                          int nodes_per_side) {
  if (!(margin > 0.0)) throw std::invalid_argument("build_contour: margin must be > 0");
  if (!(y0 > 0.0)) throw std::invalid_argument("build_contour: y0 must be > 0");
  const double upper = limit.support_hi;
  if (!(upper > 0.0)) throw std::invalid_argument("build_contour: empty support");
  RectContour c;
  c.a = -margin * upper;
  c.b = (1.0 + margin) * upper;
  c.y0 = y0;
  c.nodes_per_side = nodes_per_side;
  c.validate();
  return c;
}

RectContour nested_inner(const RectContour& outer, const SpectralLimit& limit, double margin) {
  RectContour inner = build_contour(limit, margin * 0.5, outer.y0 * 0.5, outer.nodes_per_side);
  if (!strictly_inside(inner, outer))
    throw std::invalid_argument("nested_inner: inner contour not strictly inside outer");
  return inner;
}

bool strictly_inside(const RectContour& inner, const RectContour& outer) {
  return inner.a > outer.a && inner.b < outer.b && inner.y0 < outer.y0;
}

}  // namespace pinvspec
