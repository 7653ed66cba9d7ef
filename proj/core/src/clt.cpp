#include "pinvspec/clt.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace pinvspec {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

struct NodeData {
  Complex z;
  Complex weight;
  Complex m;       // companion transform at 1/z
  Complex mprime;  // its derivative at 1/z
  Complex j2, j3;  // int tau^2 m^k/(1+tau m)^k dH for k = 2, 3
  Complex denom;   // 1 - c j2
};

std::vector<NodeData> companion_node_data(const RectContour& contour, double c,
                                          const PopulationSpectrum& H) {
  const auto nodes = contour_nodes(contour);
  std::vector<NodeData> out;
  out.reserve(nodes.size());
  SolveOptions opts;
  for (const auto& node : nodes) {
    NodeData d;
    d.z = node.z;
    d.weight = node.weight;
    const Complex w = 1.0 / node.z;
    d.m = companion_any(w, c, H, opts);
    opts.initial_guess = d.m;  // warm start the neighboring node
    d.j2 = H.integrate([&](double tau) {
      const Complex r = tau * d.m / (1.0 + d.m * tau);
      return r * r;
    });
    d.j3 = H.integrate([&](double tau) {
      const Complex r = tau * d.m / (1.0 + d.m * tau);
      return r * r * r / tau;
    });
    d.denom = 1.0 - c * d.j2;
    if (std::abs(d.denom) < 1e-12)
      throw SolverError("companion_node_data: spectral-edge denominator on contour");
    d.mprime = d.m * d.m / d.denom;
    out.push_back(d);
  }
  return out;
}

struct Assembled {
  double value = 0.0;
  double imag = 0.0;
};

// run the assembly at N and 2N nodes per side; fail when doubling moves the
// value by more than the gate tolerance
template <class F>
double gated(const RectContour& contour, const CltOptions& opts, QuadratureReport* report,
             const char* what, F&& assemble) {
  const Assembled coarse = assemble(contour);
  const Assembled fine = assemble(contour.with_nodes(contour.nodes_per_side * 2));
  const double err = std::abs(fine.value - coarse.value);
  if (err > opts.node_doubling_tol)
    throw QuadratureError(std::string(what) + ": node doubling moved the value by " +
                          std::to_string(err));
  if (fine.imag > opts.imag_residue_tol)
    throw QuadratureError(std::string(what) + ": imaginary residue " + std::to_string(fine.imag));
  if (report) {
    report->nodes = contour.nodes_per_side * 2;
    report->estimated_error = err;
    report->imag_residue = fine.imag;
  }
  return fine.value;
}

double h_scale(DiagAverage avg, double ratio) {
  return avg == DiagAverage::dimension_scaled ? ratio : 1.0;
}

}  // namespace

HPair h_functions(const PopulationSpectrum& H, int p, int n, Complex m1, Complex m2,
                  DiagAverage avg) {
  if (p < 1 || n < 1) throw std::invalid_argument("h_functions: need p, n >= 1");
  const double scale = h_scale(avg, static_cast<double>(p) / n);
  HPair h;
  h.h1 = scale * H.integrate([&](double tau) {
    return Complex(tau * tau) / ((1.0 + m1 * tau) * (1.0 + m2 * tau));
  });
  h.h2 = scale * H.integrate([&](double tau) {
    const Complex d = 1.0 + m1 * tau;
    return Complex(tau * tau) / (d * d * d);
  });
  return h;
}

double mean_non_centered(const TestFunction& g, double c, const PopulationSpectrum& H,
                         double kurt_excess, const RectContour& contour, const CltOptions& opts,
                         QuadratureReport* report) {
  const double scale = h_scale(opts.diag_average, c);
  return gated(contour, opts, report, "mean_non_centered", [&](const RectContour& ct) {
    Complex acc{0.0, 0.0};
    for (const auto& d : companion_node_data(ct, c, H)) {
      const Complex base = c * d.j3 / (d.denom * d.denom);
      // j3 = m^3 * int tau^2/(1+tau m)^3 dH, so the fourth-moment kernel
      // c m^3 h2 / denom reuses it up to the average normalization
      const Complex fourth = kurt_excess * scale * c * d.j3 / d.denom;
      acc += d.weight * g(d.z) / (d.z * d.z) * (base + fourth);
    }
    const Complex value = acc / kTwoPiI;
    return Assembled{value.real(), std::abs(value.imag())};
  });
}

double extra_mean_contour(const TestFunction& g, double c, const PopulationSpectrum& H,
                          const RectContour& contour, const CltOptions& opts,
                          QuadratureReport* report) {
  return gated(contour, opts, report, "extra_mean_contour", [&](const RectContour& ct) {
    Complex acc{0.0, 0.0};
    for (const auto& d : companion_node_data(ct, c, H))
      acc += d.weight * g(d.z) / (d.z * d.z) * (d.mprime / d.m);
    const Complex value = -acc / kTwoPiI;
    return Assembled{value.real(), std::abs(value.imag())};
  });
}

namespace {

// adaptive Simpson with explicit recursion depth bound
template <class F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) < 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 30);
}

}  // namespace

double extra_mean_realline(const TestFunction& g, double c, const PopulationSpectrum& H,
                           double a, double b, double eps) {
  if (!(a < 0.0) || !(b > 0.0))
    throw std::invalid_argument("extra_mean_realline: interval must contain the support, a < 0 < b");
  const TestFunction gp = g.derivative();
  if (gp.is_zero()) return 0.0;

  const auto integrand = [&](double x) {
    if (x == 0.0) return 0.0;  // isolated point, both one-sided limits finite
    const Complex m = companion_any(Complex(1.0 / x, eps), c, H);
    return gp(x) * std::arg(m);
  };

  // split at 0 where the boundary argument jumps between its plateaus
  const double delta = 1e-12;
  std::vector<double> cuts{a, -delta, delta, b};
  if (H.atoms().size() == 1) {
    const double s2 = H.atoms().front().tau;
    const double lo = isotropic_support_lo(c, s2), hi = isotropic_support_hi(c, s2);
    if (lo > delta && lo < b) cuts.insert(cuts.end() - 1, lo);
    if (hi > delta && hi < b) cuts.insert(cuts.end() - 1, hi);
  }
  double acc = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (cuts[i] > cuts[i - 1]) acc += integrate_adaptive(integrand, cuts[i - 1], cuts[i], 1e-9);
  return -acc / kPi;
}

double mean_centered(const TestFunction& g, double c, const PopulationSpectrum& H,
                     double kurt_excess, const RectContour& contour, const CltOptions& opts,
                     QuadratureReport* report) {
  QuadratureReport mean_rep, extra_rep;
  const double base = mean_non_centered(g, c, H, kurt_excess, contour, opts, &mean_rep);
  const double extra = extra_mean_contour(g, c, H, contour, opts, &extra_rep);
  if (report) {
    report->nodes = mean_rep.nodes;
    report->estimated_error = mean_rep.estimated_error + extra_rep.estimated_error;
    report->imag_residue = std::max(mean_rep.imag_residue, extra_rep.imag_residue);
  }
  return base + extra;
}

double mean_centered_printed_form(const TestFunction& g, double c, const PopulationSpectrum& H,
                                  double kurt_excess, const RectContour& contour,
                                  const CltOptions& opts) {
  const double scale = h_scale(opts.diag_average, c);
  const double first = gated(contour, opts, nullptr, "mean_centered_printed_form",
                             [&](const RectContour& ct) {
    Complex acc{0.0, 0.0};
    for (const auto& d : companion_node_data(ct, c, H)) {
      const Complex base = c * d.j3 / (d.denom * d.denom);
      acc += d.weight * (-g(d.z) / (d.z * d.z) * base -
                         kurt_excess * scale * g(d.z) * c * d.j3 / d.denom);
    }
    const Complex value = acc / kTwoPiI;
    return Assembled{value.real(), std::abs(value.imag())};
  });
  return first + extra_mean_contour(g, c, H, contour, opts);
}

double cov_lss(const TestFunction& g1, const TestFunction& g2, double c,
               const PopulationSpectrum& H, double kurt_excess, const RectContour& outer,
               const RectContour& inner, const CltOptions& opts, QuadratureReport* report) {
  if (!strictly_inside(inner, outer))
    throw std::invalid_argument("cov_lss: inner contour must lie strictly inside the outer one");
  const double scale = h_scale(opts.diag_average, c);
  const TestFunction g1p = g1.derivative();
  const TestFunction g2p = g2.derivative();
  const auto& atoms = H.atoms();

  const auto assemble = [&](const RectContour& oc) {
    const auto outer_data = companion_node_data(oc, c, H);
    const auto inner_data =
        companion_node_data(inner.with_nodes(oc.nodes_per_side), c, H);

    // base kernel m'(1/z1) m'(1/z2) / (m(1/z1) - m(1/z2))^2
    Complex base{0.0, 0.0};
    for (const auto& d1 : outer_data) {
      const Complex f1 = d1.weight * g1(d1.z) / (d1.z * d1.z) * d1.mprime;
      Complex row{0.0, 0.0};
      for (const auto& d2 : inner_data) {
        const Complex diff = d1.m - d2.m;
        row += d2.weight * g2(d2.z) / (d2.z * d2.z) * d2.mprime / (diff * diff);
      }
      base += f1 * row;
    }
    Complex value = -base / (2.0 * kPi * kPi);

    if (kurt_excess != 0.0) {
      // factorized fourth-moment term: per population atom, the mixed second
      // derivative of m1 m2 h1 integrates by parts onto g(z)/z^2
      Complex fourth{0.0, 0.0};
      for (const auto& atom : atoms) {
        Complex i_out{0.0, 0.0}, i_in{0.0, 0.0};
        for (const auto& d : outer_data) {
          const Complex q = atom.tau * d.m / (1.0 + d.m * atom.tau);
          i_out += d.weight * (g1p(d.z) / (d.z * d.z) - 2.0 * g1(d.z) / (d.z * d.z * d.z)) * q;
        }
        for (const auto& d : inner_data) {
          const Complex q = atom.tau * d.m / (1.0 + d.m * atom.tau);
          i_in += d.weight * (g2p(d.z) / (d.z * d.z) - 2.0 * g2(d.z) / (d.z * d.z * d.z)) * q;
        }
        fourth += atom.weight * i_out * i_in;
      }
      value += -kurt_excess * scale / (4.0 * kPi * kPi) * fourth;
    }
    return Assembled{value.real(), std::abs(value.imag())};
  };

  return gated(outer, opts, report, "cov_lss", assemble);
}

CltPrediction predict_lss(const TestFunction& g, double c, const PopulationSpectrum& H,
                          double kurt_excess, Regime regime, const PredictOptions& opts) {
  const SpectralLimit limit = solve_limit_law(c, H, opts.proxy_grid);
  const RectContour outer = build_contour(limit, opts.margin, opts.y0, opts.nodes);
  const RectContour inner = nested_inner(outer, limit, opts.margin);

  CltPrediction pred;
  pred.g = g;
  pred.regime = regime;
  pred.kurtosis_excess = kurt_excess;
  pred.mean = mean_non_centered(g, c, H, kurt_excess, outer, opts.clt, &pred.mean_quad);
  if (regime == Regime::centered) {
    QuadratureReport extra_rep;
    pred.extra_term = extra_mean_contour(g, c, H, outer, opts.clt, &extra_rep);
    pred.mean += pred.extra_term;
    pred.mean_quad.estimated_error += extra_rep.estimated_error;
    pred.mean_quad.imag_residue = std::max(pred.mean_quad.imag_residue, extra_rep.imag_residue);
  }
  pred.variance = cov_lss(g, g, c, H, kurt_excess, outer, inner, opts.clt, &pred.cov_quad);
  if (pred.variance < -opts.clt.imag_residue_tol)
    throw QuadratureError("predict_lss: negative variance " + std::to_string(pred.variance));
  pred.variance = std::max(pred.variance, 0.0);
  return pred;
}

}  // namespace pinvspec
