#include "pinvspec/mp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace pinvspec {

namespace {

constexpr double kPi = std::numbers::pi;

Complex companion_map(Complex m, Complex w, double c, const PopulationSpectrum& H) {
  const Complex integral =
      H.integrate([&](double tau) { return Complex(tau) / (1.0 + m * tau); });
  return -1.0 / (w - c * integral);
}

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

struct IterState {
  Complex m{0.0, 1.0};
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

// convergence target, relative where the transform itself is small so that
// 1/z^2 compositions stay accurate near z = 0
double residual_target(double tol, Complex m) {
  return tol * std::min(1.0, std::abs(m) + 1e-300);
}

bool converged(const IterState& st, double tol) {
  return st.residual < residual_target(tol, st.m);
}

// secant iteration on f(m) = m - G(m), starting from (m0, m1)
void secant_polish(IterState& st, Complex m0, Complex m1, Complex w, double c,
                   const PopulationSpectrum& H, double tol, int budget) {
  Complex f0 = m0 - companion_map(m0, w, c, H);
  for (int k = 0; k < budget; ++k) {
    const Complex f1 = m1 - companion_map(m1, w, c, H);
    ++st.iterations;
    if (finite(m1) && std::abs(f1) < st.residual) {
      st.residual = std::abs(f1);
      st.m = m1;
    }
    if (converged(st, tol)) return;
    const Complex denom = f1 - f0;
    if (!finite(f1) || std::abs(denom) < 1e-300) return;
    const Complex m2 = m1 - f1 * (m1 - m0) / denom;
    if (!finite(m2)) return;
    m0 = m1;
    f0 = f1;
    m1 = m2;
  }
}

}  // namespace

double companion_residual(Complex m, Complex w, double c, const PopulationSpectrum& H) {
  return std::abs(companion_map(m, w, c, H) - m);
}

Complex solve_companion(Complex w, double c, const PopulationSpectrum& H,
                        const SolveOptions& opts) {
  if (!(c > 0.0)) throw std::invalid_argument("solve_companion: c must be > 0");
  if (!(w.imag() > 0.0)) {
    if (opts.boundary_mode && w.imag() == 0.0)
      w += Complex(0.0, opts.boundary_eps);
    else
      throw std::invalid_argument("solve_companion: need Im w > 0 (enable boundary mode for real w)");
  }

  IterState st;
  Complex m = opts.initial_guess.value_or(-1.0 / w);
  if (!finite(m) || m.imag() <= 0.0) m = Complex(0.0, 1.0);
  Complex prev = m;

  // damped Picard; the map is contractive away from the real axis
  const int picard_budget = std::min(400, opts.max_iterations);
  for (int k = 0; k < picard_budget; ++k) {
    const Complex gm = companion_map(m, w, c, H);
    ++st.iterations;
    const double res = std::abs(gm - m);
    if (finite(m) && res < st.residual) {
      st.residual = res;
      st.m = m;
    }
    if (converged(st, opts.tolerance)) break;
    prev = m;
    m = (1.0 - opts.damping) * m + opts.damping * gm;
    if (!finite(m)) {
      m = st.m;
      break;
    }
  }

  if (!converged(st, opts.tolerance))
    secant_polish(st, prev, m, w, c, H, opts.tolerance,
                  opts.max_iterations - st.iterations);

  // wrong half-plane means the iteration crossed to the conjugate root
  if (st.m.imag() <= 0.0 && st.iterations < opts.max_iterations) {
    IterState retry;
    secant_polish(retry, std::conj(st.m), std::conj(st.m) + Complex(0.0, 1e-8), w, c, H,
                  opts.tolerance, opts.max_iterations - st.iterations);
    if (retry.residual < st.residual || retry.m.imag() > 0.0) st = retry;
  }
  if ((!converged(st, opts.tolerance) || st.m.imag() <= 0.0) &&
      st.iterations < opts.max_iterations) {
    IterState retry;
    secant_polish(retry, Complex(0.0, 1.0), Complex(0.1, 1.1), w, c, H, opts.tolerance,
                  opts.max_iterations - st.iterations);
    if (retry.m.imag() > 0.0 && retry.residual < std::max(st.residual, opts.tolerance))
      st = retry;
  }

  if (st.residual > std::max(1e-12 * std::min(1.0, std::abs(st.m)), 10.0 * residual_target(opts.tolerance, st.m)))
    throw SolverError("solve_companion: no convergence at w = (" + std::to_string(w.real()) +
                      ", " + std::to_string(w.imag()) + "), final residual " +
                      std::to_string(st.residual));
  if (st.m.imag() <= 0.0)
    throw SolverError("solve_companion: non-Herglotz solution at w = (" +
                      std::to_string(w.real()) + ", " + std::to_string(w.imag()) + ")");
  // transforms of probability measures obey |m(w)| <= 1/Im w
  if (std::abs(st.m) * w.imag() > 1.0 + 1e-9)
    throw SolverError("solve_companion: Stieltjes bound violated at w = (" +
                      std::to_string(w.real()) + ", " + std::to_string(w.imag()) + ")");
  return st.m;
}

Complex companion_any(Complex w, double c, const PopulationSpectrum& H,
                      const SolveOptions& opts) {
  if (w.imag() > 0.0) return solve_companion(w, c, H, opts);
  if (w.imag() < 0.0) {
    SolveOptions conj_opts = opts;
    if (opts.initial_guess) conj_opts.initial_guess = std::conj(*opts.initial_guess);
    return std::conj(solve_companion(std::conj(w), c, H, conj_opts));
  }
  SolveOptions boundary = opts;
  boundary.boundary_mode = true;
  return solve_companion(w, c, H, boundary);
}

Complex companion_to_primary(Complex m_companion, Complex w, double c) {
  if (c == 0.0) throw std::invalid_argument("companion_to_primary: c must be nonzero");
  if (w == Complex(0.0, 0.0)) throw std::invalid_argument("companion_to_primary: w must be nonzero");
  return (m_companion + (1.0 - c) / w) / c;
}

Complex companion_derivative(Complex w, double c, const PopulationSpectrum& H,
                             const SolveOptions& opts) {
  const Complex m = solve_companion(w, c, H, opts);
  const Complex j2 =
      H.integrate([&](double tau) { return Complex(tau * tau) * m * m / ((1.0 + m * tau) * (1.0 + m * tau)); });
  const Complex denom = 1.0 - c * j2;
  if (std::abs(denom) < 1e-12)
    throw SolverError("companion_derivative: implicit-differentiation denominator ~ 0 (near spectrum edge), |denom| = " +
                      std::to_string(std::abs(denom)));
  return m * m / denom;
}

Complex companion_derivative_any(Complex w, double c, const PopulationSpectrum& H,
                                 const SolveOptions& opts) {
  if (w.imag() >= 0.0) {
    SolveOptions o = opts;
    if (w.imag() == 0.0) o.boundary_mode = true;
    return companion_derivative(w, c, H, o);
  }
  SolveOptions conj_opts = opts;
  if (opts.initial_guess) conj_opts.initial_guess = std::conj(*opts.initial_guess);
  return std::conj(companion_derivative(std::conj(w), c, H, conj_opts));
}

Complex solve_pinv_law(Complex z, double c, const PopulationSpectrum& H,
                       const SolveOptions& opts) {
  if (!(c > 1.0)) throw std::invalid_argument("solve_pinv_law: need c > 1");
  if (!(z.imag() > 0.0)) {
    if (opts.boundary_mode && z.imag() == 0.0)
      z += Complex(0.0, opts.boundary_eps);
    else
      throw std::invalid_argument("solve_pinv_law: need Im z > 0 (enable boundary mode for real z)");
  }
  const Complex w = 1.0 / z;
  const Complex m_comp = companion_any(w, c, H, opts);
  const Complex m_prim = companion_to_primary(m_comp, w, c);
  const Complex m = -(2.0 - 1.0 / c) / z - m_prim / (z * z);

  const double res = pinv_law_residual(m, z, c, H);
  if (!(res < 1e-10 * std::max(1.0, std::abs(m))))
    throw SolverError("solve_pinv_law: equation residual " + std::to_string(res) + " at z = (" +
                      std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
  if (!(m.imag() > 0.0))
    throw SolverError("solve_pinv_law: non-Herglotz value at z = (" + std::to_string(z.real()) +
                      ", " + std::to_string(z.imag()) + ")");
  return m;
}

double pinv_law_residual(Complex m, Complex z, double c, const PopulationSpectrum& H) {
  const Complex integral = H.integrate(
      [&](double tau) { return 1.0 / (z * tau * c * (z * m + 1.0) - 1.0); });
  const Complex rhs = -(2.0 - 1.0 / c + integral) / z;
  return std::abs(m - rhs);
}

namespace {

// Herglotz root of  sigma2 w m^2 + (w + sigma2 (1 - c)) m + 1 = 0  for Im w > 0
Complex closed_form_companion_upper(Complex w, double c, double sigma2) {
  const Complex b = w + sigma2 * (1.0 - c);
  const Complex disc = std::sqrt(b * b - 4.0 * sigma2 * w);
  const Complex twoa = 2.0 * sigma2 * w;
  const Complex r1 = (-b + disc) / twoa;
  const Complex r2 = (-b - disc) / twoa;
  return (r1.imag() > r2.imag()) ? r1 : r2;
}

}  // namespace

Complex closed_form_companion(Complex w, double c, double sigma2) {
  if (!(c > 0.0) || !(sigma2 > 0.0))
    throw std::invalid_argument("closed_form_companion: need c > 0 and sigma2 > 0");
  if (w.imag() > 0.0) return closed_form_companion_upper(w, c, sigma2);
  if (w.imag() < 0.0) return std::conj(closed_form_companion_upper(std::conj(w), c, sigma2));
  return closed_form_companion_upper(w + Complex(0.0, 1e-9), c, sigma2);
}

Complex closed_form_pinv_law(Complex z, double c, double sigma2) {
  if (z == Complex(0.0, 0.0)) throw std::invalid_argument("closed_form_pinv_law: z must be nonzero");
  if (!(c > 1.0)) throw std::invalid_argument("closed_form_pinv_law: need c > 1");
  const Complex w = 1.0 / z;
  const Complex m_comp = closed_form_companion(w, c, sigma2);
  const Complex m_prim = (m_comp + (1.0 - c) / w) / c;
  return -(2.0 - 1.0 / c) / z - m_prim / (z * z);
}

double isotropic_lambda_plus(double c, double sigma2) {
  const double s = 1.0 + std::sqrt(c);
  return sigma2 * s * s;
}

double isotropic_lambda_minus(double c, double sigma2) {
  const double s = 1.0 - std::sqrt(c);
  return sigma2 * s * s;
}

double isotropic_support_lo(double c, double sigma2) {
  return 1.0 / isotropic_lambda_plus(c, sigma2);
}

double isotropic_support_hi(double c, double sigma2) {
  return 1.0 / isotropic_lambda_minus(c, sigma2);
}

double density_isotropic(double x, double c, double sigma2) {
  if (!(c > 1.0) || !(sigma2 > 0.0))
    throw std::invalid_argument("density_isotropic: need c > 1 and sigma2 > 0");
  if (x <= 0.0) return 0.0;
  const double lp = isotropic_lambda_plus(c, sigma2);
  const double lm = isotropic_lambda_minus(c, sigma2);
  const double inv = 1.0 / x;
  if (inv > lp || inv < lm) return 0.0;
  const double radicand = std::max(0.0, (lp - inv) * (inv - lm));
  return std::sqrt(radicand) / (2.0 * kPi * sigma2 * c * x);
}

double density_from_stieltjes(double x, double eps, const StieltjesProvider& m) {
  if (!(eps > 0.0)) throw std::invalid_argument("density_from_stieltjes: eps must be > 0");
  const Complex value = m(Complex(x, eps));
  return std::max(0.0, value.imag() / kPi);
}

double density_from_stieltjes_extrapolated(double x, const StieltjesProvider& m) {
  const double eps[3] = {1e-3, 1e-4, 1e-5};
  double f[3];
  for (int i = 0; i < 3; ++i) f[i] = m(Complex(x, eps[i])).imag() / kPi;
  // Neville extrapolation of the polynomial through (eps_i, f_i) to eps = 0
  for (int level = 1; level < 3; ++level)
    for (int i = 0; i < 3 - level; ++i)
      f[i] = (eps[i + level] * f[i] - eps[i] * f[i + 1]) / (eps[i + level] - eps[i]);
  return std::max(0.0, f[0]);
}

SpectralLimit solve_limit_law(double c, const PopulationSpectrum& H_n, int grid_points) {
  if (!(c > 1.0)) throw std::invalid_argument("solve_limit_law: need c > 1");
  if (grid_points < 8) throw std::invalid_argument("solve_limit_law: grid too small");

  SpectralLimit limit;
  limit.atom_mass = 1.0 - 1.0 / c;

  const bool isotropic = H_n.atoms().size() == 1;
  double lo, hi;
  if (isotropic) {
    const double sigma2 = H_n.atoms().front().tau;
    lo = isotropic_support_lo(c, sigma2);
    hi = isotropic_support_hi(c, sigma2);
  } else {
    // bracket the support, then detect where the boundary density is positive
    const double sc = std::sqrt(c);
    const double bar_hi = H_n.max_tau() * (1.0 + sc) * (1.0 + sc) * 1.1;
    const double bar_lo = H_n.min_tau() * (sc - 1.0) * (sc - 1.0) * 0.9;
    const double scan_lo = 1.0 / bar_hi, scan_hi = 1.0 / bar_lo;
    const int scan_points = 2000;
    lo = scan_hi;
    hi = scan_lo;
    for (int i = 0; i < scan_points; ++i) {
      const double x = scan_lo + (scan_hi - scan_lo) * i / (scan_points - 1.0);
      Complex m;
      try {
        m = solve_pinv_law(Complex(x, 1e-5), c, H_n);
      } catch (const SolverError&) {
        continue;
      }
      if (m.imag() / kPi > 1e-6) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
    if (!(hi > lo)) throw SolverError("solve_limit_law: no positive-density region detected");
  }

  const double ext = 0.01 * (hi - lo);
  const double grid_lo = std::max(lo - ext, 1e-12), grid_hi = hi + ext;
  limit.support_lo = lo;
  limit.support_hi = hi;
  limit.x.resize(grid_points);
  limit.density.resize(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    // cosine clustering resolves the square-root edges of the density
    const double t = 0.5 * (1.0 - std::cos(kPi * i / (grid_points - 1.0)));
    const double x = grid_lo + (grid_hi - grid_lo) * t;
    limit.x[i] = x;
    if (isotropic) {
      limit.density[i] = density_isotropic(x, c, H_n.atoms().front().tau);
    } else if (x < lo || x > hi) {
      limit.density[i] = 0.0;
    } else {
      limit.density[i] = density_from_stieltjes(
          x, 1e-5, [&](Complex z) { return solve_pinv_law(z, c, H_n); });
    }
  }
  limit.validate();
  return limit;
}

SpectralLimit finite_sample_proxy(int p, int n, const PopulationSpectrum& H_n,
                                  int grid_points) {
  if (p <= n || n < 1) throw std::invalid_argument("finite_sample_proxy: need p > n >= 1");
  SpectralLimit limit = solve_limit_law(static_cast<double>(p) / n, H_n, grid_points);
  limit.atom_mass = 1.0 - static_cast<double>(n) / p;
  return limit;
}

}  // namespace pinvspec
