#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>

#include "pinvspec/spectra.hpp"

namespace pinvspec {

using Complex = std::complex<double>;

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  double tolerance = 1e-13;     // fixed-point residual |G(m) - m|
  int max_iterations = 100000;  // across all phases
  double damping = 0.5;         // Picard relaxation
  bool boundary_mode = false;   // accept real w, evaluated at w + i*boundary_eps
  double boundary_eps = 1e-9;
  std::optional<Complex> initial_guess;
};

// Companion Stieltjes transform at w in the upper half-plane: the unique
// Herglotz solution of  m = -1 / (w - c * int tau/(1 + m tau) dH(tau)).
// Damped Picard iteration with a secant polish once Picard stalls.
Complex solve_companion(Complex w, double c, const PopulationSpectrum& H,
                        const SolveOptions& opts = {});

// Conjugate-symmetric extension: any w off the support (lower half-plane
// values via m(conj w) = conj m(w), real w via + i*boundary_eps).
Complex companion_any(Complex w, double c, const PopulationSpectrum& H,
                      const SolveOptions& opts = {});

// residual of the defining equation at m
double companion_residual(Complex m, Complex w, double c, const PopulationSpectrum& H);

// m_primary(w) = (m_companion(w) + (1 - c)/w) / c, the linear relation between
// the transforms of the p x p and n x n spectral limits.
Complex companion_to_primary(Complex m_companion, Complex w, double c);

// Derivative m'(w) of the companion transform by implicit differentiation:
// m' = m^2 / (1 - c * int tau^2 m^2/(1 + tau m)^2 dH). Reports when the
// denominator is within 1e-12 of zero (spectral edge).
Complex companion_derivative(Complex w, double c, const PopulationSpectrum& H,
                             const SolveOptions& opts = {});
Complex companion_derivative_any(Complex w, double c, const PopulationSpectrum& H,
                                 const SolveOptions& opts = {});

// Stieltjes transform of the limit law of the pseudoinverse sample
// covariance spectrum, via the composition
//   m(z) = -(2 - 1/c)/z - m_primary(1/z)/z^2.
Complex solve_pinv_law(Complex z, double c, const PopulationSpectrum& H,
                       const SolveOptions& opts = {});

// residual of the self-consistent equation
//   m = -(1/z) (2 - 1/c + int dH(tau) / (z tau c (z m + 1) - 1))
double pinv_law_residual(Complex m, Complex z, double c, const PopulationSpectrum& H);

// Closed forms for a single population atom at sigma2 (isotropic population).
// Square-root branches are pinned by the Herglotz property.
Complex closed_form_companion(Complex w, double c, double sigma2);
Complex closed_form_pinv_law(Complex z, double c, double sigma2);

// support endpoints of the isotropic pseudoinverse law
double isotropic_lambda_plus(double c, double sigma2);   // sigma2 (1 + sqrt c)^2
double isotropic_lambda_minus(double c, double sigma2);  // sigma2 (1 - sqrt c)^2
double isotropic_support_lo(double c, double sigma2);    // 1 / lambda_plus
double isotropic_support_hi(double c, double sigma2);    // 1 / lambda_minus

// Density of the absolutely continuous part of the isotropic limit law:
//   nu(x) = sqrt((lambda_+ - 1/x)(1/x - lambda_-)) / (2 pi sigma2 c x)
// on [1/lambda_+, 1/lambda_-], zero elsewhere. Integrates to 1/c.
double density_isotropic(double x, double c, double sigma2);

// Stieltjes inversion: max(0, Im m(x + i eps) / pi).
using StieltjesProvider = std::function<Complex(Complex)>;
double density_from_stieltjes(double x, double eps, const StieltjesProvider& m);

// Richardson extrapolation of the inversion over eps in {1e-3, 1e-4, 1e-5}.
double density_from_stieltjes_extrapolated(double x, const StieltjesProvider& m);

// Limit law at aspect ratio c: atom of mass 1 - 1/c at zero plus the
// absolutely continuous density on a cosine-clustered grid over the support
// extended by 1%. Isotropic populations use the closed-form density, general
// ones Stieltjes inversion with support detection.
SpectralLimit solve_limit_law(double c, const PopulationSpectrum& H, int grid_points = 2000);

// Finite-sample proxy law: the limit law with c replaced by p/n and H by H_n.
SpectralLimit finite_sample_proxy(int p, int n, const PopulationSpectrum& H_n,
                                  int grid_points = 2000);

}  // namespace pinvspec
