#pragma once

// Test-side oracles. These stay independent of the library code paths they
// are used to validate.

#include <cmath>
#include <complex>
#include <cstdint>

namespace oracles {

// Herglotz root of sigma2 w m^2 + (w + sigma2 (1 - c)) m + 1 = 0, by the
// quadratic formula, picking the root with positive imaginary part.
inline std::complex<double> companion_quadratic(std::complex<double> w, double c, double sigma2) {
  const std::complex<double> b = w + sigma2 * (1.0 - c);
  const std::complex<double> disc = std::sqrt(b * b - 4.0 * sigma2 * w);
  const std::complex<double> r1 = (-b + disc) / (2.0 * sigma2 * w);
  const std::complex<double> r2 = (-b - disc) / (2.0 * sigma2 * w);
  return r1.imag() > 0.0 ? r1 : r2;
}

namespace detail {

template <class F>
double simpson_rec(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m));
  const double frm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) < 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// adaptive Simpson quadrature
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-10, int depth = 42) {
  if (!(b > a)) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// central finite difference along the real direction
template <class F>
std::complex<double> fd_derivative(F&& f, std::complex<double> w, double h = 1e-6) {
  return (f(w + h) - f(w - h)) / (2.0 * h);
}

// small deterministic generator for property-test inputs
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_bits() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next_bits() >> 11) * 0x1.0p-53);
  }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_bits() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

}  // namespace oracles
