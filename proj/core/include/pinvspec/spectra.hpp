#pragma once

#include <complex>
#include <vector>

#include "pinvspec/test_function.hpp"

namespace pinvspec {

// Dimension/sample-size pair. The ratio is always recomputed from p and n,
// never stored separately.
struct AspectRatio {
  int p = 1;
  int n = 1;

  AspectRatio(int p_, int n_);
  double c() const { return static_cast<double>(p) / static_cast<double>(n); }
  bool pseudoinverse_regime() const { return p > n; }
};

struct SpectrumAtom {
  double tau = 1.0;    // population eigenvalue, > 0
  double weight = 1.0; // mass in [0, 1]
};

// Discrete population spectral distribution (eigenvalue/weight pairs of the
// population covariance). Canonical form: eigenvalues strictly increasing,
// duplicates merged, weights summing to one.
class PopulationSpectrum {
 public:
  explicit PopulationSpectrum(std::vector<SpectrumAtom> atoms);

  static PopulationSpectrum point_mass(double tau);

  const std::vector<SpectrumAtom>& atoms() const { return atoms_; }
  double min_tau() const { return atoms_.front().tau; }
  double max_tau() const { return atoms_.back().tau; }

  // Exact integral of f against the spectrum; f maps double -> double or
  // double -> complex.
  template <class F>
  auto integrate(F&& f) const -> decltype(f(1.0)) {
    decltype(f(1.0)) acc{};
    for (const auto& a : atoms_) acc += a.weight * f(a.tau);
    return acc;
  }

  // Expand to exactly p eigenvalues (ascending). Throws if some weight is not
  // a multiple of 1/p.
  std::vector<double> expand_eigenvalues(int p) const;

 private:
  std::vector<SpectrumAtom> atoms_;
};

// Sorted eigenvalue multiset of a symmetric matrix, with its empirical
// distribution function.
class EmpiricalSpectrum {
 public:
  explicit EmpiricalSpectrum(std::vector<double> eigenvalues);

  int dimension() const { return static_cast<int>(eig_.size()); }
  const std::vector<double>& eigenvalues() const { return eig_; }
  double min() const { return eig_.front(); }
  double max() const { return eig_.back(); }

 private:
  std::vector<double> eig_;
};

// F(t) = (1/p) #{ i : lambda_i <= t }. Right-continuous, 0 below the min,
// 1 at and above the max.
double edf_evaluate(const EmpiricalSpectrum& spectrum, double t);

struct KsResult {
  double value = 0.0;
  bool dimension_mismatch = false;
};

// Exact sup-norm distance between the two EDFs, evaluated over the merged
// jump points including left limits.
KsResult ks_distance_checked(const EmpiricalSpectrum& s1, const EmpiricalSpectrum& s2);
double ks_distance(const EmpiricalSpectrum& s1, const EmpiricalSpectrum& s2);

// Linear spectral statistic (1/p) sum g(lambda_i).
double lss(const EmpiricalSpectrum& spectrum, const TestFunction& g);

// Point mass at zero plus a gridded absolutely continuous density.
struct SpectralLimit {
  double atom_mass = 0.0;          // mass of the point mass at 0
  std::vector<double> x;           // grid abscissae, ascending
  std::vector<double> density;     // density values, zero outside support
  double support_lo = 0.0;         // a.c. support interval
  double support_hi = 0.0;

  // atom + trapezoid integral of the gridded density
  double total_mass() const;
  // atom_mass * g(0) + trapezoid integral of g * density
  double functional(const TestFunction& g) const;
  // distribution function at t (atom at zero included)
  double cdf(double t) const;
  // throws unless total mass is within kMassTolerance of one and the density
  // vanishes outside [support_lo, support_hi]
  void validate() const;

  static constexpr double kMassTolerance = 1e-3;
};

}  // namespace pinvspec
