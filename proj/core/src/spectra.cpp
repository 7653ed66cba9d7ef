#include "pinvspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pinvspec {

namespace {
constexpr double kWeightSumTol = 1e-12;
}

AspectRatio::AspectRatio(int p_, int n_) : p(p_), n(n_) {
  if (p < 1 || n < 1) throw std::invalid_argument("AspectRatio: p and n must be >= 1");
}

PopulationSpectrum::PopulationSpectrum(std::vector<SpectrumAtom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("PopulationSpectrum: no atoms");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const SpectrumAtom& a, const SpectrumAtom& b) { return a.tau < b.tau; });
  // merge duplicate eigenvalues by adding weights
  std::vector<SpectrumAtom> merged;
  merged.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    if (!merged.empty() && a.tau == merged.back().tau)
      merged.back().weight += a.weight;
    else
      merged.push_back(a);
  }
  atoms_ = std::move(merged);

  double sum = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.tau > 0.0))
      throw std::invalid_argument("PopulationSpectrum: eigenvalues must be > 0");
    if (a.weight < 0.0 || a.weight > 1.0)
      throw std::invalid_argument("PopulationSpectrum: weights must lie in [0, 1]");
    sum += a.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol)
    throw std::invalid_argument("PopulationSpectrum: weights sum to " + std::to_string(sum) +
                                ", expected 1");
}

PopulationSpectrum PopulationSpectrum::point_mass(double tau) {
  return PopulationSpectrum({SpectrumAtom{tau, 1.0}});
}

std::vector<double> PopulationSpectrum::expand_eigenvalues(int p) const {
  if (p < 1) throw std::invalid_argument("expand_eigenvalues: p must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(p));
  int total = 0;
  for (const auto& a : atoms_) {
    const double exact = a.weight * static_cast<double>(p);
    const int count = static_cast<int>(std::llround(exact));
    if (std::abs(exact - count) > 1e-9)
      throw std::invalid_argument("expand_eigenvalues: weight " + std::to_string(a.weight) +
                                  " is not a multiple of 1/" + std::to_string(p));
    for (int k = 0; k < count; ++k) out.push_back(a.tau);
    total += count;
  }
  if (total != p)
    throw std::invalid_argument("expand_eigenvalues: counts sum to " + std::to_string(total) +
                                ", expected p = " + std::to_string(p));
  return out;
}

EmpiricalSpectrum::EmpiricalSpectrum(std::vector<double> eigenvalues)
    : eig_(std::move(eigenvalues)) {
  if (eig_.empty()) throw std::invalid_argument("EmpiricalSpectrum: empty eigenvalue list");
  std::sort(eig_.begin(), eig_.end());
}

double edf_evaluate(const EmpiricalSpectrum& spectrum, double t) {
  const auto& e = spectrum.eigenvalues();
  const auto count = std::upper_bound(e.begin(), e.end(), t) - e.begin();
  return static_cast<double>(count) / static_cast<double>(e.size());
}

namespace {

// left limit F(t-) = (1/p) #{ i : lambda_i < t }
double edf_left(const EmpiricalSpectrum& s, double t) {
  const auto& e = s.eigenvalues();
  const auto count = std::lower_bound(e.begin(), e.end(), t) - e.begin();
  return static_cast<double>(count) / static_cast<double>(e.size());
}

}  // namespace

KsResult ks_distance_checked(const EmpiricalSpectrum& s1, const EmpiricalSpectrum& s2) {
  KsResult r;
  r.dimension_mismatch = s1.dimension() != s2.dimension();
  double sup = 0.0;
  for (const auto* s : {&s1, &s2}) {
    for (double t : s->eigenvalues()) {
      sup = std::max(sup, std::abs(edf_evaluate(s1, t) - edf_evaluate(s2, t)));
      sup = std::max(sup, std::abs(edf_left(s1, t) - edf_left(s2, t)));
    }
  }
  r.value = sup;
  return r;
}

double ks_distance(const EmpiricalSpectrum& s1, const EmpiricalSpectrum& s2) {
  return ks_distance_checked(s1, s2).value;
}

double lss(const EmpiricalSpectrum& spectrum, const TestFunction& g) {
  double acc = 0.0;
  for (double lambda : spectrum.eigenvalues()) acc += g(lambda);
  return acc / static_cast<double>(spectrum.dimension());
}

double SpectralLimit::total_mass() const {
  double integral = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    integral += 0.5 * (density[i] + density[i - 1]) * (x[i] - x[i - 1]);
  return atom_mass + integral;
}

double SpectralLimit::functional(const TestFunction& g) const {
  double integral = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    integral += 0.5 * (g(x[i]) * density[i] + g(x[i - 1]) * density[i - 1]) * (x[i] - x[i - 1]);
  return atom_mass * g(0.0) + integral;
}

double SpectralLimit::cdf(double t) const {
  double acc = (t >= 0.0) ? atom_mass : 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] <= t) {
      acc += 0.5 * (density[i] + density[i - 1]) * (x[i] - x[i - 1]);
    } else if (x[i - 1] < t) {
      // partial cell, linear density interpolation
      const double f = (t - x[i - 1]) / (x[i] - x[i - 1]);
      const double dt = density[i - 1] + f * (density[i] - density[i - 1]);
      acc += 0.5 * (density[i - 1] + dt) * (t - x[i - 1]);
    }
  }
  return acc;
}

void SpectralLimit::validate() const {
  if (x.size() != density.size() || x.size() < 2)
    throw std::invalid_argument("SpectralLimit: malformed grid");
  if (atom_mass < 0.0 || atom_mass > 1.0)
    throw std::invalid_argument("SpectralLimit: atom mass outside [0, 1]");
  const double mass = total_mass();
  if (std::abs(mass - 1.0) > kMassTolerance)
    throw std::invalid_argument("SpectralLimit: total mass " + std::to_string(mass));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (density[i] < 0.0) throw std::invalid_argument("SpectralLimit: negative density");
    if ((x[i] < support_lo || x[i] > support_hi) && density[i] != 0.0)
      throw std::invalid_argument("SpectralLimit: density nonzero outside recorded support");
  }
}

}  // namespace pinvspec
