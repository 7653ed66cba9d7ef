#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <Eigen/Dense>

#include "pinvspec/entry_law.hpp"
#include "pinvspec/spectra.hpp"

namespace pinvspec {

// One sampled data set: observations Y = Sigma^{1/2} X with diagonal Sigma,
// row mean vector, and both sample covariance matrices.
struct SampleEnsemble {
  Eigen::MatrixXd Y;        // p x n observations
  Eigen::VectorXd ybar;     // row means of Y
  Eigen::MatrixXd S;        // (1/n) Y Y'
  Eigen::MatrixXd S_tilde;  // S - ybar ybar'
  std::uint64_t seed = 0;

  int p() const { return static_cast<int>(Y.rows()); }
  int n() const { return static_cast<int>(Y.cols()); }
  // companion matrix (1/n) Y' Y, the n x n Gram form
  Eigen::MatrixXd companion() const { return (Y.transpose() * Y) / static_cast<double>(n()); }
};

SampleEnsemble build_ensemble(const EntryLaw& law, const PopulationSpectrum& H_n, int p, int n,
                              std::uint64_t seed);

// Moore-Penrose inverse of a symmetric PSD matrix via eigendecomposition.
// Eigenvalues below dim * machine_eps * lambda_max are treated as zero.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& A);
double pseudoinverse_cutoff(const Eigen::MatrixXd& A);

// relative residuals of the four Penrose criteria for the pair (A, A+):
//   [0] |A A+ A - A| / |A|
//   [1] |A+ A A+ - A+| / |A+|
//   [2] |(A A+)' - A A+| / max(1, |A A+|)
//   [3] |(A+ A)' - A+ A| / max(1, |A+ A|)
std::array<double, 4> penrose_residuals(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Aplus);

struct PinvPair {
  Eigen::MatrixXd S_plus;
  Eigen::MatrixXd S_tilde_plus;
  double svd_cutoff = 0.0;
};

PinvPair pinv_pair(const SampleEnsemble& ensemble);

// third singular value of S+ - S~+, relative to the first; the difference is
// a rank-two matrix up to roundoff
double rank_two_defect(const Eigen::MatrixXd& difference);

// Rank-one downdate of the pseudoinverse:
//   (S - ybar ybar')+ = S+ - (S+ y y'(S+)^2 + (S+)^2 y y' S+) / (y'(S+)^2 y)
//                          + (y'(S+)^3 y) / (y'(S+)^2 y)^2 * S+ y y' S+
// valid when ybar lies in the column space of S. Falls back to the direct
// pseudoinverse when the denominator degenerates.
Eigen::MatrixXd pinv_rank_one_update(const Eigen::MatrixXd& S_plus, const Eigen::VectorXd& ybar);

// the quadratic form ybar' S+ ybar; identically 1 when p > n and Y'Y is
// invertible
double ybar_unit_form(const Eigen::MatrixXd& S_plus, const Eigen::VectorXd& ybar);

// eigenvalue multiset of a symmetric matrix
EmpiricalSpectrum spectrum_of(const Eigen::MatrixXd& symmetric);

// same, with eigenvalues of magnitude <= cutoff clamped to exactly zero; the
// spectrum of a computed pseudoinverse carries roundoff noise on its kernel,
// and the exact EDF identities need the zeros to be exact
EmpiricalSpectrum spectrum_of_clamped(const Eigen::MatrixXd& symmetric, double cutoff);

// number of eigenvalues classified as zero under the pseudoinverse cutoff
int zero_eigenvalue_count(const EmpiricalSpectrum& spectrum, double cutoff);

// (1/p) sum 1/(lambda_i - z)
std::complex<double> empirical_stieltjes(const EmpiricalSpectrum& spectrum,
                                         std::complex<double> z);

// Correction terms of tr R(z) - tr A^{-1}(z) for the centered resolvent,
// assembled from u = S+ ybar, v = (S+)^2 ybar and the rank-two difference
// vectors; equals p (m_{S~+}(z) - m_{S+}(z)).
std::complex<double> xi_direct(const PinvPair& pair, const Eigen::VectorXd& ybar,
                               std::complex<double> z);

// theta(z) = ybar'(S+ - zI)^{-1} ybar via the companion-side representation
//   -(1/z) ybar'ybar + (1/z)(1/n) 1'((1/n Y'Y)^{-1} - zI)^{-1} 1,
// computed with n x n solves only.
std::complex<double> theta_n(const SampleEnsemble& ensemble, std::complex<double> z);
// exact derivative theta'(z) = ybar'(S+ - zI)^{-2} ybar, same representation
std::complex<double> theta_n_derivative(const SampleEnsemble& ensemble, std::complex<double> z);

// direct p x p resolvent quadratic forms, for cross-checking the representation
std::complex<double> theta_direct(const Eigen::MatrixXd& S_plus, const Eigen::VectorXd& ybar,
                                  std::complex<double> z);
std::complex<double> theta_direct_derivative(const Eigen::MatrixXd& S_plus,
                                             const Eigen::VectorXd& ybar,
                                             std::complex<double> z);

// xi via the scalar representation
//   xi(z) = -1/z - (y'y + 2 z theta + z^2 theta') / (1 + z y'y + z^2 theta)
std::complex<double> xi_simplified(const SampleEnsemble& ensemble, std::complex<double> z);

// denominator 1 + z y'y + z^2 theta(z) of the scalar representation
std::complex<double> xi_denominator(const SampleEnsemble& ensemble, std::complex<double> z);

// Eigenvalues of the pseudoinverse spectra without forming p x p matrices:
// S+ has p - n zeros plus reciprocals of the companion eigenvalues, S~+ has
// p - n + 1 zeros plus reciprocals of the nonzero centered companion
// eigenvalues.
struct PinvSpectra {
  std::vector<double> s_plus;
  std::vector<double> s_tilde_plus;
};
PinvSpectra pinv_spectra_fast(const SampleEnsemble& ensemble);

// condition-number degeneracy guard for the companion matrix
bool companion_degenerate(const SampleEnsemble& ensemble, double max_condition = 1e12);

}  // namespace pinvspec
