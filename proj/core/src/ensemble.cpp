#include "pinvspec/ensemble.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pinvspec/mp_solver.hpp"

namespace pinvspec {

namespace {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// bilinear (unconjugated) dot product
Complex bdot(const CVector& a, const CVector& b) { return (a.array() * b.array()).sum(); }

void require_symmetric(const Eigen::MatrixXd& A, const char* who) {
  if (A.rows() != A.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument(std::string(who) + ": matrix not symmetric");
}

}  // namespace

SampleEnsemble build_ensemble(const EntryLaw& law, const PopulationSpectrum& H_n, int p, int n,
                              std::uint64_t seed) {
  if (!(p > n) || n < 2)
    throw std::invalid_argument("build_ensemble: need p > n >= 2");
  const std::vector<double> taus = H_n.expand_eigenvalues(p);

  SampleEnsemble e;
  e.seed = seed;
  e.Y = entry_sample(law, p, n, seed);
  for (int i = 0; i < p; ++i) e.Y.row(i) *= std::sqrt(taus[static_cast<std::size_t>(i)]);
  e.ybar = e.Y.rowwise().mean();
  e.S = (e.Y * e.Y.transpose()) / static_cast<double>(n);
  e.S = 0.5 * (e.S + e.S.transpose()).eval();
  e.S_tilde = e.S - e.ybar * e.ybar.transpose();
  return e;
}

double pseudoinverse_cutoff(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  return static_cast<double>(A.rows()) * std::numeric_limits<double>::epsilon() * lmax;
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& A) {
  require_symmetric(A, "pseudoinverse");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double lmax = lambda.cwiseAbs().maxCoeff();
  if (lmax == 0.0) return Eigen::MatrixXd::Zero(A.rows(), A.cols());
  const double cutoff = static_cast<double>(A.rows()) * std::numeric_limits<double>::epsilon() * lmax;
  Eigen::VectorXd inv(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    inv[i] = (std::abs(lambda[i]) > cutoff) ? 1.0 / lambda[i] : 0.0;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

std::array<double, 4> penrose_residuals(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Aplus) {
  const Eigen::MatrixXd AP = A * Aplus;
  const Eigen::MatrixXd PA = Aplus * A;
  std::array<double, 4> r{};
  const double na = A.norm(), np = Aplus.norm();
  r[0] = (AP * A - A).norm() / (na > 0.0 ? na : 1.0);
  r[1] = (PA * Aplus - Aplus).norm() / (np > 0.0 ? np : 1.0);
  r[2] = (AP - AP.transpose()).norm() / std::max(1.0, AP.norm());
  r[3] = (PA - PA.transpose()).norm() / std::max(1.0, PA.norm());
  return r;
}

PinvPair pinv_pair(const SampleEnsemble& ensemble) {
  PinvPair pair;
  pair.S_plus = pseudoinverse(ensemble.S);
  pair.S_tilde_plus = pseudoinverse(ensemble.S_tilde);
  pair.svd_cutoff = pseudoinverse_cutoff(ensemble.S);
  return pair;
}

double rank_two_defect(const Eigen::MatrixXd& difference) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(difference);
  const auto& sv = svd.singularValues();
  if (sv.size() < 3 || sv[0] == 0.0) return 0.0;
  return sv[2] / sv[0];
}

Eigen::MatrixXd pinv_rank_one_update(const Eigen::MatrixXd& S_plus, const Eigen::VectorXd& ybar) {
  const Eigen::VectorXd u = S_plus * ybar;
  const Eigen::VectorXd v = S_plus * u;
  const double uu = u.squaredNorm();   // ybar'(S+)^2 ybar
  const double uv = u.dot(v);          // ybar'(S+)^3 ybar
  const double scale = S_plus.squaredNorm() * ybar.squaredNorm();
  if (!(uu > 1e-28 * scale)) {
    // ybar orthogonal to the range of S: downdate formula undefined
    return pseudoinverse(pseudoinverse(S_plus) - ybar * ybar.transpose());
  }
  return S_plus - (u * v.transpose() + v * u.transpose()) / uu +
         (uv / (uu * uu)) * (u * u.transpose());
}

double ybar_unit_form(const Eigen::MatrixXd& S_plus, const Eigen::VectorXd& ybar) {
  return ybar.dot(S_plus * ybar);
}

EmpiricalSpectrum spectrum_of(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric, Eigen::EigenvaluesOnly);
  const auto& lambda = es.eigenvalues();
  return EmpiricalSpectrum(std::vector<double>(lambda.data(), lambda.data() + lambda.size()));
}

EmpiricalSpectrum spectrum_of_clamped(const Eigen::MatrixXd& symmetric, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric, Eigen::EigenvaluesOnly);
  std::vector<double> lambda(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
  for (double& v : lambda)
    if (std::abs(v) <= cutoff) v = 0.0;
  return EmpiricalSpectrum(std::move(lambda));
}

int zero_eigenvalue_count(const EmpiricalSpectrum& spectrum, double cutoff) {
  int count = 0;
  for (double lambda : spectrum.eigenvalues())
    if (std::abs(lambda) <= cutoff) ++count;
  return count;
}

Complex empirical_stieltjes(const EmpiricalSpectrum& spectrum, Complex z) {
  if (z.imag() == 0.0) {
    for (double lambda : spectrum.eigenvalues())
      if (lambda == z.real())
        throw std::invalid_argument("empirical_stieltjes: real z hits an eigenvalue");
  }
  Complex acc{0.0, 0.0};
  for (double lambda : spectrum.eigenvalues()) acc += 1.0 / (lambda - z);
  return acc / static_cast<double>(spectrum.dimension());
}

Complex xi_direct(const PinvPair& pair, const Eigen::VectorXd& ybar, Complex z) {
  if (!(z.imag() > 0.0)) throw std::invalid_argument("xi_direct: need Im z > 0");
  const Eigen::VectorXd u = pair.S_plus * ybar;
  const Eigen::VectorXd v = pair.S_plus * u;
  const double uu = u.squaredNorm();
  const double uv = u.dot(v);
  const Eigen::VectorXd w = std::sqrt(uv / uu) * u - std::sqrt(uu / uv) * v;

  CMatrix A = pair.S_plus.cast<Complex>();
  A.diagonal().array() -= z;
  const Eigen::PartialPivLU<CMatrix> lu(A);
  const CVector Av = lu.solve(v.cast<Complex>());
  const CVector Aw = lu.solve(w.cast<Complex>());

  const Complex vAv = bdot(v.cast<Complex>(), Av);
  const Complex vA2v = bdot(Av, Av);
  const Complex wAw = bdot(w.cast<Complex>(), Aw);
  const Complex wA2w = bdot(Aw, Aw);
  const Complex wAv = bdot(w.cast<Complex>(), Av);
  const Complex wA2v = bdot(Aw, Av);

  const Complex d = uv - vAv;
  const Complex wPPw = wA2w + 2.0 * wAv * wA2v / d + wAv * wAv * vA2v / (d * d);
  const Complex denom = uu + wAw + wAv * wAv / d;
  return vA2v / d - wPPw / denom;
}

namespace {

struct ThetaValues {
  Complex theta;
  Complex theta_prime;
  double ybar_sq;
};

ThetaValues theta_values(const SampleEnsemble& ensemble, Complex z) {
  const int n = ensemble.n();
  const Eigen::MatrixXd B = ensemble.companion();
  CMatrix M = CMatrix::Identity(n, n) - z * B.cast<Complex>();
  const Eigen::PartialPivLU<CMatrix> lu(M);
  const CVector ones = CVector::Ones(n);
  const CVector x1 = lu.solve(B.cast<Complex>() * ones);                // (B^{-1}-z)^{-1} 1
  const CVector x2 = lu.solve(B.cast<Complex>() * x1);                  // (B^{-1}-z)^{-2} 1
  const Complex f = bdot(ones, x1);
  const Complex fp = bdot(ones, x2);
  const double nn = static_cast<double>(n);

  ThetaValues tv;
  tv.ybar_sq = ensemble.ybar.squaredNorm();
  tv.theta = -tv.ybar_sq / z + f / (z * nn);
  tv.theta_prime = tv.ybar_sq / (z * z) - f / (z * z * nn) + fp / (z * nn);
  return tv;
}

}  // namespace

Complex theta_n(const SampleEnsemble& ensemble, Complex z) {
  if (z == Complex(0.0, 0.0)) throw std::invalid_argument("theta_n: z must be nonzero");
  return theta_values(ensemble, z).theta;
}

Complex theta_n_derivative(const SampleEnsemble& ensemble, Complex z) {
  if (z == Complex(0.0, 0.0)) throw std::invalid_argument("theta_n_derivative: z must be nonzero");
  return theta_values(ensemble, z).theta_prime;
}

Complex theta_direct(const Eigen::MatrixXd& S_plus, const Eigen::VectorXd& ybar, Complex z) {
  CMatrix A = S_plus.cast<Complex>();
  A.diagonal().array() -= z;
  const Eigen::PartialPivLU<CMatrix> lu(A);
  const CVector r1 = lu.solve(ybar.cast<Complex>());
  return bdot(ybar.cast<Complex>(), r1);
}

Complex theta_direct_derivative(const Eigen::MatrixXd& S_plus, const Eigen::VectorXd& ybar,
                                Complex z) {
  CMatrix A = S_plus.cast<Complex>();
  A.diagonal().array() -= z;
  const Eigen::PartialPivLU<CMatrix> lu(A);
  const CVector r1 = lu.solve(ybar.cast<Complex>());
  const CVector r2 = lu.solve(r1);
  return bdot(ybar.cast<Complex>(), r2);
}

Complex xi_denominator(const SampleEnsemble& ensemble, Complex z) {
  const ThetaValues tv = theta_values(ensemble, z);
  return 1.0 + z * tv.ybar_sq + z * z * tv.theta;
}

Complex xi_simplified(const SampleEnsemble& ensemble, Complex z) {
  if (!(z.imag() > 0.0)) throw std::invalid_argument("xi_simplified: need Im z > 0");
  const ThetaValues tv = theta_values(ensemble, z);
  const Complex psi = 1.0 + z * tv.ybar_sq + z * z * tv.theta;
  const Complex psi_prime = tv.ybar_sq + 2.0 * z * tv.theta + z * z * tv.theta_prime;
  if (std::abs(psi) < 1e-14 * std::max(1.0, std::abs(z) * tv.ybar_sq))
    throw SolverError("xi_simplified: vanishing denominator");
  return -1.0 / z - psi_prime / psi;
}

PinvSpectra pinv_spectra_fast(const SampleEnsemble& ensemble) {
  const int p = ensemble.p(), n = ensemble.n();
  PinvSpectra out;

  const Eigen::MatrixXd B = ensemble.companion();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
  const double cut = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                     es.eigenvalues().cwiseAbs().maxCoeff();
  out.s_plus.assign(static_cast<std::size_t>(p), 0.0);
  int idx = p - n;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()[i];
    out.s_plus[static_cast<std::size_t>(idx++)] = (lambda > cut) ? 1.0 / lambda : 0.0;
  }

  const Eigen::MatrixXd C = ensemble.Y.colwise() - ensemble.ybar;
  const Eigen::MatrixXd Bc = (C.transpose() * C) / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esc(Bc, Eigen::EigenvaluesOnly);
  const double cutc = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                      esc.eigenvalues().cwiseAbs().maxCoeff();
  out.s_tilde_plus.assign(static_cast<std::size_t>(p), 0.0);
  idx = p;
  for (Eigen::Index i = 0; i < esc.eigenvalues().size(); ++i) {
    const double lambda = esc.eigenvalues()[i];
    if (lambda > cutc) out.s_tilde_plus[static_cast<std::size_t>(--idx)] = 1.0 / lambda;
  }
  return out;
}

bool companion_degenerate(const SampleEnsemble& ensemble, double max_condition) {
  const Eigen::MatrixXd B = ensemble.companion();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  return !(lmin > 0.0) || lmax / lmin > max_condition;
}

}  // namespace pinvspec
