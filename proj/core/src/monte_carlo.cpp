#include "pinvspec/monte_carlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pinvspec/mp_solver.hpp"

namespace pinvspec {

double pairwise_sum(const double* values, std::size_t count) {
  if (count <= 8) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += values[i];
    return acc;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(values.data(), values.size());
}

SampleStats sample_stats(const std::vector<double>& values) {
  const std::size_t r = values.size();
  if (r < 2) throw std::invalid_argument("sample_stats: need at least two values");
  SampleStats s;
  s.mean = pairwise_sum(values) / static_cast<double>(r);

  std::vector<double> pow2(r), pow3(r), pow4(r);
  for (std::size_t i = 0; i < r; ++i) {
    const double d = values[i] - s.mean;
    pow2[i] = d * d;
    pow3[i] = d * d * d;
    pow4[i] = d * d * d * d;
  }
  const double m2 = pairwise_sum(pow2) / static_cast<double>(r);
  const double m3 = pairwise_sum(pow3) / static_cast<double>(r);
  const double m4 = pairwise_sum(pow4) / static_cast<double>(r);
  s.variance = pairwise_sum(pow2) / static_cast<double>(r - 1);
  s.se_mean = std::sqrt(s.variance / static_cast<double>(r));
  s.se_variance = std::sqrt(std::max(0.0, m4 - m2 * m2) / static_cast<double>(r));
  s.skewness = (m2 > 0.0) ? m3 / std::pow(m2, 1.5) : 0.0;
  s.kurtosis_excess = (m2 > 0.0) ? m4 / (m2 * m2) - 3.0 : 0.0;
  return s;
}

namespace {

struct ReplicateValue {
  double non_centered = 0.0;
  double centered = 0.0;
  int resamples = 0;
};

// g applied to the pseudoinverse spectra, from the n x n Gram forms only
ReplicateValue run_replicate(const McConfig& cfg, const std::vector<double>& taus,
                             std::uint64_t index, double centering) {
  constexpr int kMaxAttempts = 10;
  const int p = cfg.p, n = cfg.n;
  ReplicateValue rv;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::uint64_t seed = mix_seed(cfg.master_seed, index) + static_cast<std::uint64_t>(attempt);
    Eigen::MatrixXd Y = entry_sample(cfg.law, p, n, seed);
    for (int i = 0; i < p; ++i) Y.row(i) *= std::sqrt(taus[static_cast<std::size_t>(i)]);

    const Eigen::MatrixXd B = (Y.transpose() * Y) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    if (!(lmin > 0.0) || lmax / lmin > 1e12) {
      ++rv.resamples;
      continue;
    }

    const Eigen::VectorXd ybar = Y.rowwise().mean();
    const Eigen::MatrixXd C = Y.colwise() - ybar;
    const Eigen::MatrixXd Bc = (C.transpose() * C) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esc(Bc, Eigen::EigenvaluesOnly);
    const double cutc = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                        esc.eigenvalues().cwiseAbs().maxCoeff();
    int nonzero = 0;
    for (Eigen::Index i = 0; i < esc.eigenvalues().size(); ++i)
      if (esc.eigenvalues()[i] > cutc) ++nonzero;
    if (nonzero != n - 1) {
      ++rv.resamples;
      continue;
    }

    double sum_nc = static_cast<double>(p - n) * cfg.g(0.0);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      sum_nc += cfg.g(1.0 / es.eigenvalues()[i]);
    double sum_c = static_cast<double>(p - n + 1) * cfg.g(0.0);
    for (Eigen::Index i = 0; i < esc.eigenvalues().size(); ++i)
      if (esc.eigenvalues()[i] > cutc) sum_c += cfg.g(1.0 / esc.eigenvalues()[i]);

    rv.non_centered = sum_nc - centering;
    rv.centered = sum_c - centering;
    return rv;
  }
  throw std::runtime_error("mc_clt_experiment: replicate " + std::to_string(index) +
                           " degenerate after " + std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace

McResult mc_clt_experiment(const McConfig& cfg) {
  if (cfg.replications < 2) throw std::invalid_argument("mc_clt_experiment: need replications >= 2");
  if (!(cfg.p > cfg.n)) throw std::invalid_argument("mc_clt_experiment: need p > n");
  const std::vector<double> taus = cfg.H.expand_eigenvalues(cfg.p);

  const SpectralLimit proxy = finite_sample_proxy(cfg.p, cfg.n, cfg.H, cfg.proxy_grid);
  const double centering = static_cast<double>(cfg.p) * proxy.functional(cfg.g);

  const auto values =
      parallel_map(static_cast<std::size_t>(cfg.replications), cfg.threads,
                   [&](std::size_t i) { return run_replicate(cfg, taus, i, centering); });

  McResult res;
  res.proxy_value = centering;
  const std::size_t r = values.size();
  res.values_non_centered.resize(r);
  res.values_centered.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    res.values_non_centered[i] = values[i].non_centered;
    res.values_centered[i] = values[i].centered;
    res.degenerate_events += values[i].resamples;
  }
  if (res.degenerate_events > cfg.max_degenerate_fraction * cfg.replications)
    throw std::runtime_error("mc_clt_experiment: " + std::to_string(res.degenerate_events) +
                             " degenerate draws over " + std::to_string(cfg.replications) +
                             " replicates");

  res.non_centered = sample_stats(res.values_non_centered);
  res.centered = sample_stats(res.values_centered);

  std::vector<double> diff(r), var_diff(r);
  for (std::size_t i = 0; i < r; ++i) {
    diff[i] = res.values_centered[i] - res.values_non_centered[i];
    const double dn = res.values_non_centered[i] - res.non_centered.mean;
    const double dc = res.values_centered[i] - res.centered.mean;
    var_diff[i] = dn * dn - dc * dc;
  }
  const SampleStats diff_stats = sample_stats(diff);
  res.paired_diff_mean = diff_stats.mean;
  res.paired_diff_se = diff_stats.se_mean;
  res.var_diff_se = sample_stats(var_diff).se_mean;
  return res;
}

}  // namespace pinvspec
