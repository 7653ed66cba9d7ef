#include <doctest.h>

#include <cmath>
#include <complex>

#include "pinvspec/ensemble.hpp"
#include "pinvspec/mp_solver.hpp"
#include "support/oracles.hpp"

using namespace pinvspec;
using oracles::Rng;

namespace {
const PopulationSpectrum kIso = PopulationSpectrum::point_mass(1.0);

Eigen::MatrixXd random_psd(int p, int rank, Rng& rng) {
  Eigen::MatrixXd g(p, rank);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = rng.uniform(-1.0, 1.0);
  return g * g.transpose();
}
}  // namespace

TEST_CASE("build_ensemble") {
  SUBCASE("identity population gives S = XX'/n exactly") {
    const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, 12, 6, 21);
    const Eigen::MatrixXd direct = (e.Y * e.Y.transpose()) / 6.0;
    CHECK((e.S - direct).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("column means of the centered data vanish") {
    const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, 15, 7, 4);
    const Eigen::MatrixXd centered = e.Y.colwise() - e.ybar;
    CHECK(centered.rowwise().mean().cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("trace identity for the rank-one downdate") {
    const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, 25, 10, 8);
    CHECK(e.S_tilde.trace() ==
          doctest::Approx(e.S.trace() - e.ybar.squaredNorm()).epsilon(1e-12));
  }
  SUBCASE("population weights must expand to p eigenvalues") {
    const PopulationSpectrum h({{1.0, 1.0 / 3.0}, {2.0, 2.0 / 3.0}});
    CHECK_NOTHROW(build_ensemble(EntryLaw::gaussian(), h, 9, 4, 1));
    CHECK_THROWS_AS(build_ensemble(EntryLaw::gaussian(), h, 10, 4, 1), std::invalid_argument);
  }
  SUBCASE("diagonal population scales rows") {
    const PopulationSpectrum h({{4.0, 1.0}});
    const SampleEnsemble e = build_ensemble(EntryLaw::rademacher(), h, 6, 3, 5);
    CHECK((e.Y.array().abs() - 2.0).abs().maxCoeff() < 1e-15);
  }
  SUBCASE("deterministic per seed") {
    const SampleEnsemble a = build_ensemble(EntryLaw::gaussian(), kIso, 8, 4, 11);
    const SampleEnsemble b = build_ensemble(EntryLaw::gaussian(), kIso, 8, 4, 11);
    CHECK((a.Y - b.Y).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(build_ensemble(EntryLaw::gaussian(), kIso, 4, 4, 1), std::invalid_argument);
}

TEST_CASE("pseudoinverse of symmetric PSD matrices") {
  SUBCASE("diagonal inversion on the support") {
    Eigen::MatrixXd d = Eigen::Vector3d(2.0, 0.0, 0.0).asDiagonal();
    const Eigen::MatrixXd dp = pseudoinverse(d);
    CHECK((dp - Eigen::MatrixXd(Eigen::Vector3d(0.5, 0.0, 0.0).asDiagonal())).norm() < 1e-14);
  }
  SUBCASE("identity maps to identity") {
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(5, 5);
    CHECK((pseudoinverse(eye) - eye).norm() < 1e-14);
  }
  SUBCASE("first criterion on a random rank-3 matrix") {
    Rng rng(31);
    const Eigen::MatrixXd a = random_psd(6, 3, rng);
    const Eigen::MatrixXd ap = pseudoinverse(a);
    CHECK((a * ap * a - a).norm() < 1e-10);
  }
  SUBCASE("all four criteria over random ranks") {
    Rng rng(32);
    for (int rep = 0; rep < 20; ++rep) {
      const int p = rng.uniform_int(2, 12);
      const int rank = rng.uniform_int(1, p);
      const Eigen::MatrixXd a = random_psd(p, rank, rng);
      const auto r = penrose_residuals(a, pseudoinverse(a));
      for (double v : r) CHECK(v < 1e-9);
    }
  }
  SUBCASE("non-symmetric input rejected") {
    Eigen::MatrixXd a(2, 2);
    a << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(pseudoinverse(a), std::invalid_argument);
  }
  SUBCASE("zero matrix maps to zero") {
    CHECK(pseudoinverse(Eigen::MatrixXd::Zero(3, 3)).norm() == 0.0);
  }
}

TEST_CASE("rank-one pseudoinverse downdate") {
  const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, 80, 40, 17);
  const PinvPair pair = pinv_pair(e);

  SUBCASE("matches the directly computed pseudoinverse") {
    const Eigen::MatrixXd updated = pinv_rank_one_update(pair.S_plus, e.ybar);
    CHECK((updated - pair.S_tilde_plus).norm() / pair.S_tilde_plus.norm() < 1e-8);
  }
  SUBCASE("difference has numerical rank two") {
    CHECK(rank_two_defect(pair.S_plus - pair.S_tilde_plus) < 1e-8);
  }
  SUBCASE("rank-two factored form reproduces the difference") {
    const Eigen::VectorXd u = pair.S_plus * e.ybar;
    const Eigen::VectorXd v = pair.S_plus * u;
    const double uu = u.squaredNorm(), uv = u.dot(v);
    const Eigen::VectorXd w = std::sqrt(uv / uu) * u - std::sqrt(uu / uv) * v;
    const Eigen::MatrixXd rank2 = (v * v.transpose()) / uv - (w * w.transpose()) / uu;
    const Eigen::MatrixXd diff = pair.S_plus - pair.S_tilde_plus;
    CHECK((rank2 - diff).norm() / diff.norm() < 1e-8);
  }
  SUBCASE("perturbed pair fails the rank-two check") {
    Rng rng(77);
    Eigen::MatrixXd corrupted = pair.S_tilde_plus;
    for (int i = 0; i < corrupted.rows(); ++i)
      for (int j = 0; j <= i; ++j) {
        const double bump = 1e-3 * rng.uniform(-1.0, 1.0);
        corrupted(i, j) += bump;
        if (i != j) corrupted(j, i) += bump;
      }
    CHECK(rank_two_defect(pair.S_plus - corrupted) > 1e-8);
  }
  SUBCASE("degenerate direction falls back to the direct pseudoinverse") {
    Eigen::MatrixXd s = Eigen::Vector2d(1.0, 0.0).asDiagonal();
    const Eigen::MatrixXd sp = pseudoinverse(s);
    const Eigen::VectorXd ortho = Eigen::Vector2d(0.0, 1.0);
    const Eigen::MatrixXd expected = pseudoinverse(Eigen::MatrixXd(s - ortho * ortho.transpose()));
    CHECK((pinv_rank_one_update(sp, ortho) - expected).norm() < 1e-12);
  }
}

TEST_CASE("ybar quadratic form is one in the rank-deficient regime") {
  const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, 30, 10, 9);
  const Eigen::MatrixXd sp = pseudoinverse(e.S);
  CHECK(ybar_unit_form(sp, e.ybar) == doctest::Approx(1.0).epsilon(1e-10));

  SUBCASE("scale invariance") {
    const Eigen::MatrixXd s2 = 4.0 * e.S;  // Y scaled by 2
    CHECK(ybar_unit_form(pseudoinverse(s2), 2.0 * e.ybar) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("fails when p < n") {
    const Eigen::MatrixXd x = entry_sample(EntryLaw::gaussian(), 10, 30, 12);
    const Eigen::VectorXd ybar = x.rowwise().mean();
    Eigen::MatrixXd s = (x * x.transpose()) / 30.0;
    s = 0.5 * (s + s.transpose()).eval();
    CHECK(std::abs(ybar_unit_form(pseudoinverse(s), ybar) - 1.0) > 1e-3);
  }
}

TEST_CASE("empirical Stieltjes transform") {
  SUBCASE("single atom") {
    const Complex v = empirical_stieltjes(EmpiricalSpectrum({1.0}), {0.0, 1.0});
    CHECK(std::abs(v - Complex(0.5, 0.5)) < 1e-15);
  }
  SUBCASE("real z on an eigenvalue rejected") {
    CHECK_THROWS_AS(empirical_stieltjes(EmpiricalSpectrum({1.0, 2.0}), {2.0, 0.0}),
                    std::invalid_argument);
    CHECK_NOTHROW(empirical_stieltjes(EmpiricalSpectrum({1.0, 2.0}), {3.0, 0.0}));
  }
}

TEST_CASE("relocation identity between pseudoinverse and companion spectra") {
  SUBCASE("sampled ensembles") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, 30, 12, seed);
      const PinvPair pair = pinv_pair(e);
      const EmpiricalSpectrum splus =
          spectrum_of_clamped(pair.S_plus, pseudoinverse_cutoff(pair.S_plus));
      const EmpiricalSpectrum comp = spectrum_of(e.companion());
      Rng rng(100 + seed);
      for (int k = 0; k < 10; ++k) {
        const Complex z(rng.uniform(-2.0, 2.0), rng.uniform(0.1, 2.0));
        const Complex lhs = empirical_stieltjes(splus, z);
        const Complex rhs = -1.0 / z - (12.0 / 30.0) / (z * z) *
                                          empirical_stieltjes(comp, 1.0 / z);
        CHECK(std::abs(lhs - rhs) < 1e-10);
      }
    }
  }
  SUBCASE("scalar case") {
    // Y = (1): the pseudoinverse spectrum and companion spectrum are both {1}
    const Complex z{0.0, 2.0};
    const Complex lhs = empirical_stieltjes(EmpiricalSpectrum({1.0}), z);
    const Complex rhs =
        -1.0 / z - 1.0 / (z * z) * empirical_stieltjes(EmpiricalSpectrum({1.0}), 1.0 / z);
    CHECK(std::abs(lhs - rhs) < 1e-14);
    CHECK(std::abs(lhs - 1.0 / (1.0 - z)) < 1e-14);
  }
}

TEST_CASE("zero eigenvalue count matches the kernel dimension") {
  for (std::uint64_t seed : {5ULL, 6ULL}) {
    const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, 24, 9, seed);
    const PinvPair pair = pinv_pair(e);
    const auto spec = spectrum_of_clamped(pair.S_plus, pseudoinverse_cutoff(pair.S_plus));
    CHECK(zero_eigenvalue_count(spec, 0.0) == 24 - 9);
    const auto spec_t =
        spectrum_of_clamped(pair.S_tilde_plus, pseudoinverse_cutoff(pair.S_tilde_plus));
    CHECK(zero_eigenvalue_count(spec_t, 0.0) == 24 - 9 + 1);
  }
}

TEST_CASE("fast pseudoinverse spectra agree with the direct route") {
  const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, 40, 16, 23);
  const PinvPair pair = pinv_pair(e);
  const PinvSpectra fast = pinv_spectra_fast(e);

  const EmpiricalSpectrum direct_s =
      spectrum_of_clamped(pair.S_plus, pseudoinverse_cutoff(pair.S_plus));
  const EmpiricalSpectrum fast_s{std::vector<double>(fast.s_plus)};
  REQUIRE(direct_s.dimension() == fast_s.dimension());
  for (int i = 0; i < direct_s.dimension(); ++i)
    CHECK(direct_s.eigenvalues()[i] ==
          doctest::Approx(fast_s.eigenvalues()[i]).epsilon(1e-10));

  const EmpiricalSpectrum direct_t =
      spectrum_of_clamped(pair.S_tilde_plus, pseudoinverse_cutoff(pair.S_tilde_plus));
  const EmpiricalSpectrum fast_t{std::vector<double>(fast.s_tilde_plus)};
  REQUIRE(direct_t.dimension() == fast_t.dimension());
  for (int i = 0; i < direct_t.dimension(); ++i)
    CHECK(direct_t.eigenvalues()[i] ==
          doctest::Approx(fast_t.eigenvalues()[i]).epsilon(1e-10));
}

TEST_CASE("ks bound and rank-two defect hold pathwise over seeds") {
  for (int p : {10, 20, 50}) {
    const int n = p / 2;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, p, n, 900 + seed);
      const PinvPair pair = pinv_pair(e);
      const auto s1 = spectrum_of_clamped(pair.S_plus, pseudoinverse_cutoff(pair.S_plus));
      const auto s2 =
          spectrum_of_clamped(pair.S_tilde_plus, pseudoinverse_cutoff(pair.S_tilde_plus));
      CHECK(ks_distance(s1, s2) <= 2.0 / p + 1e-15);
      CHECK(rank_two_defect(pair.S_plus - pair.S_tilde_plus) <= 1e-8);
    }
  }
}

TEST_CASE("resolvent correction terms") {
  const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, 50, 20, 2718);
  const PinvPair pair = pinv_pair(e);
  const EmpiricalSpectrum splus =
      spectrum_of_clamped(pair.S_plus, pseudoinverse_cutoff(pair.S_plus));
  const EmpiricalSpectrum stplus =
      spectrum_of_clamped(pair.S_tilde_plus, pseudoinverse_cutoff(pair.S_tilde_plus));

  SUBCASE("direct form equals the resolvent trace difference") {
    Rng rng(41);
    for (int k = 0; k < 10; ++k) {
      const Complex z(rng.uniform(-1.5, 1.5), rng.uniform(0.2, 2.0));
      const Complex xi = xi_direct(pair, e.ybar, z);
      const Complex trace_diff =
          50.0 * (empirical_stieltjes(stplus, z) - empirical_stieltjes(splus, z));
      CHECK(std::abs(xi - trace_diff) < 1e-8);
    }
  }
  SUBCASE("direct and scalar representations agree") {
    Rng rng(43);
    for (int k = 0; k < 20; ++k) {
      const Complex z(rng.uniform(-2.0, 2.0), rng.uniform(0.15, 2.5));
      CHECK(std::abs(xi_direct(pair, e.ybar, z) - xi_simplified(e, z)) < 1e-8);
    }
  }
  SUBCASE("rank-two trace perturbation bound far from the spectrum") {
    const Complex z{0.0, 10.0};
    CHECK(std::abs(xi_direct(pair, e.ybar, z)) < 4.0 / 10.0);
  }
  SUBCASE("scalar identity and large-|z| decay") {
    const Complex z{1000.0, 1000.0};
    const Complex xi = xi_simplified(e, z);
    const Complex theta = theta_n(e, z);
    const Complex theta_p = theta_n_derivative(e, z);
    const double ybar2 = e.ybar.squaredNorm();
    const Complex psi = 1.0 + z * ybar2 + z * z * theta;
    const Complex psi_p = ybar2 + 2.0 * z * theta + z * z * theta_p;
    CHECK(std::abs(xi + 1.0 / z + psi_p / psi) < 1e-12);
    // xi decays like 1/z^2, so z^2 xi stays bounded by the trace difference
    CHECK(std::abs(z * z * xi) < 10.0);
  }
}

TEST_CASE("theta representation against direct resolvent forms") {
  const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, 40, 15, 31415);
  const Eigen::MatrixXd sp = pseudoinverse(e.S);
  Rng rng(59);
  for (int k = 0; k < 10; ++k) {
    const Complex z(rng.uniform(-2.0, 2.0), rng.uniform(0.1, 2.0));
    CHECK(std::abs(theta_n(e, z) - theta_direct(sp, e.ybar, z)) < 1e-10);
    CHECK(std::abs(theta_n_derivative(e, z) - theta_direct_derivative(sp, e.ybar, z)) < 1e-10);
  }
  SUBCASE("leading resolvent term at large |z|") {
    const Complex z{0.0, 1e4};
    CHECK(std::abs(theta_n(e, z) * z + e.ybar.squaredNorm()) < 1e-3);
  }
  SUBCASE("scalar ensemble closed form") {
    SampleEnsemble tiny;
    tiny.Y = Eigen::MatrixXd(2, 1);
    tiny.Y << 1.0, 2.0;
    tiny.ybar = tiny.Y.col(0);
    tiny.S = tiny.Y * tiny.Y.transpose();
    tiny.S_tilde = tiny.S - tiny.ybar * tiny.ybar.transpose();
    const double norm2 = 5.0;  // |Y|^2
    const Complex z{0.3, 0.8};
    const Complex expected = norm2 / (1.0 / norm2 - z);
    CHECK(std::abs(theta_n(tiny, z) - expected) < 1e-12);
  }
}

TEST_CASE("xi converges to its deterministic limit") {
  // c = 2 ladder in n; the limit is m'(1/z) / (z^2 m(1/z)). The per-path
  // fluctuation decays like n^{-1/2} while the bias of the seed-average
  // vanishes faster; both are checked here, the full 50-seed acceptance
  // ladder lives in the acceptance suite.
  const Complex z{0.5, 0.5};
  const Complex w = 1.0 / z;
  const Complex limit =
      companion_derivative_any(w, 2.0, kIso) / (z * z * companion_any(w, 2.0, kIso));

  const auto run = [&](int n, double* median_err, double* bias) {
    std::vector<double> errs;
    Complex mean{0.0, 0.0};
    for (std::uint64_t seed = 0; seed < 21; ++seed) {
      const SampleEnsemble e =
          build_ensemble(EntryLaw::gaussian(), kIso, 2 * n, n, 5000 + seed);
      const Complex xi = xi_simplified(e, z);
      errs.push_back(std::abs(xi - limit));
      mean += xi;
    }
    std::sort(errs.begin(), errs.end());
    *median_err = errs[errs.size() / 2];
    *bias = std::abs(mean / 21.0 - limit);
  };

  double e100, b100, e400, b400;
  run(100, &e100, &b100);
  run(400, &e400, &b400);
  CHECK(e400 < e100);
  CHECK(e400 < 0.15);
  CHECK(b400 < 0.06);
}
