#include <doctest.h>

#include <cmath>

#include "pinvspec/config.hpp"
#include "pinvspec/io.hpp"
#include "pinvspec/monte_carlo.hpp"

using namespace pinvspec;

TEST_CASE("config parsing") {
  const Config cfg = Config::from_string(
      "# experiment setup\n"
      "p = 200\n"
      "n=100   # trailing comment\n"
      "g = 0, 1, 0.5\n"
      "law=gaussian\n"
      "seed=42\n"
      "\n");
  CHECK(cfg.get_int("p") == 200);
  CHECK(cfg.get_int("n") == 100);
  CHECK(cfg.get_string("law") == "gaussian");
  CHECK(cfg.get_u64("seed") == 42);
  CHECK(cfg.get_doubles("g") == std::vector<double>{0.0, 1.0, 0.5});
  CHECK(cfg.get_double("missing", 3.5) == 3.5);
  CHECK_THROWS_AS(cfg.get_string("missing"), ConfigError);
  CHECK_THROWS_AS(cfg.get_double("law"), ConfigError);
  CHECK_THROWS_AS(Config::from_string("novalue\n"), ConfigError);

  SUBCASE("serialization round trip") {
    const Config again = Config::from_string(cfg.serialize());
    CHECK(again.serialize() == cfg.serialize());
    CHECK(again.get_doubles("g") == cfg.get_doubles("g"));
  }
}

TEST_CASE("population spectrum file format") {
  const std::string text =
      "# two-atom population\n"
      "1.0 0.5\n"
      "2.0 0.5  # heavier direction\n";
  const PopulationSpectrum h = parse_population_spectrum(text);
  REQUIRE(h.atoms().size() == 2);
  CHECK(h.atoms()[1].tau == 2.0);
  const PopulationSpectrum back = parse_population_spectrum(serialize_population_spectrum(h));
  CHECK(back.atoms()[0].tau == h.atoms()[0].tau);
  CHECK(back.atoms()[0].weight == h.atoms()[0].weight);
  CHECK_THROWS(parse_population_spectrum("1.0\n"));
  CHECK_THROWS(parse_population_spectrum("# only comments\n"));
}

TEST_CASE("pairwise summation is deterministic and accurate") {
  std::vector<double> values;
  double kahan = 0.0, comp = 0.0;
  for (int i = 0; i < 10001; ++i) {
    const double v = std::sin(0.1 * i) * std::exp(-i * 1e-4);
    values.push_back(v);
    const double y = v - comp;
    const double t = kahan + y;
    comp = (t - kahan) - y;
    kahan = t;
  }
  const double s1 = pairwise_sum(values);
  const double s2 = pairwise_sum(values);
  CHECK(s1 == s2);
  CHECK(s1 == doctest::Approx(kahan).epsilon(1e-13));
}

TEST_CASE("sample statistics on a known list") {
  const SampleStats s = sample_stats({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == 2.5);
  CHECK(s.variance == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(s.se_mean == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)).epsilon(1e-15));
  CHECK(s.skewness == doctest::Approx(0.0));
  CHECK(s.kurtosis_excess == doctest::Approx(2.5625 / (1.25 * 1.25) - 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(sample_stats({1.0}), std::invalid_argument);
}

TEST_CASE("parallel map gathers by index and propagates failures") {
  const auto out = parallel_map(100, 4, [](std::size_t i) { return 3.0 * i; });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == 3.0 * i);
  CHECK_THROWS_AS(parallel_map(8, 4,
                               [](std::size_t i) -> int {
                                 if (i == 5) throw std::runtime_error("boom");
                                 return 0;
                               }),
                  std::runtime_error);
}

TEST_CASE("monte carlo experiment determinism") {
  McConfig cfg;
  cfg.p = 30;
  cfg.n = 12;
  cfg.replications = 64;
  cfg.master_seed = 314;
  cfg.proxy_grid = 512;

  cfg.threads = 1;
  const McResult serial = mc_clt_experiment(cfg);
  cfg.threads = 4;
  const McResult parallel = mc_clt_experiment(cfg);

  REQUIRE(serial.values_non_centered.size() == parallel.values_non_centered.size());
  for (std::size_t i = 0; i < serial.values_non_centered.size(); ++i) {
    CHECK(serial.values_non_centered[i] == parallel.values_non_centered[i]);
    CHECK(serial.values_centered[i] == parallel.values_centered[i]);
  }
  CHECK(serial.non_centered.mean == parallel.non_centered.mean);
  CHECK(serial.non_centered.variance == parallel.non_centered.variance);
  CHECK(serial.centered.mean == parallel.centered.mean);
  CHECK(serial.proxy_value == parallel.proxy_value);

  SUBCASE("statistics recompute from the replicate values") {
    const SampleStats direct = sample_stats(serial.values_non_centered);
    CHECK(direct.mean == serial.non_centered.mean);
    CHECK(direct.variance == serial.non_centered.variance);
  }
}

TEST_CASE("degenerate replicates are resampled deterministically") {
  // tiny rademacher ensembles collide often enough to exercise the resample path
  McConfig cfg;
  cfg.p = 6;
  cfg.n = 3;
  cfg.law = EntryLaw::rademacher();
  cfg.replications = 300;
  cfg.master_seed = 2024;
  cfg.proxy_grid = 512;
  cfg.max_degenerate_fraction = 0.9;

  const McResult a = mc_clt_experiment(cfg);
  const McResult b = mc_clt_experiment(cfg);
  CHECK(a.degenerate_events > 0);
  CHECK(a.degenerate_events == b.degenerate_events);
  for (std::size_t i = 0; i < a.values_non_centered.size(); ++i)
    CHECK(a.values_non_centered[i] == b.values_non_centered[i]);

  SUBCASE("tight degeneracy budget fails loudly") {
    cfg.max_degenerate_fraction = 0.0;
    CHECK_THROWS_AS(mc_clt_experiment(cfg), std::runtime_error);
  }
}

TEST_CASE("double formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, 5.828427124746190, -2.5e-7, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
