#pragma once

#include <cstdint>
#include <Eigen/Core>

namespace pinvspec {

enum class EntryFamily { gaussian, rademacher, three_point };

// Standardized entry distribution (mean 0, variance 1 by construction) with a
// configurable fourth moment:
//   gaussian     E X^4 = 3
//   rademacher   E X^4 = 1
//   three_point  P(+-b) = q, P(0) = 1 - 2q, b = (2q)^{-1/2}, E X^4 = 1/(2q)
class EntryLaw {
 public:
  static EntryLaw gaussian() { return EntryLaw(EntryFamily::gaussian, 0.0); }
  static EntryLaw rademacher() { return EntryLaw(EntryFamily::rademacher, 0.0); }
  static EntryLaw three_point(double q);

  EntryFamily family() const { return family_; }
  double q() const { return q_; }
  double fourth_moment() const;
  double kurtosis_excess() const { return fourth_moment() - 3.0; }
  const char* name() const;

 private:
  EntryLaw(EntryFamily f, double q) : family_(f), q_(q) {}
  EntryFamily family_;
  double q_;
};

// i.i.d. matrix draw, deterministic for fixed (law, rows, cols, seed).
// Entries are generated column by column to match Eigen's storage order.
Eigen::MatrixXd entry_sample(const EntryLaw& law, int rows, int cols, std::uint64_t seed);

// Streaming per-entry sampler, used where a full matrix is not wanted.
class EntrySampler {
 public:
  EntrySampler(const EntryLaw& law, std::uint64_t seed);
  double next();

 private:
  double next_uniform();   // in (0, 1)
  double next_gaussian();  // Box-Muller with cached spare

  EntryLaw law_;
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pinvspec
