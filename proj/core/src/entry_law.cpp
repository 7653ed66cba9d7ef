#include "pinvspec/entry_law.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pinvspec/seeding.hpp"

namespace pinvspec {

EntryLaw EntryLaw::three_point(double q) {
  if (!(q > 0.0) || q > 0.5)
    throw std::invalid_argument("EntryLaw::three_point: q must lie in (0, 1/2]");
  return EntryLaw(EntryFamily::three_point, q);
}

double EntryLaw::fourth_moment() const {
  switch (family_) {
    case EntryFamily::gaussian: return 3.0;
    case EntryFamily::rademacher: return 1.0;
    case EntryFamily::three_point: return 1.0 / (2.0 * q_);
  }
  return 3.0;
}

const char* EntryLaw::name() const {
  switch (family_) {
    case EntryFamily::gaussian: return "gaussian";
    case EntryFamily::rademacher: return "rademacher";
    case EntryFamily::three_point: return "three_point";
  }
  return "gaussian";
}

EntrySampler::EntrySampler(const EntryLaw& law, std::uint64_t seed)
    : law_(law), state_(seed) {}

double EntrySampler::next_uniform() {
  state_ += 0x9e3779b97f4a7c15ULL;
  const std::uint64_t bits = splitmix64(state_);
  // 53-bit mantissa, shifted into the open interval (0, 1)
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double EntrySampler::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double EntrySampler::next() {
  switch (law_.family()) {
    case EntryFamily::gaussian:
      return next_gaussian();
    case EntryFamily::rademacher:
      // sign of a standard normal draw; keeps paired runs on the same
      // uniform stream coupled draw-for-draw
      return next_gaussian() < 0.0 ? -1.0 : 1.0;
    case EntryFamily::three_point: {
      const double q = law_.q();
      const double b = 1.0 / std::sqrt(2.0 * q);
      const double u = next_uniform();
      if (u < q) return b;
      if (u < 2.0 * q) return -b;
      return 0.0;
    }
  }
  return 0.0;
}

Eigen::MatrixXd entry_sample(const EntryLaw& law, int rows, int cols, std::uint64_t seed) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("entry_sample: rows and cols must be >= 1");
  EntrySampler sampler(law, seed);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = sampler.next();
  return m;
}

}  // namespace pinvspec
