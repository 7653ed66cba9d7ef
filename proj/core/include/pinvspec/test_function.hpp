#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace pinvspec {

// Real polynomial test function, coefficients in ascending degree.
// Polynomials are entire, so they are analytic on any contour, and their
// derivatives are exact coefficient algebra.
class TestFunction {
 public:
  explicit TestFunction(std::vector<double> coefficients)
      : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw std::invalid_argument("TestFunction: empty coefficient list");
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  }

  static TestFunction monomial(int degree, double scale = 1.0) {
    if (degree < 0) throw std::invalid_argument("TestFunction: negative degree");
    std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = scale;
    return TestFunction(std::move(c));
  }

  template <class T>
  T operator()(T x) const {
    T acc = T(coeffs_.back());
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it)
      acc = acc * x + T(*it);
    return acc;
  }

  TestFunction derivative() const {
    if (coeffs_.size() == 1) return TestFunction({0.0});
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return TestFunction(std::move(d));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

 private:
  std::vector<double> coeffs_;
};

}  // namespace pinvspec
