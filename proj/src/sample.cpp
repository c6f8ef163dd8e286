#include "ginibias/sample.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ginibias {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw std::invalid_argument("sample needs at least two observations");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("sample value " + std::to_string(i) +
                                  " is negative or not finite");
    }
    sum_ += v;
  }
}

Sample Sample::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("scale factor must be positive and finite");
  }
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return Sample(std::move(out));
}

Sample Sample::shifted(double shift) const {
  if (!(shift >= 0.0) || !std::isfinite(shift)) {
    throw std::invalid_argument("shift must be nonnegative and finite");
  }
  std::vector<double> out(values_);
  for (double& v : out) v += shift;
  return Sample(std::move(out));
}

}  // namespace ginibias
