#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ginibias {

/// An observed sample X_1..X_n: at least two finite, nonnegative values.
class Sample {
 public:
  /// Throws std::invalid_argument if n < 2 or any value is negative or NaN.
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double sum() const noexcept { return sum_; }
  double mean() const noexcept { return sum_ / static_cast<double>(values_.size()); }

  /// Copy with every value multiplied by factor > 0.
  Sample scaled(double factor) const;
  /// Copy with shift >= 0 added to every value.
  Sample shifted(double shift) const;

 private:
  std::vector<double> values_;
  double sum_ = 0.0;
};

}  // namespace ginibias
