#pragma once

#include <cmath>

namespace rootgas {

/// Neumaier compensated accumulator. Order-dependent only through the order
/// of add() calls, so a fixed loop order gives bit-stable results.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace rootgas
