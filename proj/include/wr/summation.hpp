#pragma once

#include <cmath>

namespace wr {

/// Neumaier's compensated accumulator. Sums of ~1e6 terms keep all the
/// digits that a double can represent for the running total, which the
/// n^2 edge-pair sums and quadrature block reductions rely on.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double v) : sum_(v) {}

  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }

  /// Merge another accumulator (deterministic when merged in fixed order).
  void merge(const CompensatedSum& o) {
    add(o.sum_);
    comp_ += o.comp_;
  }

  double result() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace wr
