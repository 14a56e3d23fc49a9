// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace scatkern {

// Neumaier-compensated accumulator.  Summation order still matters for
// bit-reproducibility; callers must feed terms in a fixed order.
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace scatkern
