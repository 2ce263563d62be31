#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>

#include "diagx/errors.hpp"

namespace diagx {

/// One tolerance knob: either an absolute value or a coefficient applied
/// to a problem-scaled base (n * eps * scale for clustering and zero
/// detection, max(m,n) * eps * sigma_1 for rank).
struct Threshold {
  enum class Kind { Relative, Absolute };

  Kind kind = Kind::Relative;
  double value = 1.0;

  static Threshold relative(double coefficient) {
    if (!(coefficient > 0)) throw DimensionError("relative coefficient must be positive");
    return {Kind::Relative, coefficient};
  }

  static Threshold absolute(double v) {
    if (!(v > 0)) throw DimensionError("absolute threshold must be positive");
    return {Kind::Absolute, v};
  }

  /// Resolve against a base scale.  Always strictly positive and finite so
  /// downstream comparisons never divide by zero or accept NaN.
  double resolve(double base) const {
    double r = kind == Kind::Relative ? value * base : value;
    return std::max(r, std::numeric_limits<double>::min());
  }
};

/// Threshold triple used by every classification entry point.
struct TolerancePolicy {
  Threshold zero = Threshold::relative(100.0);
  Threshold cluster = Threshold::relative(100.0);
  Threshold rank = Threshold::relative(1.0);

  double resolved_zero(std::size_t n, double scale) const {
    return zero.resolve(static_cast<double>(n) *
                        std::numeric_limits<double>::epsilon() * scale);
  }

  double resolved_cluster(std::size_t n, double scale) const {
    return cluster.resolve(static_cast<double>(n) *
                           std::numeric_limits<double>::epsilon() * scale);
  }

  double resolved_rank(std::size_t rows, std::size_t cols, double sigma1) const {
    return rank.resolve(static_cast<double>(std::max(rows, cols)) *
                        std::numeric_limits<double>::epsilon() * sigma1);
  }
};

/// Concrete thresholds after resolution against one matrix.
struct ResolvedPolicy {
  double zero_threshold = 0.0;
  double cluster_threshold = 0.0;
  double rank_threshold = 0.0;
  double scale = 0.0;  // spectral-norm estimate the relative forms used
};

}  // namespace diagx
