#pragma once

#include <string>
#include <vector>

#include "ftsim/matrix.hpp"

namespace ftsim {

// Per-column ramp bounds: membership 0 at or below L, 1 at or above U.
struct FuzzyBounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct BoundsStrategy {
  enum class Kind { ZeroToColumnMax, PerColumnMinMax, GlobalMinMax, Fixed };
  Kind kind = Kind::ZeroToColumnMax;
  double fixed_lower = 0.0;
  double fixed_upper = 1.0;

  static BoundsStrategy zero_max() { return {Kind::ZeroToColumnMax}; }
  static BoundsStrategy minmax() { return {Kind::PerColumnMinMax}; }
  static BoundsStrategy global() { return {Kind::GlobalMinMax}; }
  static BoundsStrategy fixed(double lo, double hi);

  // Accepts zero-max | minmax | global | fixed:L:U.
  static BoundsStrategy parse(const std::string &text);
  std::string to_string() const;
};

FuzzyBounds compute_bounds(const CrispMatrix &m, const BoundsStrategy &s);

// Linear ramp per entry: 0 below L, 1 above U, (x-L)/(U-L) between.
// Degenerate L == U acts as an indicator at the threshold.
FuzzyMatrix fuzzify(const CrispMatrix &m, const FuzzyBounds &b);

FuzzyMatrix fuzzify(const CrispMatrix &m,
                    const BoundsStrategy &s = BoundsStrategy::zero_max());

}  // namespace ftsim
