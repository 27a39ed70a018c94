#include "ftsim/fuzzy.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ftsim {

BoundsStrategy BoundsStrategy::fixed(double lo, double hi) {
  if (lo > hi) throw Error("fixed bounds require L <= U");
  BoundsStrategy s;
  s.kind = Kind::Fixed;
  s.fixed_lower = lo;
  s.fixed_upper = hi;
  return s;
}

BoundsStrategy BoundsStrategy::parse(const std::string &text) {
  if (text == "zero-max") return zero_max();
  if (text == "minmax") return minmax();
  if (text == "global") return global();
  if (text.rfind("fixed:", 0) == 0) {
    std::istringstream ss(text.substr(6));
    double lo, hi;
    char sep;
    if (ss >> lo >> sep >> hi && sep == ':' && ss.eof()) return fixed(lo, hi);
    throw Error("cannot parse bounds strategy '" + text + "', expected fixed:L:U");
  }
  throw Error("unknown bounds strategy '" + text + "'");
}

std::string BoundsStrategy::to_string() const {
  switch (kind) {
    case Kind::ZeroToColumnMax: return "zero-max";
    case Kind::PerColumnMinMax: return "minmax";
    case Kind::GlobalMinMax: return "global";
    case Kind::Fixed: {
      std::ostringstream ss;
      ss << "fixed:" << fixed_lower << ":" << fixed_upper;
      return ss.str();
    }
  }
  return "?";
}

FuzzyBounds compute_bounds(const CrispMatrix &m, const BoundsStrategy &s) {
  if (m.rows() == 0 || m.cols() == 0) throw Error("compute_bounds: empty matrix");
  const std::size_t n = m.cols();
  FuzzyBounds b;
  b.lower.assign(n, 0.0);
  b.upper.assign(n, 0.0);
  switch (s.kind) {
    case BoundsStrategy::Kind::ZeroToColumnMax:
      for (std::size_t c = 0; c < n; ++c) {
        double hi = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) hi = std::max(hi, m.at(r, c));
        b.upper[c] = hi;
      }
      break;
    case BoundsStrategy::Kind::PerColumnMinMax:
      for (std::size_t c = 0; c < n; ++c) {
        double lo = m.at(0, c), hi = m.at(0, c);
        for (std::size_t r = 1; r < m.rows(); ++r) {
          lo = std::min(lo, m.at(r, c));
          hi = std::max(hi, m.at(r, c));
        }
        b.lower[c] = lo;
        b.upper[c] = hi;
      }
      break;
    case BoundsStrategy::Kind::GlobalMinMax: {
      double lo = m.values[0], hi = m.values[0];
      for (double v : m.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      std::fill(b.lower.begin(), b.lower.end(), lo);
      std::fill(b.upper.begin(), b.upper.end(), hi);
      break;
    }
    case BoundsStrategy::Kind::Fixed:
      std::fill(b.lower.begin(), b.lower.end(), s.fixed_lower);
      std::fill(b.upper.begin(), b.upper.end(), s.fixed_upper);
      break;
  }
  return b;
}

FuzzyMatrix fuzzify(const CrispMatrix &m, const FuzzyBounds &b) {
  if (b.lower.size() != m.cols() || b.upper.size() != m.cols())
    throw Error("fuzzify: bounds do not cover every column");
  FuzzyMatrix out = m;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const double lo = b.lower[c], hi = b.upper[c];
    if (lo > hi) throw Error("fuzzify: L > U on column " + std::to_string(c));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const double x = m.at(r, c);
      double mu;
      if (x >= hi) mu = 1.0;
      else if (x <= lo) mu = 0.0;
      else mu = (x - lo) / (hi - lo);
      out.at(r, c) = mu;
    }
  }
  return out;
}

FuzzyMatrix fuzzify(const CrispMatrix &m, const BoundsStrategy &s) {
  return fuzzify(m, compute_bounds(m, s));
}

}  // namespace ftsim
