#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftsim {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// Dense labeled matrix, row-major. Base storage for the crisp, fuzzy and
// similarity matrix types below.
struct LabeledMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<double> values;  // rows() * cols()

  std::size_t rows() const { return row_labels.size(); }
  std::size_t cols() const { return col_labels.size(); }

  double &at(std::size_t r, std::size_t c) { return values[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }

  static LabeledMatrix zeros(std::vector<std::string> row_labels,
                             std::vector<std::string> col_labels) {
    LabeledMatrix m;
    m.row_labels = std::move(row_labels);
    m.col_labels = std::move(col_labels);
    m.values.assign(m.rows() * m.cols(), 0.0);
    return m;
  }

  bool operator==(const LabeledMatrix &o) const = default;
};

// Nonnegative integer count matrix (Sentences x Documents, Words x Sentences).
using CrispMatrix = LabeledMatrix;

// Membership-degree matrix, entries in [0,1].
using FuzzyMatrix = LabeledMatrix;

// Square, symmetric, unit-diagonal membership matrix over one label set.
struct SimilarityMatrix {
  std::vector<std::string> labels;
  std::vector<double> values;  // n * n

  std::size_t size() const { return labels.size(); }

  double &at(std::size_t l, std::size_t m) { return values[l * size() + m]; }
  double at(std::size_t l, std::size_t m) const { return values[l * size() + m]; }

  bool operator==(const SimilarityMatrix &o) const = default;
};

}  // namespace ftsim
