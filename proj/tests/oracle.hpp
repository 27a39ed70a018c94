#pragma once

// Independent brute-force evaluation of the triadic updates: full fixed-order
// nested loops over every index pair, no sparsity, no shared code with the
// engine's update kernels. Used as the reference the fast path is checked
// against.

#include <algorithm>
#include <cmath>
#include <vector>

#include "ftsim/matrix.hpp"

namespace oracle {

inline std::vector<double> normalize_raw(const std::vector<double> &raw,
                                         std::size_t n) {
  std::vector<double> out(n * n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = l + 1; m < n; ++m) {
      const double dl = raw[l * n + l], dm = raw[m * n + m];
      double v = 0.0;
      if (dl > 0.0 && dm > 0.0) {
        v = raw[l * n + m] / std::sqrt(dl * dm);
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
      }
      out[l * n + m] = v;
      out[m * n + l] = v;
    }
    out[l * n + l] = 1.0;
  }
  return out;
}

// Documents are columns of SDf: raw[l][m] = sum_i sum_j min(SDf[i][l], SDf[j][m]) * S2[i][j].
inline std::vector<double> doc_update(const ftsim::FuzzyMatrix &sdf,
                                      const ftsim::SimilarityMatrix &s2) {
  const std::size_t I = sdf.cols(), J = sdf.rows();
  std::vector<double> raw(I * I, 0.0);
  for (std::size_t l = 0; l < I; ++l)
    for (std::size_t m = l; m < I; ++m) {
      double acc = 0.0;
      for (std::size_t i = 0; i < J; ++i)
        for (std::size_t j = 0; j < J; ++j)
          acc += std::min(sdf.at(i, l), sdf.at(j, m)) * s2.at(i, j);
      raw[l * I + m] = acc;
      raw[m * I + l] = acc;
    }
  return raw;
}

// Words are rows of WSf.
inline std::vector<double> word_update(const ftsim::FuzzyMatrix &wsf,
                                       const ftsim::SimilarityMatrix &s2) {
  const std::size_t K = wsf.rows(), J = wsf.cols();
  std::vector<double> raw(K * K, 0.0);
  for (std::size_t l = 0; l < K; ++l)
    for (std::size_t m = l; m < K; ++m) {
      double acc = 0.0;
      for (std::size_t i = 0; i < J; ++i)
        for (std::size_t j = 0; j < J; ++j)
          acc += std::min(wsf.at(l, i), wsf.at(m, j)) * s2.at(i, j);
      raw[l * K + m] = acc;
      raw[m * K + l] = acc;
    }
  return raw;
}

// Sentence update: document side over rows of SDf, word side over columns of
// WSf, each normalized, combined with the entrywise minimum, diagonal 1.
inline std::vector<double> sentence_update(const ftsim::FuzzyMatrix &sdf,
                                           const ftsim::FuzzyMatrix &wsf,
                                           const ftsim::SimilarityMatrix &d2,
                                           const ftsim::SimilarityMatrix &w2) {
  const std::size_t J = sdf.rows(), I = sdf.cols(), K = wsf.rows();
  std::vector<double> raw_d(J * J, 0.0), raw_w(J * J, 0.0);
  for (std::size_t l = 0; l < J; ++l)
    for (std::size_t m = l; m < J; ++m) {
      double acc = 0.0;
      for (std::size_t i = 0; i < I; ++i)
        for (std::size_t j = 0; j < I; ++j)
          acc += std::min(sdf.at(l, i), sdf.at(m, j)) * d2.at(i, j);
      raw_d[l * J + m] = acc;
      raw_d[m * J + l] = acc;
      acc = 0.0;
      for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j)
          acc += std::min(wsf.at(i, l), wsf.at(j, m)) * w2.at(i, j);
      raw_w[l * J + m] = acc;
      raw_w[m * J + l] = acc;
    }
  auto nd = normalize_raw(raw_d, J);
  auto nw = normalize_raw(raw_w, J);
  std::vector<double> out(J * J);
  for (std::size_t i = 0; i < J * J; ++i) out[i] = std::min(nd[i], nw[i]);
  for (std::size_t l = 0; l < J; ++l) out[l * J + l] = 1.0;
  return out;
}

}  // namespace oracle
