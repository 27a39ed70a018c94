#pragma once

#include <optional>
#include <vector>

#include "ftsim/matrix.hpp"

namespace ftsim {

struct RunConfig {
  int max_iterations = 4;
  double epsilon = 1e-4;  // 0 disables early stop
};

struct IterationStats {
  double delta = 0.0;         // max absolute entry change across D2/S2/W2
  double wall_seconds = 0.0;
};

struct RunReport {
  std::vector<IterationStats> iterations;
  double total_seconds = 0.0;
};

struct TriadicState {
  SimilarityMatrix d2;
  SimilarityMatrix s2;
  SimilarityMatrix w2;
  int t = 0;
  std::vector<double> deltas;
};

SimilarityMatrix identity_similarity(const std::vector<std::string> &labels);

// Self-similarity normalization: out[l][m] = raw[l][m] / sqrt(raw[l][l]*raw[m][m]),
// clamped to [0,1], diagonal 1. A zero diagonal (featureless object) zeroes its
// row and column.
SimilarityMatrix normalize(const std::vector<std::string> &labels,
                           const std::vector<double> &raw);

// One synchronous update each. Documents are columns of SDf, words are rows of
// WSf, sentences are rows of SDf / columns of WSf.
SimilarityMatrix doc_update(const FuzzyMatrix &sdf, const SimilarityMatrix &s2,
                            int threads = 1);
SimilarityMatrix word_update(const FuzzyMatrix &wsf, const SimilarityMatrix &s2,
                             int threads = 1);
SimilarityMatrix sentence_update(const FuzzyMatrix &sdf, const FuzzyMatrix &wsf,
                                 const SimilarityMatrix &d2,
                                 const SimilarityMatrix &w2, int threads = 1);

// All three updates read only the previous state; delta is recorded on the
// returned state.
TriadicState ft_sim_iterate(const TriadicState &state, const FuzzyMatrix &sdf,
                            const FuzzyMatrix &wsf, int threads = 1);

// Runs from identity (or a caller-provided initial D2) until t == T or
// delta < epsilon.
std::pair<TriadicState, RunReport> ft_sim_run(
    const FuzzyMatrix &sdf, const FuzzyMatrix &wsf, const RunConfig &cfg,
    int threads = 1, const std::optional<SimilarityMatrix> &initial_d2 = std::nullopt);

}  // namespace ftsim
