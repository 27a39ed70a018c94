#pragma once

#include <cstdint>
#include <vector>

#include "ftsim/engine.hpp"
#include "ftsim/matrix.hpp"

namespace ftsim {

// One data source: local fuzzy relations plus its own engine state.
struct Site {
  int id = 0;
  FuzzyMatrix sdf;  // sentences x documents
  FuzzyMatrix wsf;  // words x sentences
  std::vector<std::string> doc_labels;
  TriadicState state;

  static Site make(int id, FuzzyMatrix sdf, FuzzyMatrix wsf);
};

struct Consensus {
  std::vector<std::string> universe;
  SimilarityMatrix matrix;
};

struct SplitConfig {
  std::size_t splits = 1;
  std::uint64_t seed = 0;
};

// Per-site delta sequences plus, for the barrier-synchronized runs, one
// consensus delta per global iteration.
struct DistributedReport {
  std::vector<std::vector<double>> site_deltas;  // [site][iteration]
  std::vector<double> consensus_deltas;
  std::vector<double> iteration_seconds;
  double total_seconds = 0.0;
};

// Embeds m into the universe: copied entries where both labels exist,
// 0 elsewhere off-diagonal, diagonal 1.
SimilarityMatrix extend_to_universe(const SimilarityMatrix &m,
                                    const std::vector<std::string> &universe);

// Submatrix over labels (all must exist in m).
SimilarityMatrix restrict_to(const SimilarityMatrix &m,
                             const std::vector<std::string> &labels);

// Identity over the ordered union of prev labels and next_docs, with prev's
// entries copied in.
SimilarityMatrix seed_from_previous(const SimilarityMatrix &prev,
                                    const std::vector<std::string> &next_docs);

std::vector<std::string> label_union(
    const std::vector<std::vector<std::string>> &label_sets);

// Entrywise nonzero-minimum over the extended matrices; 0 when no site has a
// nonzero entry for a pair; diagonal 1.
Consensus merge(const std::vector<SimilarityMatrix> &mats,
                const std::vector<std::string> &universe);

// Chained sites: each one is seeded with the previous document similarity and
// runs over the accumulated document set.
std::pair<Consensus, DistributedReport> run_sequential(
    const std::vector<Site> &sites, const RunConfig &cfg, int threads = 0);

// Barrier-synchronized global loop: one local iteration per site per round,
// then merge, then consensus feedback into every site's D2.
std::pair<Consensus, DistributedReport> run_merging(std::vector<Site> sites,
                                                    const RunConfig &cfg,
                                                    int threads = 0);

// Deterministic seeded partition of the sentence set into `splits` blocks of
// near-equal size; each block becomes a site over the full document universe,
// with words restricted to those occurring in the block.
std::vector<Site> split_corpus(const FuzzyMatrix &sdf, const FuzzyMatrix &wsf,
                               const SplitConfig &split);

std::pair<Consensus, DistributedReport> run_splitting(const FuzzyMatrix &sdf,
                                                      const FuzzyMatrix &wsf,
                                                      const SplitConfig &split,
                                                      const RunConfig &cfg,
                                                      int threads = 0);

}  // namespace ftsim
