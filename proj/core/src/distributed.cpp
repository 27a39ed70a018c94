#include "ftsim/distributed.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>
#include <unordered_map>

namespace ftsim {

namespace {

std::unordered_map<std::string, std::size_t> index_of(
    const std::vector<std::string> &labels) {
  std::unordered_map<std::string, std::size_t> idx;
  idx.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) idx.emplace(labels[i], i);
  return idx;
}

double max_abs_diff(const SimilarityMatrix &a, const SimilarityMatrix &b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

void run_sites_concurrently(std::vector<Site> &sites, int workers,
                            const auto &step) {
  const std::size_t n = sites.size();
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) step(sites[i]);
    return;
  }
  const int w = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (int k = 0; k < w; ++k)
    pool.emplace_back([&, k] {
      for (std::size_t i = k; i < n; i += w) step(sites[i]);
    });
  for (auto &t : pool) t.join();
}

}  // namespace

Site Site::make(int id, FuzzyMatrix sdf, FuzzyMatrix wsf) {
  Site s;
  s.id = id;
  s.doc_labels = sdf.col_labels;
  s.sdf = std::move(sdf);
  s.wsf = std::move(wsf);
  return s;
}

std::vector<std::string> label_union(
    const std::vector<std::vector<std::string>> &label_sets) {
  std::vector<std::string> out;
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto &set : label_sets)
    for (const auto &l : set)
      if (seen.emplace(l, out.size()).second) out.push_back(l);
  return out;
}

SimilarityMatrix extend_to_universe(const SimilarityMatrix &m,
                                    const std::vector<std::string> &universe) {
  SimilarityMatrix out = identity_similarity(universe);
  const auto uidx = index_of(universe);
  std::vector<std::size_t> pos(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto it = uidx.find(m.labels[i]);
    if (it == uidx.end()) throw Error("label not in universe: " + m.labels[i]);
    pos[i] = it->second;
  }
  for (std::size_t l = 0; l < m.size(); ++l)
    for (std::size_t c = 0; c < m.size(); ++c) out.at(pos[l], pos[c]) = m.at(l, c);
  for (std::size_t i = 0; i < universe.size(); ++i) out.at(i, i) = 1.0;
  return out;
}

SimilarityMatrix restrict_to(const SimilarityMatrix &m,
                             const std::vector<std::string> &labels) {
  const auto midx = index_of(m.labels);
  std::vector<std::size_t> pos(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = midx.find(labels[i]);
    if (it == midx.end()) throw Error("label not in matrix: " + labels[i]);
    pos[i] = it->second;
  }
  SimilarityMatrix out;
  out.labels = labels;
  out.values.resize(labels.size() * labels.size());
  for (std::size_t l = 0; l < labels.size(); ++l)
    for (std::size_t c = 0; c < labels.size(); ++c)
      out.at(l, c) = m.at(pos[l], pos[c]);
  return out;
}

SimilarityMatrix seed_from_previous(const SimilarityMatrix &prev,
                                    const std::vector<std::string> &next_docs) {
  const auto universe = label_union({prev.labels, next_docs});
  return extend_to_universe(prev, universe);
}

Consensus merge(const std::vector<SimilarityMatrix> &mats,
                const std::vector<std::string> &universe) {
  Consensus out;
  out.universe = universe;
  out.matrix = identity_similarity(universe);
  const auto uidx = index_of(universe);
  for (const auto &m : mats) {
    std::vector<std::size_t> pos(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto it = uidx.find(m.labels[i]);
      if (it == uidx.end()) throw Error("label not in universe: " + m.labels[i]);
      pos[i] = it->second;
    }
    // Rule 2: nonzero minimum across sites; zeros carry no information.
    for (std::size_t l = 0; l < m.size(); ++l)
      for (std::size_t c = l + 1; c < m.size(); ++c) {
        const double v = m.at(l, c);
        if (v == 0.0) continue;
        double &slot = out.matrix.at(pos[l], pos[c]);
        slot = (slot == 0.0) ? v : std::min(slot, v);
        out.matrix.at(pos[c], pos[l]) = slot;
      }
  }
  return out;
}

std::pair<Consensus, DistributedReport> run_sequential(
    const std::vector<Site> &sites, const RunConfig &cfg, int threads) {
  if (sites.empty()) throw Error("run_sequential: no sites");
  const int engine_threads = threads > 0 ? threads : 1;
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  DistributedReport report;
  auto [state, run0] = ft_sim_run(sites[0].sdf, sites[0].wsf, cfg, engine_threads);
  report.site_deltas.push_back(state.deltas);
  SimilarityMatrix d2 = std::move(state.d2);

  for (std::size_t i = 1; i < sites.size(); ++i) {
    const Site &site = sites[i];
    const SimilarityMatrix seeded = seed_from_previous(d2, site.doc_labels);

    // The chained instance runs over the accumulated document set; documents
    // absent from this site get all-zero columns.
    FuzzyMatrix ext = FuzzyMatrix::zeros(site.sdf.row_labels, seeded.labels);
    const auto col = index_of(seeded.labels);
    for (std::size_t c = 0; c < site.sdf.cols(); ++c) {
      const std::size_t dst = col.at(site.sdf.col_labels[c]);
      for (std::size_t r = 0; r < site.sdf.rows(); ++r)
        ext.at(r, dst) = site.sdf.at(r, c);
    }
    auto [st, rep] = ft_sim_run(ext, site.wsf, cfg, engine_threads, seeded);
    report.site_deltas.push_back(st.deltas);
    d2 = std::move(st.d2);
  }

  std::vector<std::vector<std::string>> sets;
  for (const auto &s : sites) sets.push_back(s.doc_labels);
  Consensus out;
  out.universe = label_union(sets);
  out.matrix = extend_to_universe(d2, out.universe);
  report.total_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return {std::move(out), std::move(report)};
}

std::pair<Consensus, DistributedReport> run_merging(std::vector<Site> sites,
                                                    const RunConfig &cfg,
                                                    int threads) {
  if (sites.empty()) throw Error("run_merging: no sites");
  if (cfg.max_iterations < 1) throw Error("max_iterations must be >= 1");
  const int workers = threads > 0 ? threads : static_cast<int>(sites.size());
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  std::vector<std::vector<std::string>> sets;
  for (const auto &s : sites) sets.push_back(s.doc_labels);
  const auto universe = label_union(sets);

  for (auto &s : sites) {
    s.state.d2 = identity_similarity(s.sdf.col_labels);
    s.state.s2 = identity_similarity(s.sdf.row_labels);
    s.state.w2 = identity_similarity(s.wsf.row_labels);
    s.state.t = 0;
  }

  DistributedReport report;
  report.site_deltas.resize(sites.size());
  Consensus consensus;
  consensus.universe = universe;
  consensus.matrix = identity_similarity(universe);

  for (int t = 1; t <= cfg.max_iterations; ++t) {
    const auto it0 = clock::now();
    // One local iteration per site, then the barrier (join) before merging.
    run_sites_concurrently(sites, workers, [&](Site &s) {
      s.state = ft_sim_iterate(s.state, s.sdf, s.wsf, 1);
    });
    std::vector<SimilarityMatrix> d2s;
    d2s.reserve(sites.size());
    for (const auto &s : sites) d2s.push_back(s.state.d2);
    Consensus next = merge(d2s, universe);
    report.consensus_deltas.push_back(max_abs_diff(next.matrix, consensus.matrix));
    consensus = std::move(next);

    double delta = 0.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      report.site_deltas[i].push_back(sites[i].state.deltas.back());
      delta = std::max(delta, sites[i].state.deltas.back());
    }
    // Consensus feedback: broadcast, restricted to each site's documents.
    for (auto &s : sites) s.state.d2 = restrict_to(consensus.matrix, s.doc_labels);

    report.iteration_seconds.push_back(
        std::chrono::duration<double>(clock::now() - it0).count());
    if (cfg.epsilon > 0.0 && delta < cfg.epsilon) break;
  }
  report.total_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return {std::move(consensus), std::move(report)};
}

std::vector<Site> split_corpus(const FuzzyMatrix &sdf, const FuzzyMatrix &wsf,
                               const SplitConfig &split) {
  const std::size_t J = sdf.rows();
  const std::size_t H = split.splits;
  if (H < 1) throw Error("splits must be >= 1");
  if (H > J) throw Error("splits exceed sentence count");
  if (wsf.cols() != J) throw Error("split_corpus: SDf/WSf mismatch");

  // Engine-independent shuffle (mt19937_64 output is specified; the modulo
  // draw keeps the permutation stable across standard libraries).
  std::vector<std::size_t> order(J);
  for (std::size_t i = 0; i < J; ++i) order[i] = i;
  std::mt19937_64 rng(split.seed);
  for (std::size_t i = J - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(order[i], order[j]);
  }

  std::vector<Site> sites;
  const std::size_t base = J / H, rem = J % H;
  std::size_t offset = 0;
  for (std::size_t h = 0; h < H; ++h) {
    const std::size_t len = base + (h < rem ? 1 : 0);
    std::vector<std::size_t> block(order.begin() + offset,
                                   order.begin() + offset + len);
    offset += len;
    std::sort(block.begin(), block.end());

    std::vector<std::string> sent_labels;
    for (std::size_t j : block) sent_labels.push_back(sdf.row_labels[j]);

    FuzzyMatrix sub_sd = FuzzyMatrix::zeros(sent_labels, sdf.col_labels);
    for (std::size_t r = 0; r < block.size(); ++r)
      for (std::size_t c = 0; c < sdf.cols(); ++c)
        sub_sd.at(r, c) = sdf.at(block[r], c);

    // Only the words occurring in this block, in original order.
    std::vector<std::size_t> word_rows;
    for (std::size_t k = 0; k < wsf.rows(); ++k)
      for (std::size_t j : block)
        if (wsf.at(k, j) != 0.0) {
          word_rows.push_back(k);
          break;
        }
    std::vector<std::string> word_labels;
    for (std::size_t k : word_rows) word_labels.push_back(wsf.row_labels[k]);
    FuzzyMatrix sub_ws = FuzzyMatrix::zeros(word_labels, sent_labels);
    for (std::size_t r = 0; r < word_rows.size(); ++r)
      for (std::size_t c = 0; c < block.size(); ++c)
        sub_ws.at(r, c) = wsf.at(word_rows[r], block[c]);

    sites.push_back(Site::make(static_cast<int>(h) + 1, std::move(sub_sd),
                               std::move(sub_ws)));
  }
  return sites;
}

std::pair<Consensus, DistributedReport> run_splitting(const FuzzyMatrix &sdf,
                                                      const FuzzyMatrix &wsf,
                                                      const SplitConfig &split,
                                                      const RunConfig &cfg,
                                                      int threads) {
  return run_merging(split_corpus(sdf, wsf, split), cfg, threads);
}

}  // namespace ftsim
