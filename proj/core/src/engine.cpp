#include "ftsim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>
#include <unordered_set>

namespace ftsim {

namespace {

// Nonzero feature entries per object in ascending index order, stored
// CSR-style. Skipping zero terms adds only exact-zero summands, so the
// accumulated value is bitwise identical to the full fixed-order double loop.
struct FeatureSet {
  std::vector<std::size_t> offsets;  // size n+1
  std::vector<std::uint32_t> index;
  std::vector<double> value;

  std::size_t size() const { return offsets.size() - 1; }
};

FeatureSet column_features(const LabeledMatrix &m) {
  FeatureSet f;
  f.offsets.assign(m.cols() + 1, 0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.at(r, c) != 0.0) ++f.offsets[c + 1];
  for (std::size_t c = 0; c < m.cols(); ++c) f.offsets[c + 1] += f.offsets[c];
  f.index.resize(f.offsets.back());
  f.value.resize(f.offsets.back());
  std::vector<std::size_t> cursor(f.offsets.begin(), f.offsets.end() - 1);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.at(r, c) != 0.0) {
        f.index[cursor[c]] = static_cast<std::uint32_t>(r);
        f.value[cursor[c]] = m.at(r, c);
        ++cursor[c];
      }
  return f;
}

FeatureSet row_features(const LabeledMatrix &m) {
  FeatureSet f;
  f.offsets.assign(m.rows() + 1, 0);
  f.index.reserve(m.values.size() / 4);
  f.value.reserve(m.values.size() / 4);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.at(r, c) != 0.0) {
        f.index.push_back(static_cast<std::uint32_t>(c));
        f.value.push_back(m.at(r, c));
      }
    f.offsets[r + 1] = f.index.size();
  }
  return f;
}

void parallel_rows(std::size_t n, int threads, const auto &fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t l = 0; l < n; ++l) fn(l);
    return;
  }
  const int workers = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t l = w; l < n; l += workers) fn(l);
    });
  for (auto &t : pool) t.join();
}

// raw[l][m] = sum_{i,j} min(f_l[i], f_m[j]) * base[i][j], i outer, j inner.
// Only the upper triangle is computed; the mirror keeps symmetry exact.
std::vector<double> raw_similarity(const FeatureSet &feats,
                                   const SimilarityMatrix &base, int threads) {
  const std::size_t n = feats.size();
  std::vector<double> raw(n * n, 0.0);
  const std::size_t stride = base.size();
  const double *bv = base.values.data();
  const std::uint32_t *fidx = feats.index.data();
  const double *fval = feats.value.data();
  parallel_rows(n, threads, [&](std::size_t l) {
    const std::size_t lb = feats.offsets[l], le = feats.offsets[l + 1];
    for (std::size_t m = l; m < n; ++m) {
      const std::size_t mb = feats.offsets[m], me = feats.offsets[m + 1];
      double acc = 0.0;
      for (std::size_t li = lb; li < le; ++li) {
        const double a = fval[li];
        const double *row = bv + static_cast<std::size_t>(fidx[li]) * stride;
        for (std::size_t mi = mb; mi < me; ++mi)
          acc += std::min(a, fval[mi]) * row[fidx[mi]];
      }
      raw[l * n + m] = acc;
    }
  });
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < l; ++m) raw[l * n + m] = raw[m * n + l];
  return raw;
}

void check_square(const SimilarityMatrix &s, std::size_t expected, const char *what) {
  if (s.size() != expected) throw Error(std::string(what) + ": dimension mismatch");
}

double max_abs_diff(const SimilarityMatrix &a, const SimilarityMatrix &b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

}  // namespace

SimilarityMatrix identity_similarity(const std::vector<std::string> &labels) {
  if (labels.empty()) throw Error("identity_similarity: empty label list");
  std::unordered_set<std::string> seen;
  for (const auto &l : labels)
    if (!seen.insert(l).second) throw Error("duplicate label " + l);
  SimilarityMatrix s;
  s.labels = labels;
  s.values.assign(labels.size() * labels.size(), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) s.at(i, i) = 1.0;
  return s;
}

SimilarityMatrix normalize(const std::vector<std::string> &labels,
                           const std::vector<double> &raw) {
  const std::size_t n = labels.size();
  SimilarityMatrix out;
  out.labels = labels;
  out.values.assign(n * n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = l + 1; m < n; ++m) {
      const double dl = raw[l * n + l], dm = raw[m * n + m];
      double v = 0.0;
      if (dl > 0.0 && dm > 0.0) {
        v = raw[l * n + m] / std::sqrt(dl * dm);
        v = std::clamp(v, 0.0, 1.0);
      }
      out.at(l, m) = v;
      out.at(m, l) = v;
    }
    out.at(l, l) = 1.0;
  }
  return out;
}

SimilarityMatrix doc_update(const FuzzyMatrix &sdf, const SimilarityMatrix &s2,
                            int threads) {
  check_square(s2, sdf.rows(), "doc_update");
  return normalize(sdf.col_labels, raw_similarity(column_features(sdf), s2, threads));
}

SimilarityMatrix word_update(const FuzzyMatrix &wsf, const SimilarityMatrix &s2,
                             int threads) {
  check_square(s2, wsf.cols(), "word_update");
  return normalize(wsf.row_labels, raw_similarity(row_features(wsf), s2, threads));
}

SimilarityMatrix sentence_update(const FuzzyMatrix &sdf, const FuzzyMatrix &wsf,
                                 const SimilarityMatrix &d2,
                                 const SimilarityMatrix &w2, int threads) {
  check_square(d2, sdf.cols(), "sentence_update(D2)");
  check_square(w2, wsf.rows(), "sentence_update(W2)");
  if (sdf.rows() != wsf.cols()) throw Error("sentence_update: SDf/WSf mismatch");
  SimilarityMatrix doc_side =
      normalize(sdf.row_labels, raw_similarity(row_features(sdf), d2, threads));
  SimilarityMatrix word_side =
      normalize(sdf.row_labels, raw_similarity(column_features(wsf), w2, threads));
  for (std::size_t i = 0; i < doc_side.values.size(); ++i)
    doc_side.values[i] = std::min(doc_side.values[i], word_side.values[i]);
  for (std::size_t l = 0; l < doc_side.size(); ++l) doc_side.at(l, l) = 1.0;
  return doc_side;
}

TriadicState ft_sim_iterate(const TriadicState &state, const FuzzyMatrix &sdf,
                            const FuzzyMatrix &wsf, int threads) {
  TriadicState next;
  next.d2 = doc_update(sdf, state.s2, threads);
  next.w2 = word_update(wsf, state.s2, threads);
  next.s2 = sentence_update(sdf, wsf, state.d2, state.w2, threads);
  next.t = state.t + 1;
  next.deltas = state.deltas;
  double delta = max_abs_diff(next.d2, state.d2);
  delta = std::max(delta, max_abs_diff(next.s2, state.s2));
  delta = std::max(delta, max_abs_diff(next.w2, state.w2));
  next.deltas.push_back(delta);
  return next;
}

std::pair<TriadicState, RunReport> ft_sim_run(
    const FuzzyMatrix &sdf, const FuzzyMatrix &wsf, const RunConfig &cfg,
    int threads, const std::optional<SimilarityMatrix> &initial_d2) {
  if (cfg.max_iterations < 1) throw Error("max_iterations must be >= 1");
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  if (initial_d2 && initial_d2->labels != sdf.col_labels)
    throw Error("initial D2 labels do not match SDf columns");

  TriadicState state;
  state.d2 = initial_d2 ? *initial_d2 : identity_similarity(sdf.col_labels);
  state.s2 = identity_similarity(sdf.row_labels);
  state.w2 = identity_similarity(wsf.row_labels);

  RunReport report;
  for (int t = 1; t <= cfg.max_iterations; ++t) {
    const auto it0 = clock::now();
    state = ft_sim_iterate(state, sdf, wsf, threads);
    const double secs = std::chrono::duration<double>(clock::now() - it0).count();
    report.iterations.push_back({state.deltas.back(), secs});
    if (cfg.epsilon > 0.0 && state.deltas.back() < cfg.epsilon) break;
  }
  report.total_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return {std::move(state), std::move(report)};
}

}  // namespace ftsim
