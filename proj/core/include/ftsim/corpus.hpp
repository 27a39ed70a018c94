#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ftsim/matrix.hpp"

namespace ftsim {

struct RawDocument {
  std::string id;
  std::string text;
};

struct TokenizerOptions {
  std::unordered_set<std::string> stopwords;
  std::size_t min_token_len = 1;
};

// Dense three-partite index: documents (I), deduplicated sentences (J),
// distinct words (K). Sentence identity is its normalized token sequence,
// shared corpus-wide.
struct CorpusIndex {
  std::vector<std::string> documents;
  std::vector<std::string> sentences;  // normalized, space-joined token sequences
  std::vector<std::string> words;
  std::unordered_map<std::string, std::size_t> sentence_lookup;
  std::unordered_map<std::string, std::size_t> word_lookup;
};

struct CorpusMatrices {
  CorpusIndex index;
  CrispMatrix sd;  // J x I: occurrences of sentence j in document i
  CrispMatrix ws;  // K x J: count of word k in sentence j
};

// Reads a directory of UTF-8 .txt files (filename stem = id, lexicographic
// order) or a JSON-lines file with string fields "id" and "text".
std::vector<RawDocument> ingest(const std::string &path);
std::vector<RawDocument> ingest_jsonl_text(const std::string &content);

// Sentences split on . ! ?, words on whitespace/punctuation, lowercased.
// Empty sentences and tokens dropped, stop-words removed.
std::vector<std::vector<std::string>> tokenize(const RawDocument &doc,
                                               const TokenizerOptions &opts = {});

CorpusMatrices build_matrices(const std::vector<RawDocument> &docs,
                              const TokenizerOptions &opts = {});

TokenizerOptions load_stopwords(TokenizerOptions opts, const std::string &path);

}  // namespace ftsim
