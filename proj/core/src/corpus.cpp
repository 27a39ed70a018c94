#include "ftsim/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace ftsim {

namespace {

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool valid_utf8(const std::string &s) {
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t extra;
    if (c < 0x80) extra = 0;
    else if ((c & 0xE0) == 0xC0) extra = 1;
    else if ((c & 0xF0) == 0xE0) extra = 2;
    else if ((c & 0xF8) == 0xF0) extra = 3;
    else return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if (i + k >= s.size()) return false;
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

void check_duplicates(const std::vector<RawDocument> &docs) {
  std::unordered_set<std::string> seen;
  for (const auto &d : docs) {
    if (d.id.empty()) throw Error("empty document id");
    if (!seen.insert(d.id).second) throw Error("duplicate id " + d.id);
  }
}

bool is_word_char(unsigned char c) {
  // Keep non-ASCII bytes so UTF-8 sequences pass through intact.
  return std::isalnum(c) || c >= 0x80;
}

}  // namespace

std::vector<RawDocument> ingest_jsonl_text(const std::string &content) {
  std::vector<RawDocument> docs;
  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &e) {
      throw Error("malformed JSON at line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj.contains("text") ||
        !obj["id"].is_string() || !obj["text"].is_string()) {
      throw Error("line " + std::to_string(lineno) +
                  ": expected object with string fields \"id\" and \"text\"");
    }
    docs.push_back({obj["id"].get<std::string>(), obj["text"].get<std::string>()});
  }
  check_duplicates(docs);
  return docs;
}

std::vector<RawDocument> ingest(const std::string &path) {
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt")
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<RawDocument> docs;
    for (const auto &f : files) {
      std::string text = read_file(f);
      if (!valid_utf8(text)) throw Error("undecodable bytes in " + f.string());
      docs.push_back({f.stem().string(), std::move(text)});
    }
    check_duplicates(docs);
    return docs;
  }
  if (fs::is_regular_file(path)) return ingest_jsonl_text(read_file(path));
  throw Error("no such corpus input: " + path);
}

std::vector<std::vector<std::string>> tokenize(const RawDocument &doc,
                                               const TokenizerOptions &opts) {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> current;
  std::string token;

  auto flush_token = [&] {
    if (token.size() >= opts.min_token_len && !opts.stopwords.count(token))
      current.push_back(token);
    token.clear();
  };
  auto flush_sentence = [&] {
    flush_token();
    if (!current.empty()) sentences.push_back(std::move(current));
    current.clear();
  };

  for (unsigned char c : doc.text) {
    if (c == '.' || c == '!' || c == '?') {
      flush_sentence();
    } else if (is_word_char(c)) {
      token.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush_token();
    }
  }
  flush_sentence();
  return sentences;
}

CorpusMatrices build_matrices(const std::vector<RawDocument> &docs,
                              const TokenizerOptions &opts) {
  check_duplicates(docs);
  CorpusIndex index;
  for (const auto &d : docs) index.documents.push_back(d.id);

  // First pass: sentence/word vocabularies in first-occurrence order.
  std::vector<std::vector<std::size_t>> doc_sentence_ids(docs.size());
  std::vector<std::vector<std::string>> sentence_tokens;
  for (std::size_t di = 0; di < docs.size(); ++di) {
    for (auto &toks : tokenize(docs[di], opts)) {
      std::string key;
      for (const auto &t : toks) {
        if (!key.empty()) key.push_back(' ');
        key += t;
      }
      auto [it, inserted] = index.sentence_lookup.try_emplace(key, index.sentences.size());
      if (inserted) {
        index.sentences.push_back(key);
        sentence_tokens.push_back(toks);
        for (const auto &t : toks) {
          auto [wit, winserted] = index.word_lookup.try_emplace(t, index.words.size());
          (void)wit;
          if (winserted) index.words.push_back(t);
        }
      }
      doc_sentence_ids[di].push_back(it->second);
    }
  }
  if (index.sentences.empty()) throw Error("corpus produced no sentences");

  const std::size_t I = index.documents.size();
  const std::size_t J = index.sentences.size();

  CorpusMatrices out;
  out.sd = CrispMatrix::zeros(index.sentences, index.documents);
  out.ws = CrispMatrix::zeros(index.words, index.sentences);
  for (std::size_t di = 0; di < I; ++di)
    for (std::size_t sj : doc_sentence_ids[di]) out.sd.at(sj, di) += 1.0;
  for (std::size_t sj = 0; sj < J; ++sj)
    for (const auto &t : sentence_tokens[sj]) out.ws.at(index.word_lookup.at(t), sj) += 1.0;
  out.index = std::move(index);
  return out;
}

TokenizerOptions load_stopwords(TokenizerOptions opts, const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file " + path);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) opts.stopwords.insert(line);
  }
  return opts;
}

}  // namespace ftsim
