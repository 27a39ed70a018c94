#include "ftsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace ftsim {

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

double parse_cell(const std::string &cell, std::size_t lineno) {
  std::size_t consumed = 0;
  double v;
  try {
    v = std::stod(cell, &consumed);
  } catch (const std::exception &) {
    throw Error("non-numeric cell '" + cell + "' at line " + std::to_string(lineno));
  }
  if (consumed != cell.size())
    throw Error("non-numeric cell '" + cell + "' at line " + std::to_string(lineno));
  return v;
}

}  // namespace

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string serialize_matrix(const LabeledMatrix &m) {
  std::string out = "id";
  for (const auto &c : m.col_labels) {
    out.push_back(',');
    out += c;
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += m.row_labels[r];
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out.push_back(',');
      out += format_value(m.at(r, c));
    }
    out.push_back('\n');
  }
  return out;
}

LabeledMatrix parse_matrix(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty matrix file");
  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "id")
    throw Error("malformed header at line 1: first cell must be 'id'");

  LabeledMatrix m;
  m.col_labels.assign(header.begin() + 1, header.end());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw Error("ragged row at line " + std::to_string(lineno) + ": expected " +
                  std::to_string(header.size()) + " cells, got " +
                  std::to_string(cells.size()));
    m.row_labels.push_back(cells[0]);
    for (std::size_t c = 1; c < cells.size(); ++c)
      m.values.push_back(parse_cell(cells[c], lineno));
  }
  return m;
}

std::string serialize_similarity(const SimilarityMatrix &m) {
  LabeledMatrix lm;
  lm.row_labels = m.labels;
  lm.col_labels = m.labels;
  lm.values = m.values;
  return serialize_matrix(lm);
}

SimilarityMatrix parse_similarity(const std::string &text) {
  LabeledMatrix lm = parse_matrix(text);
  if (lm.row_labels != lm.col_labels)
    throw Error("similarity matrix must have identical row and column labels");
  SimilarityMatrix s;
  s.labels = lm.row_labels;
  s.values = std::move(lm.values);
  return s;
}

void write_matrix(const LabeledMatrix &m, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << serialize_matrix(m);
  if (!out) throw Error("write failed: " + path);
}

LabeledMatrix read_matrix(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

void write_similarity(const SimilarityMatrix &m, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << serialize_similarity(m);
  if (!out) throw Error("write failed: " + path);
}

SimilarityMatrix read_similarity(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_similarity(ss.str());
}

}  // namespace ftsim
