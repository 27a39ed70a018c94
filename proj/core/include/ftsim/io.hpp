#pragma once

#include <string>

#include "ftsim/matrix.hpp"

namespace ftsim {

// Labeled CSV: header `id,<col labels>`, one row per row label, values with
// 9 significant digits, '\n' line endings.
std::string serialize_matrix(const LabeledMatrix &m);
LabeledMatrix parse_matrix(const std::string &text);

std::string serialize_similarity(const SimilarityMatrix &m);
SimilarityMatrix parse_similarity(const std::string &text);

void write_matrix(const LabeledMatrix &m, const std::string &path);
LabeledMatrix read_matrix(const std::string &path);

void write_similarity(const SimilarityMatrix &m, const std::string &path);
SimilarityMatrix read_similarity(const std::string &path);

std::string format_value(double v);  // %.9g

}  // namespace ftsim
