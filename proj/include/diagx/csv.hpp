#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diagx/matrix.hpp"

namespace diagx {

/// Bare matrix text format: UTF-8 CSV, one row per line, decimal floats,
/// no header.  Lines starting with '#' and blank lines are ignored on
/// read.  CRLF input is accepted.
Matrix parse_matrix_csv(const std::string& text);
Matrix read_matrix_csv(const std::string& path);
std::string format_matrix_csv(const Matrix& a);
void write_matrix_csv(const std::string& path, const Matrix& a);

/// Whole-file slurp with a readable error on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

namespace detail_csv {

/// Comma split (no quoting; the grammar has none).
std::vector<std::string> split_fields(const std::string& line);
std::string trim(const std::string& s);
/// Strict finite-double parse; raises ParseError naming the line.
double parse_number(const std::string& raw, std::size_t line_no);
/// Content lines with their 1-based numbers; comments, blanks, CR dropped.
std::vector<std::pair<std::size_t, std::string>> logical_lines(const std::string& text);

}  // namespace detail_csv

}  // namespace diagx
