#include "diagx/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "diagx/errors.hpp"

namespace diagx {

namespace detail_csv {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, std::size_t line_no) {
  const std::string s = trim(raw);
  if (s.empty()) throw ParseError("empty numeric field", line_no);
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("not a number: '" + s + "'", line_no);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value: '" + s + "'", line_no);
  return v;
}

// Physical lines with their 1-based numbers, comments and blanks dropped,
// CR stripped.
std::vector<std::pair<std::size_t, std::string>> logical_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.emplace_back(no, line);
  }
  return out;
}

}  // namespace detail_csv

Matrix parse_matrix_csv(const std::string& text) {
  const auto lines = detail_csv::logical_lines(text);
  if (lines.empty()) throw ParseError("no matrix rows found");
  std::vector<double> entries;
  std::size_t cols = 0;
  for (const auto& [no, line] : lines) {
    const auto fields = detail_csv::split_fields(line);
    if (cols == 0) {
      cols = fields.size();
    } else if (fields.size() != cols) {
      throw ParseError("expected " + std::to_string(cols) + " fields, got " +
                           std::to_string(fields.size()),
                       no);
    }
    for (const auto& f : fields) entries.push_back(detail_csv::parse_number(f, no));
  }
  return Matrix(lines.size(), cols, std::move(entries));
}

Matrix read_matrix_csv(const std::string& path) {
  return parse_matrix_csv(read_text_file(path));
}

std::string format_matrix_csv(const Matrix& a) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      if (j) out.push_back(',');
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

void write_matrix_csv(const std::string& path, const Matrix& a) {
  write_text_file(path, format_matrix_csv(a));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

}  // namespace diagx
