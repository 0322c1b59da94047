#include "gcodes/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace gcodes {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

// Strictly "a b c": decimal tokens separated by single spaces.
std::vector<std::uint64_t> split_numbers(std::string_view s, std::size_t line) {
  std::vector<std::uint64_t> out;
  if (s.empty()) fail(line, "empty line");
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(s.find(' ', pos), s.size());
    const std::string_view tok = s.substr(pos, end - pos);
    if (tok.empty()) fail(line, "entries must be separated by single spaces");
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "not a decimal number: '" + std::string(tok) + "'");
    out.push_back(v);
    if (end == s.size()) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace

LinearCode parse_generator(std::string_view text) {
  if (text.empty() || text.back() != '\n') throw Error(ErrorCode::ParseError, "missing trailing newline");
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t pos = 0;
  std::size_t number = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string_view l = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    if (!l.empty() && l.front() == '#') continue;
    lines.emplace_back(number, l);
  }
  if (lines.empty()) throw Error(ErrorCode::ParseError, "missing header line");
  const auto header = split_numbers(lines[0].second, lines[0].first);
  if (header.size() != 3) fail(lines[0].first, "header must be 'q n k'");
  const std::uint64_t q = header[0];
  const std::size_t n = header[1];
  const std::size_t k = header[2];
  if (k > n) fail(lines[0].first, "k exceeds n");
  const FieldCtx* field = nullptr;
  try {
    field = &field_of_order(q);
  } catch (const Error& e) {
    fail(lines[0].first, e.what());
  }
  if (lines.size() != k + 1) {
    fail(lines.back().first, "expected " + std::to_string(k) + " rows, found " + std::to_string(lines.size() - 1));
  }
  Matrix g(*field, k, n);
  for (std::size_t r = 0; r < k; ++r) {
    const auto [line, content] = lines[r + 1];
    const auto row = split_numbers(content, line);
    if (row.size() != n) fail(line, "expected " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] >= q) fail(line, "entry " + std::to_string(row[j]) + " is not an element of GF(" + std::to_string(q) + ")");
      g(r, j) = static_cast<Elem>(row[j]);
    }
  }
  if (rank(g) != k) throw Error(ErrorCode::ParseError, "generator rows are linearly dependent");
  return LinearCode::from_generator(g);
}

LinearCode read_generator_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_generator(ss.str());
}

std::string format_generator(const LinearCode& c) {
  std::string out = std::to_string(c.field().q()) + " " + std::to_string(c.n()) + " " + std::to_string(c.k()) + "\n";
  const Matrix& g = c.generator();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (j > 0) out += ' ';
      out += std::to_string(g(r, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_rref_line(const Subspace& s) {
  std::string out;
  for (auto v : s.basis().data()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace gcodes
