#include "perron/tensor_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "perron/errors.hpp"

namespace perron {

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& value) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

}  // namespace

DenseTensor parse_tensor(std::istream& in) {
  std::string line;
  int line_no = 0;
  int order = 0;
  int dim = 0;
  long long nnz = -1;
  long long seen = 0;
  std::vector<double> entries;
  std::vector<bool> filled;
  std::vector<int> index;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const auto tokens = split_ws(view);
    if (tokens.empty()) continue;

    if (nnz < 0) {
      if (tokens.size() != 4 || tokens[0] != "tensor") throw ParseError(line_no, "expected header 'tensor m n nnz'");
      if (!parse_number(tokens[1], order) || !parse_number(tokens[2], dim) || !parse_number(tokens[3], nnz)) {
        throw ParseError(line_no, "malformed header numbers");
      }
      if (order < 2 || dim < 1 || nnz < 0) throw ParseError(line_no, "header needs m >= 2, n >= 1, nnz >= 0");
      double cells = std::pow(static_cast<double>(dim), order);
      if (cells > 4e9) throw ParseError(line_no, "tensor too large for dense storage");
      if (static_cast<double>(nnz) > cells) throw ParseError(line_no, "nnz exceeds n^m");
      entries.assign(static_cast<std::size_t>(cells), 0.0);
      filled.assign(entries.size(), false);
      index.resize(static_cast<std::size_t>(order));
      continue;
    }

    if (seen == nnz) throw ParseError(line_no, "more entries than the header declares");
    if (tokens.size() != static_cast<std::size_t>(order) + 1) {
      throw ParseError(line_no, "expected " + std::to_string(order) + " indices and a value");
    }
    std::size_t off = 0;
    for (int k = 0; k < order; ++k) {
      int i = 0;
      if (!parse_number(tokens[static_cast<std::size_t>(k)], i)) throw ParseError(line_no, "malformed index");
      if (i < 1 || i > dim) {
        throw ParseError(line_no, "index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
      }
      off = off * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i - 1);
    }
    double value = 0.0;
    if (!parse_number(tokens.back(), value)) throw ParseError(line_no, "malformed value");
    if (!std::isfinite(value)) throw ParseError(line_no, "value is not finite");
    if (filled[off]) throw ParseError(line_no, "duplicate index tuple");
    filled[off] = true;
    entries[off] = value;
    ++seen;
  }

  if (nnz < 0) throw ParseError(line_no, "missing 'tensor m n nnz' header");
  if (seen != nnz) {
    throw ParseError(line_no, "header declares " + std::to_string(nnz) + " entries, found " + std::to_string(seen));
  }
  return DenseTensor(order, dim, std::move(entries));
}

DenseTensor parse_tensor_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tensor(in);
}

DenseTensor parse_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  return parse_tensor(in);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_tensor(std::ostream& out, const DenseTensor& t, std::string_view comment) {
  std::istringstream lines{std::string(comment)};
  for (std::string c; std::getline(lines, c);) out << "# " << c << '\n';

  std::size_t nnz = 0;
  for (double v : t.entries()) nnz += v != 0.0;
  out << "tensor " << t.order() << ' ' << t.dim() << ' ' << nnz << '\n';

  std::vector<int> idx(static_cast<std::size_t>(t.order()));
  for (std::size_t off = 0; off < t.size(); ++off) {
    if (t[off] == 0.0) continue;
    t.unravel(off, idx);
    for (int i : idx) out << i + 1 << ' ';
    out << format_double(t[off]) << '\n';
  }
}

void write_tensor_file(const std::filesystem::path& path, const DenseTensor& t, std::string_view comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_tensor(out, t, comment);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace perron
