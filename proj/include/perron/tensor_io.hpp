#pragma once

// Plain-text sparse coordinate format:
//
//   # comment
//   tensor <m> <n> <nnz>
//   <i1> ... <im> <value>      (nnz lines, 1-based indices)
//
// Blank lines and '#' comments may appear anywhere. Values are written with
// 17 significant digits, so parse(write(T)) == T bit for bit.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "perron/tensor.hpp"

namespace perron {

DenseTensor parse_tensor(std::istream& in);
DenseTensor parse_tensor_string(std::string_view text);
DenseTensor parse_tensor_file(const std::filesystem::path& path);

/// Writes the nonzero entries in lexicographic order. `comment` lines are
/// emitted first, each prefixed with "# ".
void write_tensor(std::ostream& out, const DenseTensor& t, std::string_view comment = {});
void write_tensor_file(const std::filesystem::path& path, const DenseTensor& t, std::string_view comment = {});

/// Shortest-round-trip-safe decimal rendering with 17 significant digits.
std::string format_double(double v);

}  // namespace perron
