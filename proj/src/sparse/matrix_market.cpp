// Copyright 2026 The sftrsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sftrsv/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sftrsv/error.hpp"

namespace sftrsv {
namespace {

enum class Field { Real, Integer, Pattern };
enum class Symmetry { General, Symmetric };

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '%') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  // from_chars rejects a leading '+', which some writers emit.
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

CscMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedHeader, "empty input");

  const auto banner = split(line);
  if (banner.size() < 5 || lower(banner[0]) != "%%matrixmarket") {
    throw Error(ErrorCode::MalformedHeader, "missing %%MatrixMarket banner");
  }
  if (lower(banner[1]) != "matrix") {
    throw Error(ErrorCode::MalformedHeader, "unsupported object '" + std::string(banner[1]) + "'");
  }
  if (lower(banner[2]) != "coordinate") {
    throw Error(ErrorCode::MalformedHeader, "unsupported format '" + std::string(banner[2]) + "'");
  }

  Field field{};
  const auto field_name = lower(banner[3]);
  if (field_name == "real" || field_name == "double") {
    field = Field::Real;
  } else if (field_name == "integer") {
    field = Field::Integer;
  } else if (field_name == "pattern") {
    field = Field::Pattern;
  } else if (field_name == "complex") {
    throw Error(ErrorCode::ComplexFieldUnsupported, "complex-valued matrices are not supported");
  } else {
    throw Error(ErrorCode::MalformedHeader, "unknown field '" + field_name + "'");
  }

  Symmetry symmetry{};
  const auto sym_name = lower(banner[4]);
  if (sym_name == "general") {
    symmetry = Symmetry::General;
  } else if (sym_name == "symmetric") {
    symmetry = Symmetry::Symmetric;
  } else {
    throw Error(ErrorCode::MalformedHeader, "unsupported symmetry '" + sym_name + "'");
  }

  bool have_size = false;
  while (std::getline(in, line)) {
    if (!is_blank_or_comment(line)) {
      have_size = true;
      break;
    }
  }
  if (!have_size) throw Error(ErrorCode::MalformedHeader, "missing size line");

  const auto size_tokens = split(line);
  long long rows = 0, cols = 0, declared = 0;
  if (size_tokens.size() != 3 || !parse_number(size_tokens[0], rows) ||
      !parse_number(size_tokens[1], cols) || !parse_number(size_tokens[2], declared) ||
      rows < 0 || cols < 0 || declared < 0) {
    throw Error(ErrorCode::MalformedHeader, "bad size line '" + line + "'");
  }
  if (rows != cols) {
    throw Error(ErrorCode::NonSquare,
                std::to_string(rows) + " x " + std::to_string(cols) + " matrix");
  }
  if (rows > std::numeric_limits<Index>::max()) {
    throw Error(ErrorCode::MalformedHeader, "dimension exceeds index range");
  }
  const auto n = static_cast<Index>(rows);

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(symmetry == Symmetry::Symmetric ? 2 * declared : declared));
  const std::size_t want_tokens = field == Field::Pattern ? 2 : 3;
  long long seen = 0;
  while (seen < declared && std::getline(in, line)) {
    if (is_blank_or_comment(line)) continue;
    const auto tok = split(line);
    long long r = 0, c = 0;
    double v = 1.0;
    bool ok = tok.size() >= want_tokens && parse_number(tok[0], r) && parse_number(tok[1], c);
    if (ok && field == Field::Real) ok = parse_number(tok[2], v);
    if (ok && field == Field::Integer) {
      long long iv = 0;
      ok = parse_number(tok[2], iv);
      v = static_cast<double>(iv);
    }
    if (!ok) throw Error(ErrorCode::MalformedEntry, "bad entry line '" + line + "'");
    if (r < 1 || r > rows || c < 1 || c > cols) {
      throw Error(ErrorCode::IndexOutOfRange, "entry (" + std::to_string(r) + ", " +
                                                  std::to_string(c) + ") outside " +
                                                  std::to_string(rows) + " x " + std::to_string(cols));
    }
    const auto row = static_cast<Index>(r - 1);
    const auto col = static_cast<Index>(c - 1);
    entries.push_back({row, col, v});
    if (symmetry == Symmetry::Symmetric && row != col) entries.push_back({col, row, v});
    ++seen;
  }
  if (seen < declared) {
    throw Error(ErrorCode::MalformedEntry, "expected " + std::to_string(declared) +
                                               " entries, found " + std::to_string(seen));
  }
  return csc_from_triplets(n, std::move(entries));
}

CscMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CscMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.n << ' ' << m.n << ' ' << m.nnz() << '\n';
  char buf[64];
  for (Index j = 0; j < m.n; ++j) {
    for (Offset k = m.col_ptr[j]; k < m.col_ptr[j + 1]; ++k) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), m.values[k]);
      out << (m.row_idx[k] + 1) << ' ' << (j + 1) << ' ' << std::string_view(buf, ptr - buf) << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const CscMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  write_matrix_market(out, m);
}

}  // namespace sftrsv
