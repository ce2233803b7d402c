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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sftrsv/analysis.hpp"
#include "sftrsv/error.hpp"
#include "sftrsv/lower_triangular.hpp"
#include "sftrsv/matrix_market.hpp"
#include "sftrsv/synthetic.hpp"

using namespace sftrsv;

namespace {

CscMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in);
}

ErrorCode parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::Io;
}

// L = {(0,0)=2, (1,0)=1, (1,1)=3}
CscMatrix small_lower() {
  return csc_from_triplets(2, {{0, 0, 2.0}, {1, 0, 1.0}, {1, 1, 3.0}});
}

}  // namespace

TEST_CASE("matrix market: smallest file") {
  const auto m = parse("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 5.0\n");
  CHECK(m.n == 1);
  CHECK(m.nnz() == 1);
  CHECK(m.values == std::vector<double>{5.0});
}

TEST_CASE("matrix market: duplicates are summed") {
  const auto m = parse("%%MatrixMarket matrix coordinate real general\n1 1 2\n1 1 1.0\n1 1 2.0\n");
  CHECK(m.nnz() == 1);
  CHECK(m.values[0] == 3.0);
}

TEST_CASE("matrix market: symmetric, pattern, integer, comments and blank lines") {
  const auto sym = parse(
      "%%MatrixMarket matrix coordinate real symmetric\n% a comment\n\n3 3 3\n1 1 4\n\n3 1 -2.5\n% mid\n2 2 1\n");
  CHECK(sym.nnz() == 4);
  const auto d = testing::to_dense(sym);
  CHECK(d[2][0] == -2.5);
  CHECK(d[0][2] == -2.5);

  const auto pat = parse("%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 1\n2 1\n");
  CHECK(pat.values == std::vector<double>{1.0, 1.0});

  const auto ints = parse("%%matrixmarket MATRIX Coordinate integer general\n2 2 1\n2 2 7\n");
  CHECK(ints.values == std::vector<double>{7.0});
  CHECK(ints.row_idx == std::vector<Index>{1});
}

TEST_CASE("matrix market: columns come out sorted") {
  const auto m = parse("%%MatrixMarket matrix coordinate real general\n3 3 4\n3 1 1\n1 1 2\n2 2 3\n2 1 4\n");
  CHECK(m.col_ptr == std::vector<Offset>{0, 3, 4, 4});
  CHECK(m.row_idx == std::vector<Index>{0, 1, 2, 1});
}

TEST_CASE("matrix market: error contract") {
  CHECK(parse_error("") == ErrorCode::MalformedHeader);
  CHECK(parse_error("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n") ==
        ErrorCode::MalformedHeader);
  CHECK(parse_error("%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 1\n") ==
        ErrorCode::MalformedHeader);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real skew-symmetric\n1 1 0\n") ==
        ErrorCode::MalformedHeader);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 3 0\n") == ErrorCode::NonSquare);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n") ==
        ErrorCode::IndexOutOfRange);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n0 1 1.0\n") ==
        ErrorCode::IndexOutOfRange);
  CHECK(parse_error("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n") ==
        ErrorCode::ComplexFieldUnsupported);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n") ==
        ErrorCode::MalformedEntry);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 1.0\n") ==
        ErrorCode::MalformedEntry);
}

TEST_CASE("matrix market: write then read reproduces every array") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 60);
    std::vector<Triplet> entries;
    std::uniform_real_distribution<double> val(-1e3, 1e3);
    const int count = static_cast<int>(rng() % (3 * n));
    for (int k = 0; k < count; ++k) {
      entries.push_back({static_cast<Index>(rng() % n), static_cast<Index>(rng() % n), val(rng)});
    }
    const auto m = csc_from_triplets(n, entries);
    std::stringstream buf;
    write_matrix_market(buf, m);
    CHECK(read_matrix_market(buf) == m);
  }
}

TEST_CASE("matrix market: chipcool0 counts when the file is available") {
  const char* path = std::getenv("SFTRSV_CHIPCOOL0");
  if (path == nullptr || !std::filesystem::exists(path)) {
    MESSAGE("SFTRSV_CHIPCOOL0 not set; skipping SuiteSparse chipcool0 check");
    return;
  }
  const auto m = read_matrix_market(std::filesystem::path(path));
  CHECK(m.n == 20082);
  CHECK(m.nnz() == 150616);
}

TEST_CASE("extract_lower_triangular") {
  SUBCASE("identity is unchanged") {
    const auto id = csc_from_triplets(3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}});
    CHECK(extract_lower_triangular(id, DiagonalPolicy::RequireExplicit) == id);
  }
  SUBCASE("strict upper entries are dropped") {
    const auto a = csc_from_triplets(2, {{0, 0, 2}, {0, 1, 5}, {1, 0, 1}, {1, 1, 3}});
    CHECK(extract_lower_triangular(a, DiagonalPolicy::RequireExplicit) == small_lower());
  }
  SUBCASE("InsertUnit adds missing diagonals") {
    const auto a = csc_from_triplets(2, {{1, 0, 4.0}});
    const auto l = extract_lower_triangular(a, DiagonalPolicy::InsertUnit);
    CHECK(l.nnz() == 3);
    CHECK(l.diagonal(0) == 1.0);
    CHECK(l.diagonal(1) == 1.0);
    CHECK(testing::to_dense(l)[1][0] == 4.0);
    CHECK(validate_lower_triangular(l).empty());
  }
  SUBCASE("missing and zero diagonals") {
    const auto a = csc_from_triplets(2, {{0, 0, 1.0}, {1, 0, 4.0}});
    CHECK_THROWS_WITH_AS(extract_lower_triangular(a, DiagonalPolicy::RequireExplicit),
                         "MissingDiagonal: column 1", Error);
    const auto z = csc_from_triplets(2, {{0, 0, 1.0}, {1, 1, 0.0}});
    CHECK_THROWS_WITH_AS(extract_lower_triangular(z, DiagonalPolicy::InsertUnit),
                         "ZeroDiagonal: column 1", Error);
  }
  SUBCASE("explicit off-diagonal zeros are kept") {
    const auto a = csc_from_triplets(2, {{0, 0, 1.0}, {1, 0, 0.0}, {1, 1, 1.0}});
    CHECK(extract_lower_triangular(a, DiagonalPolicy::RequireExplicit).nnz() == 3);
  }
  SUBCASE("idempotent") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const Index n = 1 + static_cast<Index>(rng() % 40);
      std::vector<Triplet> entries;
      for (Index i = 0; i < n; ++i) entries.push_back({i, i, 1.0 + static_cast<double>(rng() % 5)});
      for (int k = 0; k < 2 * n; ++k) {
        entries.push_back({static_cast<Index>(rng() % n), static_cast<Index>(rng() % n), 0.5});
      }
      const auto a = csc_from_triplets(n, entries);
      const auto once = extract_lower_triangular(a, DiagonalPolicy::RequireExplicit);
      CHECK(extract_lower_triangular(once, DiagonalPolicy::RequireExplicit) == once);
    }
  }
}

TEST_CASE("validate_lower_triangular") {
  const auto bidiag = generate_synthetic({.kind = SyntheticKind::Bidiagonal, .n = 6});
  CHECK(validate_lower_triangular(bidiag).empty());

  const auto upper = csc_from_triplets(2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 1, 1.0}});
  const auto report = validate_lower_triangular(upper);
  CHECK(std::find(report.begin(), report.end(), Violation{ViolationKind::UpperTriangularEntry, 1}) !=
        report.end());

  auto zero = generate_synthetic({.kind = SyntheticKind::Diagonal, .n = 5});
  zero.values[zero.col_ptr[3]] = 0.0;
  const auto zr = validate_lower_triangular(zero);
  REQUIRE(zr.size() == 1);
  CHECK(zr[0] == Violation{ViolationKind::ZeroDiagonal, 3});
  CHECK(describe(zr[0]) == "ZeroDiagonal(col=3)");

  CscMatrix broken = bidiag;
  broken.col_ptr.back() = 3;
  CHECK_FALSE(validate_lower_triangular(broken).empty());

  CscMatrix unsorted = csc_from_triplets(3, {{0, 0, 1}, {1, 0, 1}, {2, 0, 1}, {1, 1, 1}, {2, 2, 1}});
  std::swap(unsorted.row_idx[1], unsorted.row_idx[2]);
  const auto ur = validate_lower_triangular(unsorted);
  CHECK(std::find(ur.begin(), ur.end(), Violation{ViolationKind::UnsortedColumn, 0}) != ur.end());
  CHECK_THROWS_AS(require_lower_triangular(unsorted), Error);
}

TEST_CASE("generate_synthetic") {
  SUBCASE("diagonal") {
    const auto m = generate_synthetic({.kind = SyntheticKind::Diagonal, .n = 4});
    CHECK(m.nnz() == 4);
    CHECK(compute_level_schedule(m).n_levels() == 1);
  }
  SUBCASE("bidiagonal") {
    const auto m = generate_synthetic({.kind = SyntheticKind::Bidiagonal, .n = 5});
    CHECK(m.nnz() == 9);
    CHECK(compute_level_schedule(m).n_levels() == 5);
    const auto d = testing::to_dense(m);
    CHECK(d[3][3] == 1.0);
    CHECK(d[4][3] == -1.0);
  }
  SUBCASE("block diagonal parallelism against the longest-path oracle") {
    const auto m = generate_synthetic({.kind = SyntheticKind::BlockDiagonal, .n = 8, .block_size = 2});
    const auto levels = testing::longest_path_levels(m);
    const Index oracle_levels = *std::max_element(levels.begin(), levels.end()) + 1;
    CHECK(oracle_levels == 2);
    CHECK(8 / oracle_levels == 4);
    CHECK(compute_stats(m).parallelism == 4);
  }
  SUBCASE("block diagonal level count equals block size") {
    for (Index b : {1, 3, 7, 16}) {
      const auto m = generate_synthetic({.kind = SyntheticKind::BlockDiagonal, .n = 50, .block_size = b});
      CHECK(compute_level_schedule(m).n_levels() == b);
    }
  }
  SUBCASE("deterministic in the seed") {
    SyntheticSpec spec{.kind = SyntheticKind::RandomBanded, .n = 300, .bandwidth = 40, .density = 0.2, .seed = 9};
    CHECK(generate_synthetic(spec) == generate_synthetic(spec));
    spec.seed = 10;
    const auto other = generate_synthetic(spec);
    spec.seed = 9;
    CHECK_FALSE(generate_synthetic(spec) == other);
  }
  SUBCASE("every kind validates and respects value bounds") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      SyntheticSpec spec;
      spec.kind = static_cast<SyntheticKind>(trial % 5);
      spec.n = 1 + static_cast<Index>(rng() % 120);
      spec.bandwidth = static_cast<Index>(rng() % spec.n);
      spec.density = static_cast<double>(rng() % 101) / 100.0;
      spec.block_size = 1 + static_cast<Index>(rng() % spec.n);
      spec.seed = rng();
      const auto m = generate_synthetic(spec);
      CHECK(validate_lower_triangular(m).empty());
      for (Index j = 0; j < m.n; ++j) {
        CHECK(std::abs(m.diagonal(j)) >= 1.0);
        for (Offset k = m.col_ptr[j] + 1; k < m.col_ptr[j + 1]; ++k) CHECK(std::abs(m.values[k]) <= 1.0);
      }
    }
  }
  SUBCASE("invalid specs") {
    CHECK_THROWS_WITH_AS(generate_synthetic({.kind = SyntheticKind::Diagonal, .n = 0}),
                         doctest::Contains("InvalidSpec"), Error);
    CHECK_THROWS_AS(generate_synthetic({.kind = SyntheticKind::BlockDiagonal, .n = 4, .block_size = 5}), Error);
    CHECK_THROWS_AS(generate_synthetic({.kind = SyntheticKind::RandomBanded, .n = 4, .bandwidth = 4}), Error);
    CHECK_THROWS_AS(
        generate_synthetic({.kind = SyntheticKind::RandomBanded, .n = 4, .bandwidth = 2, .density = 1.5}),
        Error);
  }
}

TEST_CASE("spmv_lower") {
  const auto id = csc_from_triplets(2, {{0, 0, 1}, {1, 1, 1}});
  CHECK(spmv_lower(id, std::vector<double>{3, 7}) == std::vector<double>{3, 7});
  CHECK(spmv_lower(small_lower(), std::vector<double>{1, 1}) == std::vector<double>{2, 4});

  const auto bidiag = generate_synthetic({.kind = SyntheticKind::Bidiagonal, .n = 3});
  const std::vector<double> ones{1, 1, 1};
  const auto expected = testing::dense_matvec(testing::to_dense(bidiag), ones);
  CHECK(expected == std::vector<double>{1, 0, 0});
  CHECK(spmv_lower(bidiag, ones) == expected);

  CHECK_THROWS_WITH_AS(spmv_lower(id, std::vector<double>{1}), doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("spmv_lower of a basis vector is the scattered column") {
  const auto m = generate_synthetic(
      {.kind = SyntheticKind::RandomBanded, .n = 80, .bandwidth = 30, .density = 0.4, .seed = 5});
  for (Index j = 0; j < m.n; ++j) {
    std::vector<double> e(static_cast<std::size_t>(m.n), 0.0);
    e[j] = 1.0;
    const auto y = spmv_lower(m, e);
    std::vector<double> col(static_cast<std::size_t>(m.n), 0.0);
    for (Offset k = m.col_ptr[j]; k < m.col_ptr[j + 1]; ++k) col[m.row_idx[k]] = m.values[k];
    CHECK(y == col);
  }
}
