#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "doctest.h"

#include "igcert/mat.hpp"

using namespace igcert;

namespace {

Mat random_mat(FieldRef F, int rows, int cols, std::mt19937_64& rng) {
  Mat m(F, rows, cols);
  std::uniform_int_distribution<uint32_t> dist(0, F->q - 1);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m.set(i, j, F->element(dist(rng)));
    }
  }
  return m;
}

// every matrix of a given shape, code-odometer order
std::vector<Mat> all_mats(FieldRef F, int rows, int cols) {
  std::vector<Mat> out;
  std::vector<uint8_t> codes(size_t(rows) * cols, 0);
  while (true) {
    Mat m(F, rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        m.set(i, j, {codes[size_t(i) * cols + j]});
      }
    }
    out.push_back(std::move(m));
    size_t t = codes.size();
    while (t > 0 && codes[t - 1] == F->q - 1) {
      codes[t - 1] = 0;
      --t;
    }
    if (t == 0) break;
    ++codes[t - 1];
  }
  return out;
}

// spans of the rows, by brute-force closure; the independent oracle for
// row-space comparisons at tiny sizes
std::set<std::string> row_span(const Mat& m) {
  const FieldCtx& F = m.ctx();
  std::set<std::string> span;
  std::vector<std::vector<uint8_t>> vecs{std::vector<uint8_t>(m.cols(), 0)};
  span.insert(std::string(m.cols(), '0'));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<uint8_t>> next = vecs;
    for (const auto& v : vecs) {
      for (int i = 0; i < m.rows(); ++i) {
        for (uint32_t c = 0; c < F.q; ++c) {
          std::vector<uint8_t> w(m.cols());
          std::string key;
          for (int j = 0; j < m.cols(); ++j) {
            w[j] = F.add_code(v[j], F.mul_code(uint8_t(c), m.at(i, j).code));
            key += char('0' + w[j]);
          }
          if (span.insert(key).second) {
            next.push_back(w);
            grew = true;
          }
        }
      }
    }
    vecs = std::move(next);
  }
  return span;
}

}  // namespace

TEST_CASE("matmul") {
  FieldRef f2 = make_field(2);
  Mat ones = mat_from_digits(f2, 2, 2, "1111");
  CHECK(matmul(ones, ones) == Mat(f2, 2, 2));  // characteristic 2
  Mat m = mat_from_digits(f2, 2, 3, "101110");
  CHECK(matmul(Mat::identity(f2, 2), m) == m);

  // block row [0 | I_r | A | 0] times block column [I_r; 0; B; 0] is AB
  FieldRef f3 = make_field(3);
  int r = 2, n = 7;
  Mat A = mat_from_digits(f3, r, r, "1202");
  Mat B = mat_from_digits(f3, r, r, "2011");
  Mat row(f3, r, n), col(f3, n, r);
  for (int i = 0; i < r; ++i) {
    row.set(i, r + i, f3->one());
    col.set(i, i, f3->one());
    for (int j = 0; j < r; ++j) {
      row.set(i, 2 * r + j, A.at(i, j));
      col.set(2 * r + i, j, B.at(i, j));
    }
  }
  CHECK(matmul(row, col) == matmul(A, B));

  CHECK_THROWS_AS(matmul(Mat(f2, 2, 3), Mat(f2, 2, 3)), std::invalid_argument);
}

TEST_CASE("rank") {
  FieldRef f2 = make_field(2);
  CHECK(rank(Mat::identity(f2, 4)) == 4);
  CHECK(rank(Mat(f2, 3, 5)) == 0);
  CHECK(rank(mat_from_digits(f2, 2, 2, "1111")) == 1);
}

TEST_CASE("rre examples and idempotence") {
  FieldRef f2 = make_field(2);
  // [[1,1,0],[0,1,0]] reduces with leading columns {1,2}
  Mat m = mat_from_digits(f2, 2, 3, "110010");
  Mat r = rre(m);
  CHECK(is_rre(r));
  CHECK(leading_cols(r) == SubsetR({1, 2}));
  CHECK(rre(Mat::identity(f2, 3)) == Mat::identity(f2, 3));

  // row permutations of the identity reduce back to the identity
  Mat perm = mat_from_digits(f2, 3, 3, "010100001");
  CHECK(rre(perm) == Mat::identity(f2, 3));

  // rre is idempotent over every 2x3 matrix, F_2 and F_3
  for (uint32_t q : {2u, 3u}) {
    FieldRef F = make_field(q);
    for (const Mat& a : all_mats(F, 2, 3)) {
      Mat once = rre(a);
      CHECK(is_rre(once));
      CHECK(rre(once) == once);
      CHECK(row_space_equal(a, once));
    }
  }
}

TEST_CASE("is_rre and leading_cols") {
  FieldRef f2 = make_field(2);
  CHECK_FALSE(is_rre(mat_from_digits(f2, 2, 2, "0110")));  // pivot order violated
  Mat m = mat_from_digits(f2, 2, 4, "1101" "0010");
  CHECK(is_rre(m));
  CHECK(leading_cols(m) == SubsetR({1, 3}));
  CHECK(leading_cols(scattered_identity(f2, 4, SubsetR({1, 3}))) == SubsetR({1, 3}));
  CHECK_THROWS_AS(leading_cols(mat_from_digits(f2, 2, 2, "0110")),
                  std::invalid_argument);
  CHECK_THROWS_AS(leading_cols(Mat(f2, 2, 2)), std::invalid_argument);
}

TEST_CASE("scattered identities") {
  FieldRef f2 = make_field(2);
  CHECK(scattered_identity(f2, 3, SubsetR({1, 2, 3})) == Mat::identity(f2, 3));
  Mat i12 = scattered_identity_sets(f2, 6, {{1, 2}});
  CHECK(mat_digits(i12) == "110000");
  Mat s = scattered_identity(f2, 6, SubsetR({1, 2}));
  CHECK(matmul(s, transpose(s)) == Mat::identity(f2, 2));

  CHECK_THROWS_AS(scattered_identity(f2, 3, SubsetR({1, 4})), std::invalid_argument);
  CHECK_THROWS_AS(scattered_identity_sets(f2, 4, {{1, 2}, {2, 3}}),
                  std::invalid_argument);
}

TEST_CASE("row and column space comparison") {
  FieldRef f2 = make_field(2);
  CHECK_FALSE(row_space_equal(mat_from_digits(f2, 1, 2, "11"),
                              mat_from_digits(f2, 1, 2, "10")));

  // exhaustive at n = 2, q = 2: agreement with the span oracle, equivalence,
  // and invariance under invertible left multiplication
  std::vector<Mat> all = all_mats(f2, 2, 2);
  for (const Mat& a : all) {
    CHECK(row_space_equal(a, a));
    for (const Mat& b : all) {
      bool eq = row_space_equal(a, b);
      CHECK(eq == (row_span(a) == row_span(b)));
      CHECK(eq == row_space_equal(b, a));
      if (rank(b) == 2) {
        CHECK(row_space_equal(a, matmul(b, a)));
      }
    }
  }

  Mat padded(f2, 2, 3);
  padded.set(0, 0, f2->one());
  padded.set(1, 1, f2->one());
  CHECK_FALSE(row_space_equal(padded, Mat(f2, 2, 3)));

  CHECK(col_space_equal(mat_from_digits(f2, 2, 2, "1010"),
                        mat_from_digits(f2, 2, 2, "1111")));
}

TEST_CASE("idempotent_of") {
  FieldRef f2 = make_field(2);
  Mat Y = scattered_identity(f2, 4, SubsetR({1, 2}));
  Mat X = transpose(Y);
  Mat E = idempotent_of(X, Y);
  Mat W(f2, 4, 4);
  W.set(0, 0, f2->one());
  W.set(1, 1, f2->one());
  CHECK(E == W);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Mat y = random_mat(f2, 1, 4, rng);
    Mat x = random_mat(f2, 4, 1, rng);
    if (rank(matmul(y, x)) < 1) continue;
    Mat e = idempotent_of(x, y);
    CHECK(matmul(e, e) == e);
    CHECK(col_space_equal(e, x));
    CHECK(row_space_equal(e, y));
  }
  CHECK_THROWS_AS(idempotent_of(Mat(f2, 4, 1), Mat(f2, 1, 4)),
                  std::invalid_argument);
}

TEST_CASE("rank is submultiplicative on samples") {
  FieldRef f3 = make_field(3);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Mat a = random_mat(f3, 3, 4, rng);
    Mat b = random_mat(f3, 4, 2, rng);
    CHECK(rank(matmul(a, b)) <= std::min(rank(a), rank(b)));
  }
}

TEST_CASE("serialization") {
  FieldRef f4 = make_field(4);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Mat m = random_mat(f4, 2, 5, rng);
    CHECK(mat_from_text(f4, mat_to_text(m)) == m);
    CHECK(mat_from_digits(f4, 2, 5, mat_digits(m)) == m);
  }
  Mat m = mat_from_digits(f4, 1, 3, "023");
  CHECK(mat_to_text(m) == "1 3 4 : 0 2 3");
  CHECK_THROWS_AS(mat_from_text(f4, "1 1 5 : 0"), std::invalid_argument);
  CHECK_THROWS_AS(mat_from_digits(f4, 2, 2, "012"), std::invalid_argument);
}
