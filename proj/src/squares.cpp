#include "igcert/squares.hpp"

#include <functional>
#include <stdexcept>

namespace igcert {

bool is_singular(const ProductTable& P, int32_t x, int32_t xp, int32_t y, int32_t yp) {
  if (x < 0 || x >= P.n_cols || xp < 0 || xp >= P.n_cols || y < 0 || y >= P.n_rows
      || yp < 0 || yp >= P.n_rows) {
    throw std::out_of_range("is_singular: vertex id out of range");
  }
  if (x == xp || y == yp) {
    return false;  // degenerate squares are excluded
  }
  uint16_t v_yx = P.cell(y, x);
  uint16_t v_ypx = P.cell(yp, x);
  uint16_t v_yxp = P.cell(y, xp);
  uint16_t v_ypxp = P.cell(yp, xp);
  if (P.policy == ZeroPolicy::kZeroIfSingular
      && (v_yx == 0 || v_ypx == 0 || v_yxp == 0 || v_ypxp == 0)) {
    return false;
  }
  return matmul(P.value(v_yx), inverse(P.value(v_ypx)))
         == matmul(P.value(v_yxp), inverse(P.value(v_ypxp)));
}

Fig8Square stage3_square(FieldRef field, int n, int r, const Mat& A, const Mat& B) {
  if (n <= 3 * r) {
    throw std::invalid_argument("stage3_square requires n > 3r");
  }
  if (A.rows() != r || A.cols() != r || B.rows() != r || B.cols() != r) {
    throw std::invalid_argument("stage3_square: A, B must be r x r");
  }
  if (rank(A) < r || rank(B) < r) {
    throw std::invalid_argument("stage3_square: A, B must be invertible");
  }
  Fig8Square sq;
  sq.A = A;
  sq.B = B;
  sq.AB = matmul(A, B);

  Mat Y(field, r, n);
  Mat Yp(field, r, n);
  for (int i = 0; i < r; ++i) {
    Y.set(i, r + i, field->one());
    Yp.set(i, 2 * r + i, field->one());
    for (int j = 0; j < r; ++j) {
      Y.set(i, 2 * r + j, A.at(i, j));
    }
  }
  Mat X(field, n, r);
  Mat Xp(field, n, r);
  for (int i = 0; i < r; ++i) {
    X.set(2 * r + i, i, field->one());
    Xp.set(i, i, field->one());
    for (int j = 0; j < r; ++j) {
      Xp.set(2 * r + i, j, B.at(i, j));
    }
  }
  if (!is_rre(Y) || !is_rre(Yp) || !is_rre(transpose(X)) || !is_rre(transpose(Xp))) {
    throw std::logic_error("stage3_square produced a non-RRE matrix");
  }
  if (matmul(Y, X) != A || matmul(Y, Xp) != sq.AB
      || matmul(Yp, X) != Mat::identity(field, r) || matmul(Yp, Xp) != B) {
    throw std::logic_error("stage3_square cell values do not match");
  }
  sq.Y = std::move(Y);
  sq.Yp = std::move(Yp);
  sq.X = std::move(X);
  sq.Xp = std::move(Xp);
  return sq;
}

Fig8Square stage3_square(const RankedSet& ys, const Mat& A, const Mat& B) {
  Fig8Square sq = stage3_square(ys.field, ys.n, ys.r, A, B);
  sq.ids.y = ys.id_of_y(sq.Y);
  sq.ids.yp = ys.id_of_y(sq.Yp);
  sq.ids.x = ys.id_of_x(sq.X);
  sq.ids.xp = ys.id_of_x(sq.Xp);
  if (sq.ids.y < 0 || sq.ids.yp < 0 || sq.ids.x < 0 || sq.ids.xp < 0) {
    throw std::logic_error("stage3_square matrices are not enumerated vertices");
  }
  return sq;
}

void squares_through(const ProductTable& P, int64_t cell_a, int64_t cell_b,
                     const std::function<bool(const SingularSquare&)>& visit) {
  int64_t ya = cell_a / P.n_cols, xa = cell_a % P.n_cols;
  int64_t yb = cell_b / P.n_cols, xb = cell_b % P.n_cols;
  if (cell_a == cell_b || (ya != yb && xa != xb)) {
    throw std::invalid_argument("squares_through: cells must share a row or a column");
  }
  if (ya == yb) {
    for (int64_t yp = 0; yp < P.n_rows; ++yp) {
      if (yp == ya) continue;
      SingularSquare sq{int32_t(xa), int32_t(xb), int32_t(ya), int32_t(yp)};
      if (is_singular(P, sq.x, sq.xp, sq.y, sq.yp) && !visit(sq)) {
        return;
      }
    }
  } else {
    for (int64_t xp = 0; xp < P.n_cols; ++xp) {
      if (xp == xa) continue;
      SingularSquare sq{int32_t(xa), int32_t(xp), int32_t(ya), int32_t(yb)};
      if (is_singular(P, sq.x, sq.xp, sq.y, sq.yp) && !visit(sq)) {
        return;
      }
    }
  }
}

std::vector<SingularSquare> squares_through(const ProductTable& P, int64_t cell_a,
                                            int64_t cell_b, size_t limit) {
  std::vector<SingularSquare> out;
  squares_through(P, cell_a, cell_b, [&](const SingularSquare& sq) {
    out.push_back(sq);
    return out.size() < limit;
  });
  return out;
}

std::vector<Mat> general_linear_group(FieldRef field, int r) {
  const uint32_t q = field->q;
  double total = 1.0;
  for (int i = 0; i < r * r; ++i) total *= q;
  if (total > 1e7) {
    throw BudgetError("general_linear_group: q^(r^2) too large to enumerate");
  }
  std::vector<Mat> out;
  std::vector<uint8_t> codes(size_t(r) * r, 0);
  while (true) {
    Mat m(field, r, r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        m.set(i, j, {codes[size_t(i) * r + j]});
      }
    }
    if (rank(m) == r) {
      out.push_back(std::move(m));
    }
    size_t t = codes.size();
    while (t > 0 && codes[t - 1] == q - 1) {
      codes[t - 1] = 0;
      --t;
    }
    if (t == 0) break;
    ++codes[t - 1];
  }
  return out;
}

}  // namespace igcert
