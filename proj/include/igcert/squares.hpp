#ifndef IGCERT_SQUARES_HPP_
#define IGCERT_SQUARES_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "igcert/tables.hpp"

namespace igcert {

// Coordinates (X, X', Y, Y') of an E-square of idempotents
// (e_{X,Y}, e_{X,Y'}, e_{X',Y'}, e_{X',Y}).
struct SingularSquare {
  int32_t x;
  int32_t xp;
  int32_t y;
  int32_t yp;
};

// Rectangular-band test for the square (x, x', y, y'): all four cells nonzero
// and P(Y,X) P(Y',X)^{-1} = P(Y,X') P(Y',X')^{-1} in GL_r.  Degenerate
// squares (x = x' or y = y') and squares with a zero cell return false, which
// is distinct from an id-range error.
bool is_singular(const ProductTable& P, int32_t x, int32_t xp, int32_t y, int32_t yp);

// The explicit multiplication-table square: for A, B in GL_r and n > 3r,
//   Y  = [0 | I_r | A | 0]     X  = [0; 0; I_r; 0]
//   Y' = [0 | 0 | I_r | 0]     X' = [I_r; 0; B; 0]
// with cell values A, AB, I_r, B.  All four matrices are in RRE form (resp.
// transposed RRE) by construction; this is re-checked, as is singularity.
struct Fig8Square {
  Mat Y, Yp;  // r x n
  Mat X, Xp;  // n x r
  Mat A, B, AB;
  SingularSquare ids{-1, -1, -1, -1};  // resolved when a RankedSet is supplied
};

Fig8Square stage3_square(FieldRef field, int n, int r, const Mat& A, const Mat& B);
Fig8Square stage3_square(const RankedSet& ys, const Mat& A, const Mat& B);

// Lazily yields the singular squares through two cells that share a row or a
// column.  Visits candidate fourth lines in id order; stops early when the
// visitor returns false.
void squares_through(const ProductTable& P, int64_t cell_a, int64_t cell_b,
                     const std::function<bool(const SingularSquare&)>& visit);

// Convenience: collect up to `limit` squares through the two cells.
std::vector<SingularSquare> squares_through(const ProductTable& P, int64_t cell_a,
                                            int64_t cell_b, size_t limit);

// All invertible r x r matrices over the field, in code-odometer order.
std::vector<Mat> general_linear_group(FieldRef field, int r);

}  // namespace igcert

#endif  // IGCERT_SQUARES_HPP_
