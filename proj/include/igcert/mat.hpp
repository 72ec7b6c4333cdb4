#ifndef IGCERT_MAT_HPP_
#define IGCERT_MAT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "igcert/gf.hpp"

namespace igcert {

// Strictly increasing tuple of 1-based indices from {1..n}.  Used for leading
// column/row sets and for regions.
struct SubsetR {
  std::vector<int> idx;

  SubsetR() = default;
  explicit SubsetR(std::vector<int> v);  // validates strict increase, idx >= 1

  size_t size() const { return idx.size(); }
  bool contains(int i) const;
  std::string to_string() const;  // "{1,3}"

  friend bool operator==(const SubsetR& a, const SubsetR& b) { return a.idx == b.idx; }
  friend bool operator<(const SubsetR& a, const SubsetR& b) { return a.idx < b.idx; }
};

// Lists all r-element subsets of {1..n} in lexicographic order.
std::vector<SubsetR> subsets_lex(int n, int r);

// Dense matrix over F_q.  Value type: equality is bit-exact on
// (rows, cols, entries), so matrices can key hash tables directly.  All
// operations are pure.
class Mat {
 public:
  Mat() = default;
  Mat(FieldRef field, int rows, int cols);  // zero matrix

  static Mat identity(FieldRef field, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldRef& field() const { return field_; }
  const FieldCtx& ctx() const { return *field_; }

  Fq at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }
  void set(int i, int j, Fq v) { e_[size_t(i) * cols_ + j] = v; }
  const Fq* data() const { return e_.data(); }
  const Fq* row(int i) const { return e_.data() + size_t(i) * cols_; }

  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  FieldRef field_;
  std::vector<Fq> e_;
};

struct MatHash {
  size_t operator()(const Mat& m) const;
};

Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);
int rank(const Mat& m);
Mat rre(const Mat& m);  // the unique reduced row echelon form
bool is_rre(const Mat& m);

// Leading-column set LC(m) of a full-row-rank RRE matrix.  Throws when m is
// not RRE or has a zero row.
SubsetR leading_cols(const Mat& m);

// r x n scattered identity I(i_1|...|i_r): 1 at (j, i_j), 0 elsewhere.
Mat scattered_identity(FieldRef field, int n, const SubsetR& s);

// k x n set form I(A_1|...|A_k): 1 at (j, a) for every a in A_j.  Groups must
// be pairwise disjoint subsets of {1..n}.
Mat scattered_identity_sets(FieldRef field, int n,
                            const std::vector<std::vector<int>>& groups);

// Space comparisons by canonical form: Row A = Row B iff rre(A) == rre(B).
bool row_space_equal(const Mat& a, const Mat& b);
bool col_space_equal(const Mat& a, const Mat& b);

Mat inverse(const Mat& m);  // throws on singular input

// The unique idempotent in the group H-class R(X) cap L(Y), computed as
// E = X (YX)^{-1} Y.  Requires rank(YX) = r; postconditions E^2 = E,
// Col E = Col X, Row E = Row Y.
Mat idempotent_of(const Mat& X, const Mat& Y);

// Text serialization "rows cols q : d d d ..." with row-major codes as hex
// digits (q <= 16).
std::string mat_to_text(const Mat& m);
Mat mat_from_text(FieldRef field, const std::string& text);

// Bare row-major hex digit string; dimensions implied by context.
std::string mat_digits(const Mat& m);
Mat mat_from_digits(FieldRef field, int rows, int cols, const std::string& digits);

}  // namespace igcert

#endif  // IGCERT_MAT_HPP_
