#ifndef IGCERT_COUNTS_HPP_
#define IGCERT_COUNTS_HPP_

#include <cstdint>
#include <gmpxx.h>

#include <string>
#include <vector>

namespace igcert {

// Exact nonnegative integer; the verified instances fit in 64 bits, but the
// closed-form counts are kept exact at every size.
using BigCount = mpz_class;

// Gaussian coefficient [n r]_q = number of r-dimensional subspaces of F_q^n,
// computed from the product formula with exact division at every step.
BigCount gaussian_binomial(int n, int r, uint32_t q);

// |GL_m(F_q)| = (q^m - q^0)(q^m - q^1)...(q^m - q^(m-1)).
BigCount gl_order(int m, uint32_t q);

// Number of idempotents in the rank-r principal factor:
// [n r]_q * q^(r(n-r)), i.e. q^(r(n-r)) per R-class.
BigCount idempotent_count(int n, int r, uint32_t q);

// The generator-count comparison that bounds the low-rank method: for each
// rank the number of idempotents (= presentation generators) against the
// order of GL_r(F_q).
struct Section8Row {
  int r;
  BigCount idempotents;
  BigCount group_order;
  std::string relation;  // "less" | "equal" | "greater"
};

struct Section8Report {
  BigCount idempotents_7_5_2;  // 2,731,008
  BigCount gl_order_5_2;       // 9,999,360
  bool strict_inequality;      // asserted: idempotents < group order
  std::vector<Section8Row> table_n7_q2;  // r = 1..6
};

Section8Report section8_check();

}  // namespace igcert

#endif  // IGCERT_COUNTS_HPP_
