#include "doctest.h"

#include "igcert/counts.hpp"

using namespace igcert;

TEST_CASE("gaussian binomial") {
  CHECK(gaussian_binomial(7, 0, 2) == 1);
  CHECK(gaussian_binomial(4, 1, 2) == 15);
  CHECK(gaussian_binomial(7, 2, 2) == 2667);  // (127*63)/(3*1)
  CHECK(gaussian_binomial(7, 5, 2) == 2667);  // symmetric
  CHECK(gaussian_binomial(4, 1, 3) == 40);
  CHECK_THROWS_AS(gaussian_binomial(3, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_binomial(3, 1, 1), std::invalid_argument);
}

TEST_CASE("q-Pascal identity") {
  // [n r]_q = q^r [n-1 r]_q + [n-1 r-1]_q, an independent route through the
  // recursion cross-checking the product formula
  for (uint32_t q : {2u, 3u, 4u}) {
    for (int n = 1; n <= 12; ++n) {
      for (int r = 1; r <= n; ++r) {
        BigCount qr(1);
        for (int i = 0; i < r; ++i) qr *= q;
        BigCount lhs = gaussian_binomial(n, r, q);
        BigCount rhs = (r <= n - 1 ? qr * gaussian_binomial(n - 1, r, q)
                                   : BigCount(0))
                       + gaussian_binomial(n - 1, r - 1, q);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("general linear group order") {
  CHECK(gl_order(1, 2) == 1);
  CHECK(gl_order(1, 3) == 2);
  CHECK(gl_order(1, 7) == 6);
  CHECK(gl_order(2, 2) == 6);  // 3*2
  CHECK(gl_order(2, 3) == 48);
  CHECK(gl_order(5, 2) == 9999360);  // 31*30*28*24*16
  CHECK_THROWS_AS(gl_order(0, 2), std::invalid_argument);
}

TEST_CASE("idempotent counts") {
  CHECK(idempotent_count(7, 5, 2) == 2731008);  // 2^10 (2^7-1)(2^6-1)/3
  CHECK(idempotent_count(4, 1, 2) == 120);
  CHECK(idempotent_count(4, 4, 2) == 1);  // only the identity at full rank
  CHECK(idempotent_count(5, 5, 3) == 1);
}

TEST_CASE("generator shortfall at (7, 5, 2)") {
  Section8Report report = section8_check();
  CHECK(report.idempotents_7_5_2 == 2731008);
  CHECK(report.gl_order_5_2 == 9999360);
  CHECK(report.strict_inequality);
  CHECK(report.table_n7_q2.size() == 6);
  // low ranks have generators to spare, high ranks fall short
  CHECK(report.table_n7_q2[0].relation == "greater");  // r = 1: 8128 vs 1
  CHECK(report.table_n7_q2[4].relation == "less");     // r = 5
}
