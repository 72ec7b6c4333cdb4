#include "igcert/counts.hpp"

#include <stdexcept>

namespace igcert {

namespace {

BigCount pow_q(uint32_t q, long e) {
  BigCount out;
  mpz_ui_pow_ui(out.get_mpz_t(), q, static_cast<unsigned long>(e));
  return out;
}

}  // namespace

BigCount gaussian_binomial(int n, int r, uint32_t q) {
  if (r < 0 || n < 0 || r > n || q < 2) {
    throw std::invalid_argument("gaussian_binomial requires 0 <= r <= n, q >= 2");
  }
  // (q^n - 1)...(q^(n-r+1) - 1) / ((q^r - 1)...(q - 1)), one exact division
  BigCount num(1), den(1);
  for (int i = 0; i < r; ++i) {
    num *= pow_q(q, n - i) - 1;
    den *= pow_q(q, r - i) - 1;
  }
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw std::logic_error("gaussian_binomial: inexact division");
  }
  BigCount result;
  mpz_divexact(result.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return result;
}

BigCount gl_order(int m, uint32_t q) {
  if (m < 1) {
    throw std::invalid_argument("gl_order requires m >= 1");
  }
  BigCount qm = pow_q(q, m);
  BigCount result(1);
  for (int i = 0; i < m; ++i) {
    result *= qm - pow_q(q, i);
  }
  return result;
}

BigCount idempotent_count(int n, int r, uint32_t q) {
  if (r < 1 || r > n) {
    throw std::invalid_argument("idempotent_count requires 1 <= r <= n");
  }
  return gaussian_binomial(n, r, q) * pow_q(q, long(r) * (n - r));
}

Section8Report section8_check() {
  Section8Report report;
  report.idempotents_7_5_2 = idempotent_count(7, 5, 2);
  report.gl_order_5_2 = gl_order(5, 2);
  report.strict_inequality = report.idempotents_7_5_2 < report.gl_order_5_2;
  for (int r = 1; r <= 6; ++r) {
    Section8Row row;
    row.r = r;
    row.idempotents = idempotent_count(7, r, 2);
    row.group_order = gl_order(r, 2);
    int cmp = mpz_cmp(row.idempotents.get_mpz_t(), row.group_order.get_mpz_t());
    row.relation = cmp < 0 ? "less" : (cmp == 0 ? "equal" : "greater");
    report.table_n7_q2.push_back(std::move(row));
  }
  return report;
}

}  // namespace igcert
