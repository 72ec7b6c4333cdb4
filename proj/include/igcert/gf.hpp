#ifndef IGCERT_GF_HPP_
#define IGCERT_GF_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace igcert {

// Element of F_q, stored as a canonical integer code in [0, q).  Codes 0 and
// 1 are the additive and multiplicative identities; for extension fields the
// code sum_i c_i p^i stands for the polynomial sum_i c_i x^i.  Canonical codes
// make matrices hashable and comparable bit-exactly.
struct Fq {
  uint8_t code = 0;

  friend constexpr bool operator==(Fq a, Fq b) { return a.code == b.code; }
  friend constexpr bool operator!=(Fq a, Fq b) { return a.code != b.code; }
  friend constexpr bool operator<(Fq a, Fq b) { return a.code < b.code; }
};

class FieldCtx;
using FieldRef = std::shared_ptr<const FieldCtx>;

// Arithmetic context for F_q, q = p^deg a prime power.  All operations are
// precomputed into dense tables so the matrix kernels reduce to table
// lookups.  Immutable after construction, safe for unrestricted concurrent
// reads.
//
// Every finite division ring is a field (Wedderburn), so left and right
// scalar multiplication coincide and row/column computations need no side
// distinction anywhere in this library.
class FieldCtx {
 public:
  uint32_t q;    // cardinality
  uint32_t p;    // characteristic
  uint32_t deg;  // extension degree, q = p^deg
  std::vector<uint32_t> poly;  // modulus coefficients c_0..c_deg (deg >= 2 only)

  Fq add(Fq a, Fq b) const { return {add_tab_[idx(a, b)]}; }
  Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }
  Fq mul(Fq a, Fq b) const { return {mul_tab_[idx(a, b)]}; }
  Fq neg(Fq a) const { return {neg_tab_[a.code]}; }
  Fq inv(Fq a) const;  // domain_error on a == 0

  uint8_t add_code(uint8_t a, uint8_t b) const { return add_tab_[size_t(a) * q + b]; }
  uint8_t mul_code(uint8_t a, uint8_t b) const { return mul_tab_[size_t(a) * q + b]; }
  const uint8_t* add_table() const { return add_tab_.data(); }
  const uint8_t* mul_table() const { return mul_tab_.data(); }

  Fq zero() const { return {0}; }
  Fq one() const { return {1}; }
  Fq element(uint32_t code) const;  // bounds-checked

  static FieldRef make(uint32_t q,
                       std::optional<std::vector<uint32_t>> irreducible_poly
                       = std::nullopt);

 private:
  FieldCtx() = default;
  size_t idx(Fq a, Fq b) const { return size_t(a.code) * q + b.code; }

  std::vector<uint8_t> add_tab_;  // q*q
  std::vector<uint8_t> mul_tab_;  // q*q
  std::vector<uint8_t> neg_tab_;  // q
  std::vector<uint8_t> inv_tab_;  // q, entry 0 unused
};

// Builds the arithmetic context for F_q.  For prime q this is modular
// arithmetic; for q = p^k, k >= 2, the field is F_p[x]/(f) where f is the
// supplied irreducible polynomial (coefficients c_0..c_k, monic) or a
// built-in modulus for q in {4, 8, 9}.  Throws std::invalid_argument when q
// is not a prime power, or the polynomial is missing, reducible, non-monic
// or of the wrong degree.
FieldRef make_field(uint32_t q,
                    std::optional<std::vector<uint32_t>> irreducible_poly
                    = std::nullopt);

}  // namespace igcert

#endif  // IGCERT_GF_HPP_
