#include "doctest.h"

#include "igcert/gf.hpp"

using namespace igcert;

namespace {

// Exhaustive field-axiom check; feasible for every supported q <= 16.
void check_field_axioms(const FieldRef& F) {
  const uint32_t q = F->q;
  for (uint32_t a = 0; a < q; ++a) {
    Fq fa = F->element(a);
    CHECK(F->add(fa, F->zero()) == fa);
    CHECK(F->mul(fa, F->one()) == fa);
    CHECK(F->add(fa, F->neg(fa)) == F->zero());
    if (a != 0) {
      CHECK(F->mul(fa, F->inv(fa)) == F->one());
      CHECK(F->inv(F->inv(fa)) == fa);
    }
    for (uint32_t b = 0; b < q; ++b) {
      Fq fb = F->element(b);
      CHECK(F->add(fa, fb) == F->add(fb, fa));
      CHECK(F->mul(fa, fb) == F->mul(fb, fa));
      for (uint32_t c = 0; c < q; ++c) {
        Fq fc = F->element(c);
        CHECK(F->add(F->add(fa, fb), fc) == F->add(fa, F->add(fb, fc)));
        CHECK(F->mul(F->mul(fa, fb), fc) == F->mul(fa, F->mul(fb, fc)));
        CHECK(F->mul(fa, F->add(fb, fc)) == F->add(F->mul(fa, fb), F->mul(fa, fc)));
      }
    }
  }
}

}  // namespace

TEST_CASE("prime fields") {
  FieldRef f2 = make_field(2);
  CHECK(f2->add(f2->one(), f2->one()) == f2->zero());
  CHECK(f2->mul(f2->one(), f2->one()) == f2->one());

  FieldRef f3 = make_field(3);
  CHECK(f3->mul(f3->element(2), f3->element(2)) == f3->one());

  FieldRef f5 = make_field(5);
  CHECK(f5->inv(f5->element(2)) == f5->element(3));  // 2*3 = 6 = 1 mod 5
}

TEST_CASE("extension fields") {
  FieldRef f4 = make_field(4, std::vector<uint32_t>{1, 1, 1});
  // the generator g (code 2) satisfies g^2 = g + 1 (code 3)
  CHECK(f4->mul(f4->element(2), f4->element(2)) == f4->element(3));

  // built-in moduli
  CHECK(make_field(4)->q == 4);
  CHECK(make_field(8)->q == 8);
  CHECK(make_field(9)->q == 9);
  CHECK(make_field(9)->p == 3);
  CHECK(make_field(9)->deg == 2);
}

TEST_CASE("field axioms hold exhaustively") {
  for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    check_field_axioms(make_field(q));
  }
  // q = 16 has no built-in modulus; x^4 + x + 1 is irreducible over F_2
  check_field_axioms(make_field(16, std::vector<uint32_t>{1, 1, 0, 0, 1}));
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(make_field(1), std::invalid_argument);
  CHECK_THROWS_AS(make_field(6), std::invalid_argument);
  CHECK_THROWS_AS(make_field(12), std::invalid_argument);
  // x^2 + 1 = (x+1)^2 over F_2
  CHECK_THROWS_AS(make_field(4, std::vector<uint32_t>{1, 0, 1}),
                  std::invalid_argument);
  // wrong degree
  CHECK_THROWS_AS(make_field(8, std::vector<uint32_t>{1, 1, 1}),
                  std::invalid_argument);
  // not monic
  CHECK_THROWS_AS(make_field(9, std::vector<uint32_t>{1, 1, 2}),
                  std::invalid_argument);
  // primes take no modulus
  CHECK_THROWS_AS(make_field(5, std::vector<uint32_t>{1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_field(16), std::invalid_argument);

  FieldRef f3 = make_field(3);
  CHECK_THROWS_AS(f3->inv(f3->zero()), std::domain_error);
  CHECK_THROWS_AS(f3->element(3), std::invalid_argument);
}
