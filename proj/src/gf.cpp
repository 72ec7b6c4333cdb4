#include "igcert/gf.hpp"

#include <stdexcept>
#include <string>

namespace igcert {

namespace {

constexpr uint32_t kMaxQ = 256;  // codes must fit in a byte

// Polynomials over F_p as coefficient vectors, index = degree.
using Poly = std::vector<uint32_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) {
    f.pop_back();
  }
}

Poly poly_mod(Poly a, const Poly& m, uint32_t p) {
  trim(a);
  while (a.size() >= m.size()) {
    uint32_t lead = a.back();  // m is monic
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      a[i + shift] = (a[i + shift] + p * lead - (lead * m[i]) % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, uint32_t p) {
  if (a.empty() || b.empty()) {
    return {};
  }
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
  }
  return out;
}

// Brute force: f (monic, degree k >= 2) has a monic divisor of degree d with
// 1 <= d <= k/2 iff it is reducible.  Fine at the sizes we allow (p^k <= 256).
bool is_irreducible(const Poly& f, uint32_t p) {
  size_t k = f.size() - 1;
  for (size_t d = 1; 2 * d <= k; ++d) {
    uint64_t count = 1;
    for (size_t i = 0; i < d; ++i) {
      count *= p;
    }
    for (uint64_t c = 0; c < count; ++c) {
      Poly g(d + 1, 0);
      g[d] = 1;
      uint64_t rest = c;
      for (size_t i = 0; i < d; ++i) {
        g[i] = rest % p;
        rest /= p;
      }
      if (poly_mod(f, g, p).empty()) {
        return false;
      }
    }
  }
  return true;
}

uint32_t code_of(const Poly& f, uint32_t p) {
  uint32_t code = 0;
  for (size_t i = f.size(); i-- > 0;) {
    code = code * p + f[i];
  }
  return code;
}

Poly poly_of(uint32_t code, uint32_t p) {
  Poly f;
  while (code > 0) {
    f.push_back(code % p);
    code /= p;
  }
  return f;
}

bool factor_prime_power(uint32_t q, uint32_t& p, uint32_t& deg) {
  if (q < 2) {
    return false;
  }
  uint32_t base = q;
  for (uint32_t d = 2; d * d <= base; ++d) {
    if (base % d == 0) {
      base = d;
      break;
    }
  }
  // base is the smallest prime factor of q; q must be a power of it
  uint32_t e = 0;
  uint32_t rest = q;
  while (rest % base == 0) {
    rest /= base;
    ++e;
  }
  if (rest != 1) {
    return false;
  }
  p = base;
  deg = e;
  return true;
}

Poly builtin_modulus(uint32_t q) {
  switch (q) {
    case 4:
      return {1, 1, 1};  // x^2 + x + 1 over F_2
    case 8:
      return {1, 1, 0, 1};  // x^3 + x + 1 over F_2
    case 9:
      return {1, 0, 1};  // x^2 + 1 over F_3
    default:
      return {};
  }
}

}  // namespace

Fq FieldCtx::inv(Fq a) const {
  if (a.code == 0) {
    throw std::domain_error("F_" + std::to_string(q) + ": inverse of 0");
  }
  return {inv_tab_[a.code]};
}

Fq FieldCtx::element(uint32_t code) const {
  if (code >= q) {
    throw std::invalid_argument("element code " + std::to_string(code)
                                + " out of range for F_" + std::to_string(q));
  }
  return {static_cast<uint8_t>(code)};
}

FieldRef FieldCtx::make(uint32_t q,
                        std::optional<std::vector<uint32_t>> irreducible_poly) {
  uint32_t p = 0;
  uint32_t deg = 0;
  if (!factor_prime_power(q, p, deg)) {
    throw std::invalid_argument("q = " + std::to_string(q)
                                + " is not a prime power");
  }
  if (q > kMaxQ) {
    throw std::invalid_argument("q = " + std::to_string(q) + " exceeds the "
                                + std::to_string(kMaxQ) + "-element limit");
  }

  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->q = q;
  ctx->p = p;
  ctx->deg = deg;

  Poly modulus;
  if (deg >= 2) {
    if (irreducible_poly) {
      modulus = *irreducible_poly;
      trim(modulus);
      if (modulus.size() != deg + 1) {
        throw std::invalid_argument("modulus polynomial must have degree "
                                    + std::to_string(deg));
      }
      if (modulus.back() != 1) {
        throw std::invalid_argument("modulus polynomial must be monic");
      }
      for (uint32_t c : modulus) {
        if (c >= p) {
          throw std::invalid_argument(
              "modulus coefficients must lie in [0, p)");
        }
      }
      if (!is_irreducible(modulus, p)) {
        throw std::invalid_argument("modulus polynomial is reducible over F_"
                                    + std::to_string(p));
      }
    } else {
      modulus = builtin_modulus(q);
      if (modulus.empty()) {
        throw std::invalid_argument(
            "no built-in modulus for q = " + std::to_string(q)
            + "; pass an irreducible polynomial of degree "
            + std::to_string(deg));
      }
    }
    ctx->poly = modulus;
  } else if (irreducible_poly) {
    throw std::invalid_argument("prime q takes no modulus polynomial");
  }

  ctx->add_tab_.assign(size_t(q) * q, 0);
  ctx->mul_tab_.assign(size_t(q) * q, 0);
  ctx->neg_tab_.assign(q, 0);
  ctx->inv_tab_.assign(q, 0);

  for (uint32_t a = 0; a < q; ++a) {
    Poly fa = poly_of(a, p);
    for (uint32_t b = 0; b < q; ++b) {
      Poly fb = poly_of(b, p);
      uint32_t sum, prod;
      if (deg == 1) {
        sum = (a + b) % p;
        prod = (a * b) % p;
      } else {
        Poly s(std::max(fa.size(), fb.size()), 0);
        for (size_t i = 0; i < fa.size(); ++i) s[i] = fa[i];
        for (size_t i = 0; i < fb.size(); ++i) s[i] = (s[i] + fb[i]) % p;
        trim(s);
        sum = code_of(s, p);
        prod = code_of(poly_mod(poly_mul(fa, fb, p), modulus, p), p);
      }
      ctx->add_tab_[size_t(a) * q + b] = static_cast<uint8_t>(sum);
      ctx->mul_tab_[size_t(a) * q + b] = static_cast<uint8_t>(prod);
      if (sum == 0) {
        ctx->neg_tab_[a] = static_cast<uint8_t>(b);
      }
      if (prod == 1) {
        ctx->inv_tab_[a] = static_cast<uint8_t>(b);
      }
    }
  }
  return ctx;
}

FieldRef make_field(uint32_t q,
                    std::optional<std::vector<uint32_t>> irreducible_poly) {
  return FieldCtx::make(q, std::move(irreducible_poly));
}

}  // namespace igcert
