#include "usp/arith.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace usp::arith {

using u128 = unsigned __int128;

Natural mul_mod(Natural a, Natural b, Natural m) {
  return static_cast<Natural>(static_cast<u128>(a) * b % m);
}

Natural pow_mod(Natural b, Natural e, Natural m) {
  if (m == 0) throw std::invalid_argument("pow_mod: modulus must be >= 1");
  Natural r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

int jacobi(std::int64_t a, Natural n) {
  if (n % 2 == 0) throw std::invalid_argument("jacobi: n must be odd, got " + std::to_string(n));
  Natural x;
  if (a >= 0) {
    x = static_cast<Natural>(a) % n;
  } else {
    // magnitude of a as unsigned avoids overflow at INT64_MIN
    Natural mag = static_cast<Natural>(-(a + 1)) + 1;
    x = (n - mag % n) % n;
  }
  int t = 1;
  while (x != 0) {
    int s = std::countr_zero(x);
    x >>= s;
    // (2/n) = -1 iff n = 3, 5 (mod 8)
    if ((s & 1) && (n % 8 == 3 || n % 8 == 5)) t = -t;
    // reciprocity: flip when both are 3 (mod 4)
    if (x % 4 == 3 && n % 4 == 3) t = -t;
    Natural tmp = n % x;
    n = x;
    x = tmp;
  }
  return n == 1 ? t : 0;
}

unsigned valuation(Natural p, Natural n) {
  if (p < 2) throw std::invalid_argument("valuation: base must be >= 2");
  if (n == 0) throw std::invalid_argument("valuation: v_p(0) is undefined");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

Natural multiplicative_order(Natural p, Natural q) {
  if (!is_prime(q)) throw std::invalid_argument("multiplicative_order: modulus must be prime");
  if (p % q == 0)
    throw std::invalid_argument("multiplicative_order: " + std::to_string(q) + " divides " +
                                std::to_string(p));
  Natural d = q - 1;
  for (const auto& [r, e] : factorize(q - 1)) {
    for (unsigned i = 0; i < e && pow_mod(p, d / r, q) == 1; ++i) d /= r;
  }
  return d;
}

unsigned lifting_valuation(Natural p, Natural q) {
  if (p == q) throw std::invalid_argument("lifting_valuation: p and q must differ");
  if (!is_prime(p) || !is_prime(q))
    throw std::invalid_argument("lifting_valuation: arguments must be prime");
  const Natural d = multiplicative_order(p, q);
  unsigned v = 0;
  Natural modulus = q;
  // p^d = 1 (mod q^(v+1)) for increasing v
  while (pow_mod(p, d, modulus) == 1) {
    ++v;
    Natural next;
    if (__builtin_mul_overflow(modulus, q, &next))
      throw std::overflow_error("lifting_valuation: q-power exceeds 64-bit range");
    modulus = next;
  }
  return v;
}

}  // namespace usp::arith
