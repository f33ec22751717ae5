#include <array>
#include <cmath>

#include "usp/search.hpp"

namespace usp::search {

namespace {

constexpr std::array<Natural, 24> kSmallOddPrimes{3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
constexpr Natural kFirstUntried = 101;

// f(p^e) given pe = p^e
Natural contribution(Natural p, Natural pe, DivisorKind kind) {
  if (kind == DivisorKind::Unitary) return arith::checked_add(pe, 1);
  return (arith::checked_mul(pe, p) - 1) / (p - 1);
}

}  // namespace

bool image_equals(Natural m, Natural target, DivisorKind kind) {
  if (m == 0 || target == 0) return false;
  Natural t = target;

  auto take = [&](Natural p) {
    Natural pe = 1;
    do {
      m /= p;
      pe *= p;
    } while (m % p == 0);
    Natural c = contribution(p, pe, kind);
    if (t % c != 0) return false;
    t /= c;
    return true;
  };

  if (m % 2 == 0 && !take(2)) return false;
  for (Natural p : kSmallOddPrimes) {
    if (m % p == 0 && !take(p)) return false;
  }
  if (m == 1) return t == 1;

  // f(m) >= m + 1 for m > 1
  if (t <= m) return false;

  // Every prime factor of m is now >= 101, so m has at most K of them and
  // f(m) / m < ratio^K with ratio 102/101 (sigma*) or 101/100 (sigma).
  const long double lm = std::log(static_cast<long double>(m));
  const int k = static_cast<int>(lm / std::log(static_cast<long double>(kFirstUntried))) + 1;
  const long double ratio = kind == DivisorKind::Unitary ? 102.0L / 101.0L : 101.0L / 100.0L;
  const long double ceiling = static_cast<long double>(m) * std::pow(ratio, k) * (1.0L + 1e-12L);
  if (static_cast<long double>(t) > ceiling) return false;

  if (arith::is_prime(m)) return t == m + 1;
  return divisor_function(m, kind) == t;
}

Natural divisor_function(Natural n, DivisorKind kind) {
  auto f = arith::factorize(n);
  return kind == DivisorKind::Unitary ? arith::unitary_sigma(f) : arith::divisor_sigma(f);
}

}  // namespace usp::search
