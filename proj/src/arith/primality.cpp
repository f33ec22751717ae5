#include "usp/arith.hpp"

#include <array>
#include <bit>
#include <cmath>

namespace usp::arith {

namespace {

// Witness set of Jim Sinclair; deterministic for every n < 2^64.
constexpr std::array<Natural, 7> kWitnesses = {2,      325,     9375,      28178,
                                               450775, 9780504, 1795265022};

bool strong_probable_prime(Natural n, Natural a, Natural d, int s) {
  a %= n;
  if (a == 0) return true;
  Natural x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(Natural n) {
  if (n < 2) return false;
  for (Natural p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  if (n < 37 * 37) return true;
  Natural d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  for (Natural a : kWitnesses) {
    if (!strong_probable_prime(n, a, d, s)) return false;
  }
  return true;
}

bool is_mersenne_prime(Natural p) {
  return p != UINT64_MAX && is_power_of_two(p + 1) && is_prime(p);
}

std::vector<Natural> primes_below(Natural bound) {
  std::vector<Natural> primes;
  if (bound <= 2) return primes;
  std::vector<bool> composite(bound, false);
  for (Natural i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (Natural j = i * i; j < bound; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace usp::arith
