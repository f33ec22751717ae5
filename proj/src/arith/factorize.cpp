#include "usp/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace usp::arith {

Factorization::Factorization(std::vector<PrimePower> entries) : entries_(std::move(entries)) {
  Natural value = 1;
  Natural previous = 1;
  for (const auto& [p, e] : entries_) {
    if (e == 0) throw std::invalid_argument("Factorization: zero exponent");
    if (p <= previous) throw std::invalid_argument("Factorization: primes must increase");
    if (!is_prime(p)) throw std::invalid_argument("Factorization: " + std::to_string(p) + " is not prime");
    value = checked_mul(value, checked_pow(p, e));
    previous = p;
  }
  value_ = value;
}

std::string Factorization::to_string() const {
  if (entries_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << " * ";
    os << entries_[i].prime;
    if (entries_[i].exponent > 1) os << '^' << entries_[i].exponent;
  }
  return os.str();
}

namespace {

constexpr Natural kTrialBound = 10'000;

const std::vector<Natural>& trial_primes() {
  static const std::vector<Natural> primes = primes_below(kTrialBound);
  return primes;
}

// Brent's cycle detection with batched gcds. Returns a nontrivial factor of
// the odd composite n.
Natural brent_rho(Natural n) {
  const Natural m = 128;
  for (Natural c = 1;; ++c) {
    auto f = [&](Natural x) { return (mul_mod(x, x, n) + c) % n; };
    Natural y = 2, x = 2, ys = 2, q = 1, g = 1;
    for (Natural r = 1; g == 1; r <<= 1) {
      x = y;
      for (Natural i = 0; i < r; ++i) y = f(y);
      for (Natural k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (Natural i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      // batch overshot; replay one step at a time
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(Natural n, std::map<Natural, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  // squares of primes go straight to the root
  using u128 = unsigned __int128;
  Natural r = static_cast<Natural>(std::sqrt(static_cast<long double>(n)));
  while (u128{r} * r > n) --r;
  while (u128{r + 1} * (r + 1) <= n) ++r;
  if (u128{r} * r == n) {
    split(r, out);
    split(r, out);
    return;
  }
  Natural d = brent_rho(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

Factorization factorize(Natural n) {
  if (n == 0) throw std::invalid_argument("factorize: 0 has no factorization");
  std::map<Natural, unsigned> found;
  for (Natural p : trial_primes()) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    found[p] = e;
  }
  if (n > 1) {
    if (n < kTrialBound * kTrialBound) {
      ++found[n];
    } else {
      split(n, found);
    }
  }
  std::vector<PrimePower> entries;
  entries.reserve(found.size());
  for (const auto& [p, e] : found) entries.push_back({p, e});
  return Factorization(std::move(entries));
}

}  // namespace usp::arith
