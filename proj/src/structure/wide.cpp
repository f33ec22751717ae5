#include "wide.hpp"

#include <stdexcept>

namespace usp::structure::wide {

namespace {
const mpz_class kDeterministicBound("3317044064679887385961981");
}

std::optional<Natural> to_natural(const mpz_class& n) {
  if (sgn(n) < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64) return std::nullopt;
  Natural out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

bool is_prime(const mpz_class& n) {
  if (auto small = to_natural(n)) return arith::is_prime(*small);
  if (n >= kDeterministicBound)
    throw std::range_error("wide::is_prime: " + n.get_str() + " beyond deterministic bound");
  mpz_class d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  const mpz_class n_minus_1 = n - 1;
  for (unsigned long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
    mpz_class x;
    mpz_class base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::pair<mpz_class, unsigned> perfect_power_root(const mpz_class& n) {
  const auto bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
  for (unsigned k = bits; k >= 2; --k) {
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) return {r, k};
  }
  return {n, 1};
}

std::map<mpz_class, unsigned> factorize(const mpz_class& value) {
  std::map<mpz_class, unsigned> out;
  mpz_class n = value;
  if (n < 1) throw std::invalid_argument("wide::factorize: n must be >= 1");
  static const auto primes = arith::primes_below(Natural{1} << 20);
  for (Natural p : primes) {
    if (auto small = to_natural(n)) {
      for (const auto& [q, e] : arith::factorize(*small)) out[mpz_class(std::to_string(q))] += e;
      return out;
    }
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++out[mpz_class(std::to_string(p))];
    }
  }
  if (auto small = to_natural(n)) {
    for (const auto& [q, e] : arith::factorize(*small)) out[mpz_class(std::to_string(q))] += e;
    return out;
  }
  if (is_prime(n)) {
    ++out[n];
    return out;
  }
  throw std::range_error("wide::factorize: cofactor " + n.get_str() + " too large to split");
}

}  // namespace usp::structure::wide
