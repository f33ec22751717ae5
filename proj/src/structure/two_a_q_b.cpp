#include "usp/structure.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace usp::structure {

Natural TwoAQB::value() const {
  Natural v = arith::checked_pow(2, a);
  if (q) v = arith::checked_mul(v, arith::checked_pow(*q, b));
  return v;
}

std::optional<TwoAQB> decompose_2aqb(Natural m) {
  if (m == 0) throw std::invalid_argument("decompose_2aqb: m must be >= 1");
  TwoAQB out;
  out.a = static_cast<unsigned>(std::countr_zero(m));
  const Natural odd = m >> out.a;
  if (odd == 1) return out;
  const auto f = arith::factorize(odd);
  if (f.size() != 1) return std::nullopt;
  out.q = f.entries().front().prime;
  out.b = f.entries().front().exponent;
  return out;
}

std::vector<PrimePowerCandidate> enumerate_prime_powers_2aqb(Natural q, unsigned a_max,
                                                             unsigned b_max, Natural cap) {
  if (q % 2 == 0 || !arith::is_prime(q))
    throw std::invalid_argument("enumerate_prime_powers_2aqb: q must be an odd prime");
  std::vector<PrimePowerCandidate> out;
  for (unsigned a = 1; a <= a_max; ++a) {
    if (!arith::pow_fits(2, a)) break;
    const Natural two_a = arith::checked_pow(2, a);
    Natural qb = 1;
    for (unsigned b = 1; b <= b_max; ++b) {
      if (__builtin_mul_overflow(qb, q, &qb)) break;
      Natural v;
      if (__builtin_mul_overflow(two_a, qb, &v)) break;
      --v;
      if (v > cap) break;
      const auto f = arith::factorize(v);
      if (f.size() != 1) continue;
      const auto& pe = f.entries().front();
      out.push_back({pe.prime, pe.exponent, a, b, v});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return l.value < r.value; });
  return out;
}

}  // namespace usp::structure
