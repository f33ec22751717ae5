#include "usp/arith.hpp"

#include <algorithm>

namespace usp::arith {

Natural unitary_sigma(const Factorization& f) {
  Natural s = 1;
  for (const auto& pe : f) s = checked_mul(s, checked_add(pe.value(), 1));
  return s;
}

Natural divisor_sigma(const Factorization& f) {
  Natural s = 1;
  for (const auto& [p, e] : f) {
    // 1 + p + ... + p^e, accumulated to stay within range
    Natural term = 1, power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power = checked_mul(power, p);
      term = checked_add(term, power);
    }
    s = checked_mul(s, term);
  }
  return s;
}

std::vector<Natural> unitary_divisors(const Factorization& f) {
  std::vector<Natural> divisors{1};
  divisors.reserve(std::size_t{1} << f.size());
  for (const auto& pe : f) {
    const Natural q = pe.value();
    const std::size_t count = divisors.size();
    for (std::size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * q);
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

unsigned omega(const Factorization& f) { return static_cast<unsigned>(f.size()); }

}  // namespace usp::arith
