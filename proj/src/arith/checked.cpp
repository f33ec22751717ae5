#include "usp/arith.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace usp::arith {

Natural checked_add(Natural a, Natural b) {
  Natural r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("addition exceeds 64-bit range: " + std::to_string(a) + " + " +
                              std::to_string(b));
  return r;
}

Natural checked_mul(Natural a, Natural b) {
  Natural r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("product exceeds 64-bit range: " + std::to_string(a) + " * " +
                              std::to_string(b));
  return r;
}

bool pow_fits(Natural base, unsigned exponent) {
  Natural r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) return false;
    if (r == 0 || r == 1) return true;
  }
  return true;
}

Natural checked_pow(Natural base, unsigned exponent) {
  Natural r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(r, base, &r))
      throw std::overflow_error("power exceeds 64-bit range: " + std::to_string(base) + "^" +
                                std::to_string(exponent));
    if (r == 0 || r == 1) break;
  }
  return r;
}

bool is_power_of_two(Natural n) { return std::has_single_bit(n); }

}  // namespace usp::arith
