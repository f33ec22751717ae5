#pragma once

// Multi-precision helpers for lemma scans whose instances outgrow 64 bits.

#include <gmpxx.h>

#include <map>
#include <optional>

#include "usp/arith.hpp"

namespace usp::structure::wide {

// Deterministic strong-pseudoprime test with the first thirteen prime bases,
// valid for n < 3.317e24. Throws std::range_error above that bound.
bool is_prime(const mpz_class& n);

// Largest k with n = r^k, returned as (r, k); n >= 2.
std::pair<mpz_class, unsigned> perfect_power_root(const mpz_class& n);

// Full factorization when n can be reduced below 2^64 by trial division
// up to 2^20 (or the cofactor is provably prime). Throws std::range_error
// otherwise.
std::map<mpz_class, unsigned> factorize(const mpz_class& n);

std::optional<Natural> to_natural(const mpz_class& n);

}  // namespace usp::structure::wide
