#pragma once

// Exact 64-bit arithmetic primitives: primality, factorization, unitary
// divisor functions, multiplicative orders, valuations and the Jacobi symbol.
//
// Every function here is pure. Values are unsigned 64-bit; products and
// powers go through 128-bit intermediates and throw std::overflow_error
// instead of wrapping.

#include <cstdint>
#include <string>
#include <vector>

namespace usp {

using Natural = std::uint64_t;

namespace arith {

// ---------------------------------------------------------------------------
// Checked arithmetic

Natural checked_add(Natural a, Natural b);
Natural checked_mul(Natural a, Natural b);
Natural checked_pow(Natural base, unsigned exponent);

// True iff base^exponent fits; does not throw.
bool pow_fits(Natural base, unsigned exponent);

bool is_power_of_two(Natural n);

// ---------------------------------------------------------------------------
// Modular arithmetic

Natural mul_mod(Natural a, Natural b, Natural m);

// b^e mod m by square-and-multiply; m >= 1.
Natural pow_mod(Natural b, Natural e, Natural m);

// Jacobi symbol (a/n) for odd n >= 1. Throws std::invalid_argument on even n.
int jacobi(std::int64_t a, Natural n);

// ---------------------------------------------------------------------------
// Primality and factorization

// Deterministic Miller-Rabin, correct for every 64-bit input.
bool is_prime(Natural n);

// p prime and p + 1 a power of two.
bool is_mersenne_prime(Natural p);

struct PrimePower {
  Natural prime;
  unsigned exponent;

  Natural value() const { return checked_pow(prime, exponent); }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical factorization: primes strictly increasing, exponents >= 1.
// The empty factorization represents 1.
class Factorization {
 public:
  Factorization() = default;

  // Validates the invariants; throws std::invalid_argument on violation.
  explicit Factorization(std::vector<PrimePower> entries);

  const std::vector<PrimePower>& entries() const { return entries_; }
  Natural value() const { return value_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // "2^5 * 3^2"; "1" for the empty factorization.
  std::string to_string() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> entries_;
  Natural value_ = 1;
};

// Trial division to 10^4, then Brent's variant of Pollard rho on composite
// cofactors. Throws std::invalid_argument for n == 0.
Factorization factorize(Natural n);

// ---------------------------------------------------------------------------
// Divisor functions

// sigma*(n) = prod (p^e + 1).
Natural unitary_sigma(const Factorization& f);

// sigma(n) = prod (p^(e+1) - 1) / (p - 1).
Natural divisor_sigma(const Factorization& f);

// Sorted unitary divisors; exactly 2^omega(n) of them.
std::vector<Natural> unitary_divisors(const Factorization& f);

unsigned omega(const Factorization& f);

// ---------------------------------------------------------------------------
// Valuations and orders

// Largest e with p^e | n. Throws std::invalid_argument for n == 0 or p < 2.
unsigned valuation(Natural p, Natural n);

// Least d >= 1 with p^d = 1 (mod q), q prime. Throws if q | p.
Natural multiplicative_order(Natural p, Natural q);

// v_q(p^d - 1) where d is the order of p modulo q; p != q both prime.
unsigned lifting_valuation(Natural p, Natural q);

// Primes below `bound` by a plain sieve of Eratosthenes.
std::vector<Natural> primes_below(Natural bound);

}  // namespace arith
}  // namespace usp
