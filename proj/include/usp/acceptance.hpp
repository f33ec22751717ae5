#pragma once

// The reproduction checklist, shared by the acceptance test binary and the
// `report` subcommand. Each criterion compares library output against an
// oracle that does not reuse the code under test: brute-force divisor
// enumeration, direct primitive-divisor search, 50-digit decimal exp.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "usp/arith.hpp"

namespace usp::acceptance {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  std::function<Outcome()> run;
};

struct Options {
  // headline search limit; the fast variant at 10^6 always runs as well
  Natural headline_limit = 100'000'000;
  unsigned workers = 4;
};

std::vector<Criterion> criteria(const Options& options = {});

// ---------------------------------------------------------------------------
// Oracles

/// Sum of d | n with gcd(d, n/d) = 1, by enumerating divisors up to sqrt(n).
Natural brute_unitary_sigma(Natural n);
/// Sum of all divisors by enumeration up to sqrt(n).
Natural brute_sigma(Natural n);

/// Least prime dividing a^n - b^n but no a^m - b^m for 1 <= m < n, found by
/// trial division; nullopt when there is none. a^n < 2^53 required.
std::optional<Natural> brute_primitive_prime(Natural a, Natural b, unsigned n);

}  // namespace usp::acceptance
