#pragma once

// 2^a*q^b decompositions, Zsigmondy primitive prime divisors, candidate
// prime-power enumeration, and exhaustive scanners for the structural lemmas
// on odd unitary super perfect numbers.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "usp/arith.hpp"

namespace usp::structure {

/// m = 2^a * q^b with q an odd prime; q is absent (and b == 0) when m is a
/// power of two.
struct TwoAQB {
  unsigned a = 0;
  std::optional<Natural> q;
  unsigned b = 0;

  Natural value() const;
  friend bool operator==(const TwoAQB&, const TwoAQB&) = default;
};

/// Some(...) iff the odd part of m is 1 or a prime power. m == 0 is rejected.
std::optional<TwoAQB> decompose_2aqb(Natural m);

// ---------------------------------------------------------------------------
// Zsigmondy

struct PrimitivePrime {
  Natural prime;
  friend bool operator==(const PrimitivePrime&, const PrimitivePrime&) = default;
};
/// (a, b, n) = (2, 1, 6): 63 = 3^2 * 7 has no primitive prime.
struct ExceptionCatalan216 {
  friend bool operator==(const ExceptionCatalan216&, const ExceptionCatalan216&) = default;
};
/// a - b = n = 1: a^1 - b^1 = 1.
struct ExceptionTrivialDifference {
  friend bool operator==(const ExceptionTrivialDifference&,
                         const ExceptionTrivialDifference&) = default;
};
/// n = 2 and a + b a power of two.
struct ExceptionPowerOfTwoSum {
  friend bool operator==(const ExceptionPowerOfTwoSum&, const ExceptionPowerOfTwoSum&) = default;
};

using ZsigmondyResult = std::variant<PrimitivePrime, ExceptionCatalan216,
                                     ExceptionTrivialDifference, ExceptionPowerOfTwoSum>;

std::string to_string(const ZsigmondyResult& r);

/// Least primitive prime divisor of a^n - b^n, or the exception that applies.
/// Requires a > b >= 1, gcd(a, b) = 1, n >= 1 and a^n < 2^64.
ZsigmondyResult zsigmondy(Natural a, Natural b, unsigned n);

// ---------------------------------------------------------------------------
// Candidate prime powers 2^a * q^b - 1

struct PrimePowerCandidate {
  Natural prime;
  unsigned exponent;
  unsigned a;
  unsigned b;
  Natural value;  // prime^exponent == 2^a * q^b - 1

  friend bool operator==(const PrimePowerCandidate&, const PrimePowerCandidate&) = default;
};

/// All prime powers p^e <= cap of the form 2^a * q^b - 1 with 1 <= a <= a_max
/// and 1 <= b <= b_max, ascending by value.
std::vector<PrimePowerCandidate> enumerate_prime_powers_2aqb(Natural q, unsigned a_max,
                                                             unsigned b_max, Natural cap);

// ---------------------------------------------------------------------------
// Lemma scans

/// Named integer fields; values are decimal strings since some exceed 64 bits.
using Witness = std::vector<std::pair<std::string, std::string>>;

struct LemmaReport {
  std::string lemma_id;
  std::string range;
  std::uint64_t checked = 0;
  // instances where the lemma's hypothesis actually held
  std::uint64_t applicable = 0;
  std::vector<Witness> counterexamples;
  // noteworthy instances, e.g. the complete solution set of 2^x + 1 = 3^e
  std::vector<Witness> solutions;
  std::chrono::milliseconds elapsed{0};

  bool holds() const { return counterexamples.empty(); }
};

LemmaReport check_lemma_22(Natural p_max, unsigned e_max);
LemmaReport check_lemma_23(Natural p_max, unsigned e_max);
LemmaReport check_lemma_24(Natural p_max, unsigned e_max);
LemmaReport check_lemma_25(unsigned x_max);
LemmaReport check_lemma_26(unsigned a_max);
LemmaReport check_lemma_27(Natural q_max, unsigned b_max);
LemmaReport check_lemma_51(Natural q, unsigned b_max);

/// Parameters for verify_lemma; unset fields take the per-lemma defaults.
struct LemmaRange {
  std::optional<Natural> p_max;
  std::optional<unsigned> e_max;
  std::optional<unsigned> x_max;
  std::optional<unsigned> a_max;
  std::optional<Natural> q_max;
  std::optional<unsigned> b_max;
  std::vector<Natural> qs;  // id "5.1" only; default {5, 7, 11, 13}
};

/// Identifiers accepted by verify_lemma, in scan order.
const std::vector<std::string>& lemma_ids();

/// Runs the scan named by id ("2.2" ... "2.7", "5.1"). Id "5.1" returns one
/// report per q. Throws std::invalid_argument for unknown ids.
std::vector<LemmaReport> verify_lemma(const std::string& id, const LemmaRange& range = {});

/// {"lemma_id", "range", "checked", "applicable", "counterexamples", "solutions", "ms"}
std::string to_json_line(const LemmaReport& report);

// ---------------------------------------------------------------------------
// Structure of an odd USP

struct Clause {
  std::string name;
  bool passed;
  std::string detail;
};

struct UspStructureVerdict {
  Natural n = 0;
  unsigned f1 = 0;
  Natural q = 0;
  unsigned f2 = 0;
  // per prime power p_i^e_i of n: p_i^e_i + 1 = 2^a_i q^b_i
  std::vector<std::pair<arith::PrimePower, TwoAQB>> parts;
  std::vector<Clause> clauses;

  bool ok() const;
  const Clause* first_failure() const;
};

/// Checks the forced shape of sigma*(n) for an odd USP n. The caller supplies
/// sigma*(n) already factored. Throws std::invalid_argument for even n.
UspStructureVerdict check_usp_structure(Natural n, const arith::Factorization& sigma_star_n);

}  // namespace usp::structure
