#pragma once

// Certified rational enclosures for the numerical inequalities that rule out
// further odd unitary super perfect numbers.
//
// Each quantity is evaluated twice: in double precision for reporting, and
// as an exact rational enclosure [lower, upper] whose upper end is a
// rigorous over-estimate (every exp() is bounded by a Taylor polynomial plus
// a geometric remainder, every infinite product tail by such an exp()).

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "usp/arith.hpp"

namespace usp::bounds {

using Rational = mpq_class;

/// Imported result: if 3 divides both N and sigma*(N), N has at least this
/// many distinct prime factors. Not re-proved here.
inline constexpr unsigned MIN_K_BOTH_DIVISIBLE = 46;

/// Printed decimals are matched to this absolute tolerance.
inline constexpr double kReproductionTolerance = 5e-4;

/// Largest cutoff for mersenne_constant; beyond it the truncated tail falls
/// below double resolution.
inline constexpr unsigned kMaxMersenneCutoff = 45;

// ---------------------------------------------------------------------------
// Exponential bounds

/// u with exp(x) <= u <= exp(x) (1 + 1e-6): degree-12 Taylor polynomial plus
/// the remainder bounded by a geometric series of ratio x/13. 0 <= x < 1.
Rational exp_upper(const Rational& x);

/// Degree-12 Taylor polynomial; a lower bound of exp(x) for 0 <= x < 1.
Rational exp_lower(const Rational& x);

struct Enclosure {
  Rational lower;
  Rational upper;
};

/// Enclosure of exp(x) for any x >= 0, squaring the bounds of exp(x / 2^k).
Enclosure exp_enclosure(const Rational& x);

/// x = r / ((r - 1)(t r^i0 - 1)), the exponent majorizing
/// prod_{i >= i0} t r^i / (t r^i - 1).
Rational tail_product_argument(Natural t, Natural r, Natural i0);

/// exp_upper(tail_product_argument(t, r, i0)); rejects x >= 1.
Rational tail_product_bound(Natural t, Natural r, Natural i0);

// ---------------------------------------------------------------------------
// Certificates

struct LedgerEntry {
  std::string term;
  Rational contribution;
};

struct BoundCertificate {
  std::string expression_id;
  Rational lower;
  Rational upper;
  double estimate = 0.0;
  std::vector<LedgerEntry> ledger;
  std::vector<std::pair<std::string, Natural>> cutoffs;
};

/// Product of 2^p / (2^p - 1) over Mersenne prime exponents p <= p_cutoff
/// (lower), times a certified bound for every odd exponent above the cutoff
/// (upper). 2 <= p_cutoff <= kMaxMersenneCutoff.
BoundCertificate mersenne_constant(unsigned p_cutoff);

enum class Rounding { Down, Up };

/// Decimal rendering with `digits` fractional digits, rounded in the given
/// direction so that enclosures stay enclosures.
std::string decimal(const Rational& q, int digits, Rounding rounding);

/// "num/den" in lowest terms.
std::string fraction(const Rational& q);

// ---------------------------------------------------------------------------
// Inequality registry

enum class Verdict {
  ReproducedBelow2,    // certified upper < 2 and the printed decimal reproduced
  DiscrepancyFlagged,  // certified upper < 2 but the printed decimal differs
  NotBelow2,           // certification failed
};

std::string to_string(Verdict v);

struct Reading {
  std::string label;
  BoundCertificate certificate;
};

struct InequalityRecord {
  std::string id;
  std::string description;
  std::string paper_value;
  BoundCertificate computed;
  Verdict verdict = Verdict::NotBelow2;
  double discrepancy = 0.0;  // |computed.estimate - paper_value|
  // other readings of the same display, reported but not part of the verdict
  std::vector<Reading> alternates;
};

struct RegistryOptions {
  unsigned min_k_both_divisible = MIN_K_BOTH_DIVISIBLE;
  unsigned tight_c_cutoff = 31;
};

/// L42, L43, T53-a, T53-b, T54-q7, T54-q11.
const std::vector<std::string>& inequality_ids();

/// Throws std::invalid_argument for an unregistered id.
InequalityRecord evaluate_inequality(const std::string& id, const RegistryOptions& options = {});

/// The product constant itself, against the decimal printed after its
/// analytic estimate (1.631007).
InequalityRecord constant_record(const RegistryOptions& options = {});

/// {id, paper_value, float_estimate, lower, upper, verdict, discrepancy, alternates}
std::string to_json_line(const InequalityRecord& record);

// ---------------------------------------------------------------------------
// q elimination

struct QScanEntry {
  Natural q;
  unsigned f2;
  bool satisfies;
  Rational lhs_upper;
  double lhs_estimate;
};

struct QScan {
  Rational threshold;  // 16 / (9 C_upper)
  unsigned c_cutoff;
  std::vector<QScanEntry> entries;

  std::vector<Natural> satisfying(unsigned f2) const;
};

/// For odd primes 5 <= q <= q_max and f2 in {1, 2}: does
/// (q^f2 + 1)/q^f2 * exp(q/((q-1)(2q-1))) >= 16/(9C) survive? A q fails only
/// when the certified upper end of the left side is below the threshold.
QScan q_bound_scan(Natural q_max, unsigned c_cutoff = 2);

std::string to_json_line(const QScanEntry& entry, const QScan& scan);

// ---------------------------------------------------------------------------
// q = 13

struct ChainStep {
  std::string claim;
  bool verified;
  std::string evidence;
};

struct Case13Verdict {
  std::vector<ChainStep> steps;
  bool ok() const;
};

Case13Verdict case_13_elimination();

}  // namespace usp::bounds
