#include <cmath>
#include <stdexcept>

#include "certificate.hpp"

namespace usp::bounds {

namespace {

struct RawMersenne {
  Rational lower;
  Rational upper;
  double estimate = 1.0;  // the truncated product in floating point
  std::vector<LedgerEntry> ledger;
};

RawMersenne raw_mersenne(unsigned p_cutoff) {
  RawMersenne out;
  out.lower = 1;
  for (unsigned p = 2; p <= p_cutoff; ++p) {
    if (!arith::is_prime(p)) continue;
    const Natural m = (Natural{1} << p) - 1;
    if (!arith::is_prime(m)) continue;
    const Rational factor(mpz_class(std::to_string(m + 1)), mpz_class(std::to_string(m)));
    out.lower *= factor;
    out.estimate *= std::ldexp(1.0, static_cast<int>(p)) / (std::ldexp(1.0, static_cast<int>(p)) - 1.0);
    out.ledger.push_back({"2^" + std::to_string(p) + "/(2^" + std::to_string(p) + "-1)", factor});
  }
  // Every exponent above the cutoff is an odd n >= n0; bound
  // sum_{odd n >= n0} 1/(2^n - 1) by (4/3) / (2^n0 - 1).
  const unsigned n0 = p_cutoff % 2 == 0 ? p_cutoff + 1 : p_cutoff + 2;
  mpz_class denominator = 1;
  denominator <<= n0;
  denominator -= 1;
  Rational x(4, 3 * denominator);
  x.canonicalize();
  const Rational tail = exp_upper(x);
  out.ledger.push_back({"tail odd n>=" + std::to_string(n0) + ": exp(" + fraction(x) + ")", tail});
  out.upper = out.lower * tail;
  return out;
}

}  // namespace

BoundCertificate mersenne_constant(unsigned p_cutoff) {
  if (p_cutoff < 2 || p_cutoff > kMaxMersenneCutoff)
    throw std::invalid_argument("mersenne_constant: cutoff must lie in [2, " +
                                std::to_string(kMaxMersenneCutoff) + "]");
  BoundCertificate c;
  c.expression_id = "C";
  c.cutoffs = {{"p_cutoff", p_cutoff}};
  // Each cutoff yields a valid upper bound; keeping the running minimum makes
  // the sequence of certificates monotone.
  Rational best_upper;
  double estimate = 1.0;
  for (unsigned k = 2; k <= p_cutoff; ++k) {
    auto raw = raw_mersenne(k);
    if (k == 2 || raw.upper < best_upper) best_upper = raw.upper;
    if (k == p_cutoff) {
      c.lower = raw.lower;
      estimate = raw.estimate;
      c.ledger = std::move(raw.ledger);
    }
  }
  c.upper = best_upper;

  // step the float estimate inside the enclosure; always possible while the
  // enclosure is wider than a few ulps
  double d = estimate;
  while (Rational(d) < c.lower) d = std::nextafter(d, 2.0);
  while (Rational(d) > c.upper) d = std::nextafter(d, 0.0);
  c.estimate = d;
  hull_with_estimate(c);
  return c;
}

}  // namespace usp::bounds
