
#include <cmath>
#include <stdexcept>

#include "certificate.hpp"

namespace usp::bounds {

std::string decimal(const Rational& q, int digits, Rounding rounding) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const mpz_class num = q.get_num() * scale;
  mpz_class scaled;
  if (rounding == Rounding::Down)
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  else
    mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  const bool negative = sgn(scaled) < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits))
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + s : s;
}

std::string fraction(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ReproducedBelow2:
      return "ReproducedBelow2";
    case Verdict::DiscrepancyFlagged:
      return "DiscrepancyFlagged";
    case Verdict::NotBelow2:
      return "NotBelow2";
  }
  return "?";
}

Term ratio_term(const Rational& value, std::string description) {
  Rational v = value;
  v.canonicalize();
  if (description.empty()) description = fraction(v);
  return {std::move(description), v, v, v.get_d()};
}

Term exp_term(const Rational& x, std::string description) {
  const auto e = exp_enclosure(x);
  return {std::move(description), e.lower, e.upper, std::exp(x.get_d())};
}

BoundCertificate certify_product(std::string id, const std::vector<Term>& terms,
                                 std::vector<std::pair<std::string, Natural>> cutoffs) {
  BoundCertificate c;
  c.expression_id = std::move(id);
  c.lower = 1;
  c.upper = 1;
  c.estimate = 1.0;
  for (const auto& t : terms) {
    c.lower *= t.lower;
    c.upper *= t.upper;
    c.estimate *= t.estimate;
    c.ledger.push_back({t.description, t.upper});
  }
  c.cutoffs = std::move(cutoffs);
  hull_with_estimate(c);
  return c;
}

void hull_with_estimate(BoundCertificate& c) {
  // Widening keeps both ends rigorous and keeps the double inside.
  const Rational e(c.estimate);
  if (e < c.lower) c.lower = e;
  if (e > c.upper) c.upper = e;
}

}  // namespace usp::bounds
