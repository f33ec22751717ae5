#include <stdexcept>

#include "usp/bounds.hpp"

namespace usp::bounds {

namespace {

constexpr unsigned kDegree = 12;

void require_unit_interval(const Rational& x, const char* who) {
  if (sgn(x) < 0 || x >= 1) throw std::domain_error(std::string(who) + ": argument must lie in [0, 1)");
}

// sum_{k <= kDegree} x^k / k!, plus the last term for the remainder bound
std::pair<Rational, Rational> taylor(const Rational& x) {
  Rational sum = 1, term = 1;
  for (unsigned k = 1; k <= kDegree; ++k) {
    term *= x;
    term /= k;
    sum += term;
  }
  return {sum, term};
}

}  // namespace

Rational exp_lower(const Rational& x) {
  require_unit_interval(x, "exp_lower");
  return taylor(x).first;
}

Rational exp_upper(const Rational& x) {
  require_unit_interval(x, "exp_upper");
  auto [sum, last] = taylor(x);
  // x^13/13! * sum_j (x/13)^j
  const Rational first_dropped = last * x / (kDegree + 1);
  const Rational ratio = x / (kDegree + 1);
  Rational out = sum + first_dropped / (1 - ratio);
  out.canonicalize();
  return out;
}

Enclosure exp_enclosure(const Rational& x) {
  if (sgn(x) < 0) throw std::domain_error("exp_enclosure: argument must be >= 0");
  Rational reduced = x;
  unsigned halvings = 0;
  while (reduced >= 1) {
    reduced /= 2;
    ++halvings;
  }
  Enclosure e{exp_lower(reduced), exp_upper(reduced)};
  for (unsigned i = 0; i < halvings; ++i) {
    e.lower *= e.lower;
    e.upper *= e.upper;
  }
  return e;
}

Rational tail_product_argument(Natural t, Natural r, Natural i0) {
  if (r < 2) throw std::invalid_argument("tail_product_argument: ratio must be >= 2");
  mpz_class first = t;
  mpz_class rz = r;
  for (Natural i = 0; i < i0; ++i) first *= rz;
  if (first < 2) throw std::invalid_argument("tail_product_argument: need t r^i0 >= 2");
  Rational x(rz, (rz - 1) * (first - 1));
  x.canonicalize();
  return x;
}

Rational tail_product_bound(Natural t, Natural r, Natural i0) {
  const Rational x = tail_product_argument(t, r, i0);
  if (x >= 1) throw std::domain_error("tail_product_bound: exponent " + x.get_str() + " is >= 1");
  return exp_upper(x);
}

}  // namespace usp::bounds
