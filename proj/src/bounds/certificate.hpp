#pragma once

// Internal helpers for assembling product certificates.

#include <string>
#include <vector>

#include "usp/bounds.hpp"

namespace usp::bounds {

// One factor of a displayed product: an enclosure plus a float estimate.
struct Term {
  std::string description;
  Rational lower;
  Rational upper;
  double estimate;
};

Term ratio_term(const Rational& value, std::string description = {});
Term exp_term(const Rational& x, std::string description);

BoundCertificate certify_product(std::string id, const std::vector<Term>& terms,
                                 std::vector<std::pair<std::string, Natural>> cutoffs = {});

void hull_with_estimate(BoundCertificate& c);

}  // namespace usp::bounds
