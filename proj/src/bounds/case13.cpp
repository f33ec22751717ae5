#include <algorithm>

#include "usp/bounds.hpp"
#include "usp/structure.hpp"

namespace usp::bounds {

bool Case13Verdict::ok() const {
  return !steps.empty() &&
         std::all_of(steps.begin(), steps.end(), [](const ChainStep& s) { return s.verified; });
}

Case13Verdict case_13_elimination() {
  using namespace usp::arith;
  Case13Verdict v;
  auto step = [&](std::string claim, bool ok, std::string evidence) {
    v.steps.push_back({std::move(claim), ok, std::move(evidence)});
  };

  // 13 = 1 (mod 3) so 13^f2 + 1 = 2 (mod 3) for every f2
  bool never = 13 % 3 == 1;
  for (unsigned f2 = 1; f2 <= 64; ++f2) never = never && (pow_mod(13, f2, 3) + 1) % 3 == 2;
  step("3 does not divide 13^f2 + 1", never, "13 mod 3 = 1");

  // so 3 | 2^f1 + 1, which happens exactly for odd f1
  const Natural ord3 = multiplicative_order(2, 3);
  const bool odd_f1 = ord3 == 2 && pow_mod(2, 1, 3) == 2;
  step("3 | 2^f1 + 1 forces f1 odd", odd_f1,
       "ord_3(2) = " + std::to_string(ord3) + ", 2 = -1 (mod 3)");

  const auto scan = q_bound_scan(13);
  bool f2_one = false;
  for (const auto& e : scan.entries)
    if (e.q == 13 && e.f2 == 1) f2_one = e.satisfies;
  for (const auto& e : scan.entries)
    if (e.q == 13 && e.f2 == 2) f2_one = f2_one && !e.satisfies;
  step("f2 = 1", f2_one, "q = 13 survives the q-bound only with f2 = 1");

  const auto fourteen = structure::decompose_2aqb(14);
  const bool q_plus_1 = fourteen && fourteen->a == 1 && fourteen->q == Natural{7} && fourteen->b == 1;
  step("13 + 1 = 2 * 7", q_plus_1, "decompose(14) = 2^1 * 7^1");

  const auto twentyfive = factorize(25);
  const bool is_25 = twentyfive.size() == 1 && twentyfive.entries()[0] == PrimePower{5, 2};
  step("2*13 - 1 = 25 = 5^2 is a prime power", is_25, twentyfive.to_string());

  const auto fiftyone = factorize(51);
  step("4*13 - 1 = 51 is not a prime power", fiftyone.size() > 1, fiftyone.to_string());

  const auto candidates = structure::enumerate_prime_powers_2aqb(13, 2, 1, 1000);
  const bool unique = candidates.size() == 1 && candidates[0].value == 25 && candidates[0].a == 1;
  step("the only candidate 2^a*13 - 1 with a <= 2 is 25", unique,
       std::to_string(candidates.size()) + " candidate(s)");

  const Natural ord5 = multiplicative_order(2, 5);
  bool residue_two_only = ord5 == 4;
  for (Natural r = 0; r < 4; ++r) residue_two_only = residue_two_only && (((pow_mod(2, r, 5) + 1) % 5 == 0) == (r == 2));
  step("5 | 2^f1 + 1 iff f1 = 2 (mod 4)", residue_two_only, "ord_5(2) = " + std::to_string(ord5));

  // f1 = 2 (mod 4) is even
  bool contradiction = true;
  for (Natural f1 = 1; f1 < 1000; f1 += 2) contradiction = contradiction && (pow_mod(2, f1, 5) + 1) % 5 != 0;
  step("no odd f1 has 5 | 2^f1 + 1: contradiction", contradiction && odd_f1 && residue_two_only,
       "checked odd f1 < 1000 and the residue argument");
  return v;
}

}  // namespace usp::bounds
