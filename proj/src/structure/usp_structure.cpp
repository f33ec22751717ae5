#include <algorithm>
#include <stdexcept>

#include "usp/structure.hpp"

namespace usp::structure {

bool UspStructureVerdict::ok() const {
  return !clauses.empty() &&
         std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.passed; });
}

const Clause* UspStructureVerdict::first_failure() const {
  for (const auto& c : clauses)
    if (!c.passed) return &c;
  return nullptr;
}

UspStructureVerdict check_usp_structure(Natural n, const arith::Factorization& sigma_star_n) {
  if (n % 2 == 0) throw std::invalid_argument("check_usp_structure: n must be odd");
  UspStructureVerdict v;
  v.n = n;

  // sigma*(n) = 2^f1 q^f2 with q an odd prime and f1, f2 >= 1
  const auto& entries = sigma_star_n.entries();
  const bool shape = entries.size() == 2 && entries[0].prime == 2;
  if (shape) {
    v.f1 = entries[0].exponent;
    v.q = entries[1].prime;
    v.f2 = entries[1].exponent;
  }
  v.clauses.push_back({"sigma*(n) = 2^f1 q^f2", shape, sigma_star_n.to_string()});
  if (!shape) return v;

  const Natural qf2_plus_1 = arith::checked_add(arith::checked_pow(v.q, v.f2), 1);
  v.clauses.push_back({"4 does not divide q^f2 + 1", qf2_plus_1 % 4 != 0,
                       "q^f2 + 1 = " + std::to_string(qf2_plus_1)});

  bool all_decompose = true;
  unsigned sum_a = 0, sum_b = 0;
  bool small_a = true;
  std::string small_a_detail;
  for (const auto& pe : arith::factorize(n)) {
    const auto d = decompose_2aqb(arith::checked_add(pe.value(), 1));
    if (!d || (d->q && *d->q != v.q)) {
      all_decompose = false;
      continue;
    }
    v.parts.emplace_back(pe, *d);
    sum_a += d->a;
    sum_b += d->b;
    // exempt: p_i Mersenne with e_i odd
    const bool exempt = arith::is_mersenne_prime(pe.prime) && pe.exponent % 2 == 1;
    if (!exempt && !(d->a >= 1 && d->a <= 2 && d->b >= 1)) {
      small_a = false;
      small_a_detail += std::to_string(pe.prime) + "^" + std::to_string(pe.exponent) + " ";
    }
  }
  v.clauses.push_back({"p_i^e_i + 1 = 2^a_i q^b_i", all_decompose,
                       std::to_string(v.parts.size()) + " prime powers decomposed"});
  v.clauses.push_back({"sum a_i = f1", all_decompose && sum_a == v.f1,
                       std::to_string(sum_a) + " vs " + std::to_string(v.f1)});
  v.clauses.push_back({"sum b_i = f2", all_decompose && sum_b == v.f2,
                       std::to_string(sum_b) + " vs " + std::to_string(v.f2)});
  v.clauses.push_back({"1 <= a_i <= 2, b_i >= 1 unless Mersenne with odd exponent", small_a,
                       small_a ? "ok" : small_a_detail});
  return v;
}

}  // namespace usp::structure
