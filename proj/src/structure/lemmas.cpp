#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "usp/structure.hpp"
#include "wide.hpp"

namespace usp::structure {

namespace {

using Clock = std::chrono::steady_clock;

std::string str(const mpz_class& v) { return v.get_str(); }
std::string str(Natural v) { return std::to_string(v); }

LemmaReport start(std::string id, std::string range) {
  LemmaReport r;
  r.lemma_id = std::move(id);
  r.range = std::move(range);
  return r;
}

mpz_class power(Natural base, unsigned e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

unsigned strip(mpz_class& v, unsigned long p) {
  unsigned e = 0;
  while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
    ++e;
  }
  return e;
}

std::vector<Natural> odd_primes_up_to(Natural bound) {
  auto primes = arith::primes_below(bound + 1);
  primes.erase(primes.begin());  // 2
  return primes;
}

class Timer {
 public:
  std::chrono::milliseconds stop() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
  }

 private:
  Clock::time_point start_ = Clock::now();
};

std::string range_pe(Natural p_max, unsigned e_max) {
  return "p<=" + std::to_string(p_max) + " e<=" + std::to_string(e_max);
}

}  // namespace

LemmaReport check_lemma_22(Natural p_max, unsigned e_max) {
  Timer timer;
  LemmaReport r = start("2.2", range_pe(p_max, e_max));
  for (Natural p : odd_primes_up_to(p_max)) {
    for (unsigned e = 1; e <= e_max; ++e) {
      ++r.checked;
      mpz_class odd = power(p, e) + 1;
      const unsigned a = strip(odd, 2);
      if (odd == 1) continue;  // b = 0 belongs to scan "2.4"
      auto [q, b] = wide::perfect_power_root(odd);
      auto conclusion = [&, q = q] {
        const bool q_1_mod_2e = mpz_fdiv_ui(q.get_mpz_t(), 2 * e) == 1;
        return e == 1 || (e % 2 == 0 && q_1_mod_2e) || (arith::is_mersenne_prime(p) && q_1_mod_2e);
      };
      // the conclusion holding settles the instance whether or not q is prime
      const bool holds = conclusion();
      bool q_prime;
      try {
        q_prime = wide::is_prime(q);
      } catch (const std::range_error&) {
        if (holds) continue;
        throw;
      }
      if (!q_prime) continue;
      ++r.applicable;
      if (!holds)
        r.counterexamples.push_back(
            {{"p", str(p)}, {"e", str(e)}, {"a", str(a)}, {"q", str(q)}, {"b", str(b)}});
    }
  }
  r.elapsed = timer.stop();
  return r;
}

LemmaReport check_lemma_23(Natural p_max, unsigned e_max) {
  Timer timer;
  LemmaReport r = start("2.3", range_pe(p_max, e_max));
  for (Natural p : odd_primes_up_to(p_max)) {
    for (unsigned e = 1; e <= e_max; ++e) {
      ++r.checked;
      mpz_class rest = power(p, e) + 1;
      const unsigned a = strip(rest, 2);
      const unsigned b = strip(rest, 3);
      if (rest != 1) continue;
      ++r.applicable;
      if (e != 1)
        r.counterexamples.push_back({{"p", str(p)}, {"e", str(e)}, {"a", str(a)}, {"b", str(b)}});
    }
  }
  r.elapsed = timer.stop();
  return r;
}

LemmaReport check_lemma_24(Natural p_max, unsigned e_max) {
  Timer timer;
  LemmaReport r = start("2.4", range_pe(p_max, e_max));
  for (Natural p : odd_primes_up_to(p_max)) {
    for (unsigned e = 1; e <= e_max; ++e) {
      ++r.checked;
      const mpz_class v = power(p, e) + 1;
      if (mpz_popcount(v.get_mpz_t()) != 1) continue;
      ++r.applicable;
      if (e != 1)
        r.counterexamples.push_back(
            {{"p", str(p)}, {"e", str(e)}, {"x", str(mpz_sizeinbase(v.get_mpz_t(), 2) - 1)}});
    }
  }
  r.elapsed = timer.stop();
  return r;
}

LemmaReport check_lemma_25(unsigned x_max) {
  Timer timer;
  LemmaReport r = start("2.5", "x<=" + std::to_string(x_max));
  const std::vector<std::pair<unsigned, unsigned>> expected = {{1, 1}, {2, 3}};  // (e, x)
  for (unsigned x = 1; x <= x_max; ++x) {
    ++r.checked;
    mpz_class v = power(2, x) + 1;
    const unsigned e = strip(v, 3);
    if (v != 1) continue;
    ++r.applicable;
    Witness w{{"e", str(e)}, {"x", str(x)}};
    r.solutions.push_back(w);
    if (std::find(expected.begin(), expected.end(), std::pair{e, x}) == expected.end())
      r.counterexamples.push_back(w);
  }
  for (auto [e, x] : expected) {
    if (x > x_max) continue;
    const bool found = std::any_of(r.solutions.begin(), r.solutions.end(), [&, e = e, x = x](const Witness& w) {
      return w[0].second == str(e) && w[1].second == str(x);
    });
    if (!found) r.counterexamples.push_back({{"missing_e", str(e)}, {"missing_x", str(x)}});
  }
  r.elapsed = timer.stop();
  return r;
}

LemmaReport check_lemma_26(unsigned a_max) {
  Timer timer;
  LemmaReport r = start("2.6", "a<=" + std::to_string(a_max));
  for (unsigned a = 1; a <= a_max; ++a) {
    const mpz_class v = power(2, a) + 1;
    for (const auto& [p, e] : wide::factorize(v)) {
      ++r.checked;
      ++r.applicable;
      const unsigned long residue = mpz_fdiv_ui(p.get_mpz_t(), 8);
      if (residue != 1 && residue != 3 && residue != 5)
        r.counterexamples.push_back({{"a", str(a)}, {"p", str(p)}, {"p_mod_8", str(residue)}});
    }
  }
  r.elapsed = timer.stop();
  return r;
}

LemmaReport check_lemma_27(Natural q_max, unsigned b_max) {
  Timer timer;
  LemmaReport r = start("2.7", "q<=" + std::to_string(q_max) + " b<=" + std::to_string(b_max));
  for (Natural q : odd_primes_up_to(q_max)) {
    for (unsigned b = 1; b <= b_max; ++b) {
      const Natural v = arith::checked_add(arith::checked_pow(q, b), 1);
      if (v % 4 == 0) continue;
      const Natural modulus = 4 * q;
      for (const auto& [p, e] : arith::factorize(v)) {
        if (p == 2) continue;
        ++r.checked;
        ++r.applicable;
        if ((p + 1) % modulus == 0)
          r.counterexamples.push_back({{"q", str(q)}, {"b", str(b)}, {"p", str(p)}});
      }
    }
  }
  r.elapsed = timer.stop();
  return r;
}

LemmaReport check_lemma_51(Natural q, unsigned b_max) {
  if (q < 5 || q % 2 == 0 || !arith::is_prime(q))
    throw std::invalid_argument("check_lemma_51: q must be an odd prime >= 5");
  Timer timer;
  LemmaReport r = start("5.1", "q=" + std::to_string(q) + " b<=" + std::to_string(b_max));
  auto non_mersenne_prime_power = [](Natural v) {
    const auto f = arith::factorize(v);
    return f.size() == 1 && !arith::is_mersenne_prime(f.entries().front().prime);
  };
  for (unsigned b = 1; b <= b_max; ++b) {
    ++r.checked;
    const Natural qb = arith::checked_pow(q, b);
    const Natural two = arith::checked_mul(2, qb) - 1;
    const Natural four = arith::checked_mul(4, qb) - 1;
    if (two % 3 != 0 && four % 3 != 0)
      r.counterexamples.push_back({{"b", str(b)}, {"2q^b-1", str(two)}, {"4q^b-1", str(four)}});
    if (non_mersenne_prime_power(two) && non_mersenne_prime_power(four))
      r.counterexamples.push_back(
          {{"b", str(b)}, {"both_prime_powers", str(two) + "," + str(four)}});
    if (non_mersenne_prime_power(two) || non_mersenne_prime_power(four)) ++r.applicable;
  }
  r.elapsed = timer.stop();
  return r;
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = {"2.2", "2.3", "2.4", "2.5", "2.6", "2.7", "5.1"};
  return ids;
}

std::vector<LemmaReport> verify_lemma(const std::string& id, const LemmaRange& range) {
  if (id == "2.2") return {check_lemma_22(range.p_max.value_or(500), range.e_max.value_or(8))};
  if (id == "2.3") return {check_lemma_23(range.p_max.value_or(10'000), range.e_max.value_or(10))};
  if (id == "2.4") return {check_lemma_24(range.p_max.value_or(10'000), range.e_max.value_or(10))};
  if (id == "2.5") return {check_lemma_25(range.x_max.value_or(60))};
  if (id == "2.6") return {check_lemma_26(range.a_max.value_or(40))};
  if (id == "2.7") return {check_lemma_27(range.q_max.value_or(100), range.b_max.value_or(8))};
  if (id == "5.1") {
    const std::vector<Natural> qs =
        range.qs.empty() ? std::vector<Natural>{5, 7, 11, 13} : range.qs;
    std::vector<LemmaReport> out;
    for (Natural q : qs) out.push_back(check_lemma_51(q, range.b_max.value_or(10)));
    return out;
  }
  throw std::invalid_argument("unknown lemma id '" + id + "'");
}

}  // namespace usp::structure
