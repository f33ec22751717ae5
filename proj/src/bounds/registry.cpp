#include <nlohmann/json.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "certificate.hpp"

namespace usp::bounds {

namespace {

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// (base^e + 1) / base^e
Term near_one(Natural base, unsigned e) {
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), base, e);
  Rational v(power + 1, power);
  v.canonicalize();
  return ratio_term(v, "(" + std::to_string(base) + "^" + std::to_string(e) + "+1)/" +
                           std::to_string(base) + "^" + std::to_string(e));
}

// C replaced by its analytic bound 4/3 exp(4/21).
Term c_analytic() {
  const Rational x = q(4, 21);
  const Rational four_thirds = q(4, 3);
  return {"C <= 4/3*exp(4/21)", four_thirds * exp_lower(x), four_thirds * exp_upper(x),
          4.0 / 3.0 * std::exp(4.0 / 21.0)};
}

Term c_tight(unsigned cutoff) {
  const auto c = mersenne_constant(cutoff);
  return {"C (exponents <= " + std::to_string(cutoff) + " + tail)", c.lower, c.upper, c.estimate};
}

Term exp_of(const Rational& x, const std::string& text) { return exp_term(x, "exp(" + text + ")"); }

InequalityRecord finish(std::string id, std::string description, std::string paper_value,
                        BoundCertificate primary, std::vector<Reading> alternates) {
  InequalityRecord r;
  r.id = std::move(id);
  r.description = std::move(description);
  r.paper_value = std::move(paper_value);
  r.computed = std::move(primary);
  r.alternates = std::move(alternates);
  r.discrepancy = std::fabs(r.computed.estimate - std::stod(r.paper_value));
  if (!(r.computed.upper < 2))
    r.verdict = Verdict::NotBelow2;
  else if (r.discrepancy <= kReproductionTolerance)
    r.verdict = Verdict::ReproducedBelow2;
  else
    r.verdict = Verdict::DiscrepancyFlagged;
  return r;
}

Reading reading(std::string label, const std::string& id, const std::vector<Term>& terms) {
  return {label, certify_product(id + "/" + label, terms)};
}

InequalityRecord lemma_42(const RegistryOptions&) {
  const std::vector<Term> fixed = {ratio_term(q(9, 8)),   ratio_term(q(730, 729)),
                                   ratio_term(q(6, 5)),   ratio_term(q(18, 17)),
                                   ratio_term(q(54, 53))};
  auto printed = fixed;
  printed.push_back(exp_of(q(3, 8744), "3/8744"));
  auto derived = fixed;
  const Rational tail = tail_product_argument(2, 3, 7);
  derived.push_back(exp_of(tail, fraction(tail)));
  return finish("L42", "3 | sigma*(N) with 3 not dividing N", "1.4588",
                certify_product("L42", printed, {{"i0", 7}}),
                {reading("derived-tail", "L42", derived)});
}

InequalityRecord lemma_43(const RegistryOptions& options) {
  const unsigned k = options.min_k_both_divisible;
  if (k < 2) throw std::invalid_argument("min_k_both_divisible must be >= 2");
  const std::vector<Term> fixed = {
      near_one(2, k),         near_one(3, k - 1),      ratio_term(q(4, 3)),
      ratio_term(q(6, 5)),    ratio_term(q(12, 11)),   ratio_term(q(18, 17)),
      ratio_term(q(54, 53)),  ratio_term(q(108, 107))};
  auto printed = fixed;
  printed.push_back(exp_of(q(3, 8744) + q(3, 1942), "3/8744+3/1942"));
  auto derived = fixed;
  const Rational tail = tail_product_argument(2, 3, 7) + tail_product_argument(4, 3, 5);
  derived.push_back(exp_of(tail, fraction(tail)));
  return finish("L43", "3 divides both N and sigma*(N)", "1.9041",
                certify_product("L43", printed, {{"k", k}}),
                {reading("derived-tail", "L43", derived)});
}

InequalityRecord theorem_53a(const RegistryOptions& options) {
  const std::vector<Term> fixed = {ratio_term(q(513, 512), "(2^9+1)/2^9"), ratio_term(q(6, 5)),
                                   ratio_term(q(7, 9), "3/4*28/27")};
  auto printed = fixed;
  printed.push_back(c_analytic());
  printed.push_back(exp_of(q(5, 36), "5/36"));
  auto tight = fixed;
  tight.push_back(c_tight(options.tight_c_cutoff));
  tight.push_back(exp_of(q(5, 36), "5/36"));
  return finish("T53-a", "q = 5 with 19 | N", "1.7332", certify_product("T53-a", printed),
                {reading("tight-C", "T53-a", tight)});
}

InequalityRecord theorem_53b(const RegistryOptions& options) {
  const std::vector<Term> fixed = {ratio_term(q(7, 8)), ratio_term(q(6, 5)), ratio_term(q(9, 8))};
  // exponents b >= 3: sum_b 1/(2*5^b - 1) <= (5/4)(1/249)
  const Rational tail = tail_product_argument(2, 5, 3);
  auto natural = fixed;
  natural.push_back(c_analytic());
  natural.push_back(exp_of(tail, "5/4*1/249"));
  auto literal = fixed;
  literal.push_back(c_analytic());
  literal.push_back(exp_of(q(5, 4) * q(250, 249), "5/4*250/249"));
  auto tight = fixed;
  tight.push_back(c_tight(options.tight_c_cutoff));
  tight.push_back(exp_of(tail, "5/4*1/249"));
  return finish("T53-b", "q = 5 with 19 not dividing N", "1.9150",
                certify_product("T53-b", natural, {{"b0", 3}}),
                {reading("printed-exponent", "T53-b", literal), reading("tight-C", "T53-b", tight)});
}

InequalityRecord theorem_54_q7(const RegistryOptions&) {
  // largest of the three cases s = 1, 2, 3 for sigma*(sigma*(N))/sigma*(N)
  const Rational s1 = q(65, 64) * q(8, 7);
  const Rational s2 = q(17, 16) * q(344, 343);
  const Rational s3 = q(9, 8) * Rational(117650, 117649);
  const Rational case_max = std::max({s1, s2, s3});
  const Rational mersenne_tail = tail_product_argument(2, 4, 2);  // 2^(2i+1), i >= 2

  std::vector<Term> printed = {ratio_term(q(65, 56)), ratio_term(q(4, 3)),
                               exp_of(q(4, 93) + q(8, 91), "4/93+8/91")};
  std::vector<Term> derived = {ratio_term(case_max, "max over s=1,2,3"), ratio_term(q(4, 3)),
                               exp_of(mersenne_tail + tail_product_argument(2, 7, 1),
                                      fraction(mersenne_tail + tail_product_argument(2, 7, 1)))};
  // the displayed max{} multiplies the s = 1 and s = 2 bounds together
  const Rational literal_max = std::max<Rational>(s1 * s2, s3);
  std::vector<Term> literal = {ratio_term(literal_max, "printed max{}"), ratio_term(q(4, 3)),
                               exp_of(q(4, 93) + q(8, 91), "4/93+8/91")};
  return finish("T54-q7", "q = 7", "1.7604", certify_product("T54-q7", printed),
                {reading("derived-tail", "T54-q7", derived),
                 reading("printed-max", "T54-q7", literal)});
}

InequalityRecord theorem_54_q11(const RegistryOptions&) {
  const std::vector<Term> fixed = {ratio_term(q(9, 8)), near_one(11, 6), ratio_term(q(4, 3)),
                                   ratio_term(q(8, 7))};
  auto printed = fixed;
  printed.push_back(exp_of(q(4, 93) + q(12, 231), "4/93+12/231"));
  auto derived = fixed;
  const Rational tail = tail_product_argument(2, 4, 2) + tail_product_argument(2, 11, 1);
  derived.push_back(exp_of(tail, fraction(tail)));
  return finish("T54-q11", "q = 11", "1.8850", certify_product("T54-q11", printed),
                {reading("derived-tail", "T54-q11", derived)});
}

using Builder = std::function<InequalityRecord(const RegistryOptions&)>;

const std::map<std::string, Builder>& registry() {
  static const std::map<std::string, Builder> r = {
      {"L42", lemma_42},         {"L43", lemma_43},           {"T53-a", theorem_53a},
      {"T53-b", theorem_53b},    {"T54-q7", theorem_54_q7},   {"T54-q11", theorem_54_q11}};
  return r;
}

nlohmann::ordered_json bound_json(const Rational& v, Rounding rounding) {
  return {{"decimal", decimal(v, 12, rounding)}, {"fraction", fraction(v)}};
}

}  // namespace

const std::vector<std::string>& inequality_ids() {
  static const std::vector<std::string> ids = {"L42",   "L43",    "T53-a",
                                               "T53-b", "T54-q7", "T54-q11"};
  return ids;
}

InequalityRecord evaluate_inequality(const std::string& id, const RegistryOptions& options) {
  const auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown inequality id '" + id + "'");
  return it->second(options);
}

InequalityRecord constant_record(const RegistryOptions& options) {
  return finish("C", "prod over Mersenne exponents of 2^p/(2^p-1)", "1.631007",
                certify_product("C", {c_analytic()}),
                {reading("tight-C", "C", {c_tight(options.tight_c_cutoff)})});
}

std::string to_json_line(const InequalityRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["description"] = r.description;
  j["paper_value"] = r.paper_value;
  j["float_estimate"] = r.computed.estimate;
  j["lower"] = bound_json(r.computed.lower, Rounding::Down);
  j["upper"] = bound_json(r.computed.upper, Rounding::Up);
  j["verdict"] = to_string(r.verdict);
  j["discrepancy"] = r.discrepancy;
  auto ledger = nlohmann::ordered_json::array();
  for (const auto& e : r.computed.ledger)
    ledger.push_back({{"term", e.term}, {"contribution", decimal(e.contribution, 12, Rounding::Up)}});
  j["ledger"] = ledger;
  auto alternates = nlohmann::ordered_json::array();
  for (const auto& a : r.alternates) {
    alternates.push_back({{"label", a.label},
                          {"float_estimate", a.certificate.estimate},
                          {"lower", bound_json(a.certificate.lower, Rounding::Down)},
                          {"upper", bound_json(a.certificate.upper, Rounding::Up)},
                          {"below_2", a.certificate.upper < 2}});
  }
  j["alternates"] = alternates;
  return j.dump();
}

}  // namespace usp::bounds
