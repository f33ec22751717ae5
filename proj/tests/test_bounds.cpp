#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <map>
#include <random>

#include "usp/bounds.hpp"

using namespace usp;
using namespace usp::bounds;
using boost::multiprecision::cpp_dec_float_50;

namespace {

cpp_dec_float_50 dec(const Rational& q) {
  return cpp_dec_float_50(q.get_num().get_str()) / cpp_dec_float_50(q.get_den().get_str());
}

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// ln prod_{i >= i0} t r^i / (t r^i - 1), summed until the terms vanish
long double log_tail_product(long double t, long double r, int i0) {
  long double s = 0;
  for (int i = i0; i < i0 + 200; ++i) s -= std::log1p(-1.0L / (t * std::pow(r, i)));
  return s;
}

// the displays recomputed directly in long double
std::map<std::string, long double> display_values() {
  const long double c = 4.0L / 3.0L * std::exp(4.0L / 21.0L);
  std::map<std::string, long double> v;
  v["L42"] = 9.0L / 8 * 730 / 729 * 6 / 5 * 18 / 17 * 54 / 53 * std::exp(3.0L / 8744);
  v["L43"] = (1 + std::pow(2.0L, -46)) * (1 + std::pow(3.0L, -45)) * 4 / 3 * 6 / 5 * 12 / 11 *
             18 / 17 * 54 / 53 * 108 / 107 * std::exp(3.0L / 8744 + 3.0L / 1942);
  v["T53-a"] = 513.0L / 512 * 6 / 5 * 3 / 4 * 28 / 27 * c * std::exp(5.0L / 36);
  v["T53-b"] = 7.0L / 8 * 6 / 5 * 9 / 8 * c * std::exp(5.0L / 4 / 249);
  v["T54-q7"] = 65.0L / 56 * 4 / 3 * std::exp(4.0L / 93 + 8.0L / 91);
  v["T54-q11"] = 9.0L / 8 * (1 + std::pow(11.0L, -6)) * 4 / 3 * 8 / 7 * std::exp(4.0L / 93 + 12.0L / 231);
  return v;
}

}  // namespace

TEST_CASE("exp_upper and exp_lower examples") {
  CHECK(exp_upper(0) == 1);
  CHECK(exp_lower(0) == 1);

  const Rational x = frac(4, 21);
  const auto ref = boost::multiprecision::exp(dec(x));
  CHECK(dec(exp_upper(x)) >= ref);
  CHECK(dec(exp_lower(x)) <= ref);
  CHECK(dec(exp_upper(x)) - ref < cpp_dec_float_50("1e-12"));
  CHECK(exp_upper(x).get_d() == doctest::Approx(1.2098255679).epsilon(1e-10));

  const Rational small = exp_upper(frac(3, 8744)) - 1;
  CHECK(small.get_d() >= 0.000343);
  CHECK(small.get_d() <= 0.000344);

  CHECK_THROWS_AS(exp_upper(1), std::domain_error);
  CHECK_THROWS_AS(exp_upper(frac(-1, 2)), std::domain_error);
  CHECK_THROWS_AS(exp_lower(frac(3, 2)), std::domain_error);
}

TEST_CASE("exp_upper is one-sided against a 50-digit reference") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unit(0.0, 0.9);
  const cpp_dec_float_50 slack("1e-45");
  for (int i = 0; i < 10'000; ++i) {
    const Rational x(unit(rng));
    const auto ref = boost::multiprecision::exp(dec(x));
    const auto u = dec(exp_upper(x));
    REQUIRE(u >= ref - slack);
    REQUIRE(u <= ref * cpp_dec_float_50("1.000001"));
    REQUIRE(dec(exp_lower(x)) <= ref + slack);
  }
}

TEST_CASE("exp_enclosure beyond the unit interval") {
  for (long n : {1L, 3L, 7L, 25L}) {
    const Rational x = frac(n, 4);
    const auto e = exp_enclosure(x);
    const auto ref = boost::multiprecision::exp(dec(x));
    CHECK(dec(e.lower) <= ref);
    CHECK(dec(e.upper) >= ref);
    CHECK(e.upper - e.lower < Rational(1, 1000000));
  }
  CHECK_THROWS_AS(exp_enclosure(frac(-1, 3)), std::domain_error);
}

TEST_CASE("tail product arguments") {
  CHECK(tail_product_argument(2, 3, 7) == frac(3, 8746));
  CHECK(tail_product_argument(2, 3, 7) <= frac(3, 8744));
  CHECK(tail_product_argument(4, 3, 5) == frac(3, 1942));
  for (long q : {5L, 7L, 11L, 13L, 97L}) {
    CHECK(tail_product_argument(2, q, 1) == frac(q, (q - 1) * (2 * q - 1)));
  }
  CHECK_THROWS_AS(tail_product_argument(2, 1, 3), std::invalid_argument);
}

TEST_CASE("tail_product_bound dominates the infinite product") {
  struct Case {
    Natural t, r, i0;
  };
  for (auto [t, r, i0] : {Case{2, 3, 7}, Case{4, 3, 5}, Case{2, 5, 3}, Case{2, 7, 1}, Case{2, 4, 2},
                          Case{2, 11, 1}, Case{2, 13, 1}}) {
    const long double product = std::exp(log_tail_product(t, r, static_cast<int>(i0)));
    const Rational u = tail_product_bound(t, r, i0);
    CAPTURE(t);
    CAPTURE(r);
    CAPTURE(i0);
    CHECK(static_cast<long double>(u.get_d()) >= product);
  }
  const auto u = tail_product_bound(2, 3, 7);
  CHECK(u - 1 < Rational(1, 1000));
  CHECK(dec(u) >= boost::multiprecision::exp(dec(frac(3, 8746))));
  CHECK_THROWS_AS(tail_product_bound(2, 2, 0), std::domain_error);
}

TEST_CASE("mersenne_constant") {
  const auto c2 = mersenne_constant(2);
  CHECK(c2.lower == frac(4, 3));
  CHECK(c2.upper < Rational(16131008, 10000000));
  CHECK(c2.upper == frac(4, 3) * exp_upper(frac(4, 21)));

  // product over 2, 3, 5, 7, 13, 17, 19, 31 computed directly
  long double direct = 1;
  for (int p : {2, 3, 5, 7, 13, 17, 19, 31}) direct *= std::ldexp(1.0L, p) / (std::ldexp(1.0L, p) - 1);
  const auto c31 = mersenne_constant(31);
  CHECK(c31.lower.get_d() == doctest::Approx(static_cast<double>(direct)).epsilon(1e-15));
  CHECK(decimal(c31.lower, 5, Rounding::Down) == "1.58555");
  CHECK(c31.lower < c31.upper);
  CHECK(c31.upper < frac(4, 3) * exp_upper(frac(4, 21)));

  Rational previous_lower = 0, previous_upper = 10;
  for (unsigned k = 2; k <= kMaxMersenneCutoff; ++k) {
    const auto c = mersenne_constant(k);
    CAPTURE(k);
    REQUIRE(c.lower <= Rational(c.estimate));
    REQUIRE(Rational(c.estimate) <= c.upper);
    REQUIRE(c.lower >= previous_lower);
    REQUIRE(c.upper <= previous_upper);
    previous_lower = c.lower;
    previous_upper = c.upper;
  }
  CHECK_THROWS_AS(mersenne_constant(1), std::invalid_argument);
  CHECK_THROWS_AS(mersenne_constant(kMaxMersenneCutoff + 1), std::invalid_argument);
}

TEST_CASE("decimal rendering rounds outward") {
  CHECK(decimal(frac(1, 3), 4, Rounding::Down) == "0.3333");
  CHECK(decimal(frac(1, 3), 4, Rounding::Up) == "0.3334");
  CHECK(decimal(frac(3, 2), 2, Rounding::Up) == "1.50");
  CHECK(decimal(Rational(2), 3, Rounding::Down) == "2.000");
  CHECK(fraction(frac(6, 4)) == "3/2");
}

TEST_CASE("registered inequalities") {
  const auto expected = display_values();
  const std::map<std::string, double> printed = {{"L42", 1.4588},  {"L43", 1.9041},
                                                 {"T53-a", 1.7332}, {"T53-b", 1.9150},
                                                 {"T54-q11", 1.8850}};
  REQUIRE(inequality_ids().size() == 6);
  for (const auto& id : inequality_ids()) {
    const auto r = evaluate_inequality(id);
    CAPTURE(id);
    CHECK(r.computed.upper < 2);
    CHECK(r.computed.lower <= r.computed.upper);
    CHECK(r.computed.lower <= Rational(r.computed.estimate));
    CHECK(Rational(r.computed.estimate) <= r.computed.upper);
    CHECK(r.computed.estimate == doctest::Approx(static_cast<double>(expected.at(id))).epsilon(1e-12));
    if (auto it = printed.find(id); it != printed.end()) {
      CHECK(std::fabs(r.computed.estimate - it->second) <= 5e-4);
      CHECK(r.verdict == Verdict::ReproducedBelow2);
    }
    for (const auto& a : r.alternates) CHECK(a.certificate.lower <= a.certificate.upper);
  }
  CHECK_THROWS_AS(evaluate_inequality("L99"), std::invalid_argument);
}

TEST_CASE("q = 7 record and the constant are flagged, not failed") {
  const auto q7 = evaluate_inequality("T54-q7");
  CHECK(q7.verdict == Verdict::DiscrepancyFlagged);
  CHECK(q7.computed.upper < 2);
  CHECK(q7.discrepancy > 5e-4);
  for (const auto& a : q7.alternates) CHECK(a.certificate.upper < 2);

  const auto c = constant_record();
  CHECK(c.verdict == Verdict::DiscrepancyFlagged);
  CHECK(c.computed.upper < Rational(16131008, 10000000));
}

TEST_CASE("printed tails majorize the derived ones") {
  for (const std::string id : {"L42", "L43"}) {
    const auto r = evaluate_inequality(id);
    REQUIRE(!r.alternates.empty());
    CHECK(r.alternates[0].label == "derived-tail");
    CHECK(r.alternates[0].certificate.upper <= r.computed.upper);
  }
}

TEST_CASE("sensitivity to the imported k bound") {
  RegistryOptions options;
  options.min_k_both_divisible = 10;
  const auto weaker = evaluate_inequality("L43", options);
  CHECK(weaker.computed.upper > evaluate_inequality("L43").computed.upper);
  options.min_k_both_divisible = 1;
  CHECK_THROWS_AS(evaluate_inequality("L43", options), std::invalid_argument);
}

TEST_CASE("inequality JSON lines carry exact fractions") {
  const auto j = nlohmann::json::parse(to_json_line(evaluate_inequality("L42")));
  CHECK(j["id"] == "L42");
  CHECK(j["paper_value"] == "1.4588");
  CHECK(j["verdict"] == "ReproducedBelow2");
  const std::string upper = j["upper"]["fraction"];
  Rational parsed(upper);
  parsed.canonicalize();
  CHECK(parsed == evaluate_inequality("L42").computed.upper);
}

TEST_CASE("q_bound_scan") {
  const auto scan = q_bound_scan(100);
  CHECK(scan.satisfying(1) == std::vector<Natural>{5, 7, 11, 13});
  CHECK(scan.satisfying(2) == std::vector<Natural>{5, 7});
  CHECK(scan.threshold.get_d() == doctest::Approx(1.102087).epsilon(1e-6));

  for (const auto& e : scan.entries) {
    const long double lhs = (1 + std::pow(static_cast<long double>(e.q), -static_cast<int>(e.f2))) *
                            std::exp(static_cast<long double>(e.q) / ((e.q - 1) * (2 * e.q - 1)));
    CHECK(e.lhs_estimate == doctest::Approx(static_cast<double>(lhs)).epsilon(1e-12));
    const cpp_dec_float_50 qd(static_cast<unsigned long long>(e.q));
    const auto exact = (1 + pow(qd, -static_cast<int>(e.f2))) *
                       boost::multiprecision::exp(qd / ((qd - 1) * (2 * qd - 1)));
    CHECK(dec(e.lhs_upper) >= exact);
  }
  // failing at f2 = 1 implies failing at f2 = 2
  for (const auto& e : scan.entries) {
    if (e.f2 != 1 || e.satisfies) continue;
    for (const auto& g : scan.entries)
      if (g.q == e.q && g.f2 == 2) CHECK_FALSE(g.satisfies);
  }
  CHECK_THROWS_AS(q_bound_scan(3), std::invalid_argument);
}

TEST_CASE("case 13 elimination") {
  const auto v = case_13_elimination();
  CHECK(v.ok());
  bool saw_25 = false, saw_51 = false, saw_order = false;
  for (const auto& s : v.steps) {
    saw_25 = saw_25 || s.claim.find("25 = 5^2") != std::string::npos;
    saw_51 = saw_51 || s.claim.find("51") != std::string::npos;
    saw_order = saw_order || s.evidence.find("ord_5(2) = 4") != std::string::npos;
  }
  CHECK(saw_25);
  CHECK(saw_51);
  CHECK(saw_order);
}
