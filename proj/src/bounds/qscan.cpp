#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

#include "certificate.hpp"

namespace usp::bounds {

std::vector<Natural> QScan::satisfying(unsigned f2) const {
  std::vector<Natural> out;
  for (const auto& e : entries)
    if (e.f2 == f2 && e.satisfies) out.push_back(e.q);
  return out;
}

QScan q_bound_scan(Natural q_max, unsigned c_cutoff) {
  if (q_max < 5) throw std::invalid_argument("q_bound_scan: q_max must be >= 5");
  QScan scan;
  scan.c_cutoff = c_cutoff;
  scan.threshold = Rational(16) / (9 * mersenne_constant(c_cutoff).upper);
  scan.threshold.canonicalize();

  for (Natural q : arith::primes_below(q_max + 1)) {
    if (q < 5) continue;
    const Rational x = tail_product_argument(2, q, 1);  // q / ((q-1)(2q-1))
    const Rational e = exp_upper(x);
    mpz_class power = q;
    for (unsigned f2 = 1; f2 <= 2; ++f2) {
      Rational lhs = Rational(power + 1, power) * e;
      lhs.canonicalize();
      const double estimate =
          (1.0 + std::pow(static_cast<double>(q), -static_cast<double>(f2))) * std::exp(x.get_d());
      scan.entries.push_back({q, f2, !(lhs < scan.threshold), lhs, estimate});
      power *= q;
    }
  }
  return scan;
}

std::string to_json_line(const QScanEntry& entry, const QScan& scan) {
  nlohmann::ordered_json j;
  j["q"] = entry.q;
  j["f2_class"] = entry.f2 == 1 ? "f2=1" : "f2>=2";
  j["satisfies"] = entry.satisfies;
  j["lhs_estimate"] = entry.lhs_estimate;
  j["lhs_upper"] = {{"decimal", decimal(entry.lhs_upper, 12, Rounding::Up)},
                    {"fraction", fraction(entry.lhs_upper)}};
  j["threshold"] = {{"decimal", decimal(scan.threshold, 12, Rounding::Down)},
                    {"fraction", fraction(scan.threshold)}};
  j["c_cutoff"] = scan.c_cutoff;
  return j.dump();
}

}  // namespace usp::bounds
