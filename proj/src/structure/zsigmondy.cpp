#include "usp/structure.hpp"

#include <numeric>
#include <stdexcept>

namespace usp::structure {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

std::string to_string(const ZsigmondyResult& r) {
  return std::visit(
      overloaded{
          [](const PrimitivePrime& p) { return "PrimitivePrime(" + std::to_string(p.prime) + ")"; },
          [](const ExceptionCatalan216&) { return std::string("ExceptionCatalan216"); },
          [](const ExceptionTrivialDifference&) {
            return std::string("ExceptionTrivialDifference");
          },
          [](const ExceptionPowerOfTwoSum&) { return std::string("ExceptionPowerOfTwoSum"); },
      },
      r);
}

ZsigmondyResult zsigmondy(Natural a, Natural b, unsigned n) {
  if (!(a > b && b >= 1)) throw std::invalid_argument("zsigmondy: need a > b >= 1");
  if (std::gcd(a, b) != 1) throw std::invalid_argument("zsigmondy: a and b must be coprime");
  if (n == 0) throw std::invalid_argument("zsigmondy: n must be >= 1");

  if (a == 2 && b == 1 && n == 6) return ExceptionCatalan216{};
  if (a - b == 1 && n == 1) return ExceptionTrivialDifference{};
  if (n == 2 && arith::is_power_of_two(arith::checked_add(a, b))) return ExceptionPowerOfTwoSum{};

  const Natural value = arith::checked_pow(a, n) - arith::checked_pow(b, n);
  for (const auto& [r, e] : arith::factorize(value)) {
    bool primitive = true;
    for (unsigned m = 1; m < n && primitive; ++m) {
      if (arith::pow_mod(a, m, r) == arith::pow_mod(b, m, r)) primitive = false;
    }
    if (primitive) return PrimitivePrime{r};
  }
  throw std::logic_error("zsigmondy: no primitive prime divisor outside the exception list for (" +
                         std::to_string(a) + ", " + std::to_string(b) + ", " +
                         std::to_string(n) + ")");
}

}  // namespace usp::structure
