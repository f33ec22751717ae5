#include <nlohmann/json.hpp>

#include <stdexcept>

#include "usp/search.hpp"

namespace usp::search {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::USP: return "usp";
    case Classification::UnitaryPerfect: return "unitary-perfect";
    case Classification::SuperPerfect: return "super-perfect";
    case Classification::Perfect: return "perfect";
  }
  return "?";
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::All: return "all";
    case Parity::Odd: return "odd";
    case Parity::Even: return "even";
  }
  return "?";
}

std::optional<Classification> parse_classification(const std::string& s) {
  for (auto c : {Classification::USP, Classification::UnitaryPerfect, Classification::SuperPerfect,
                 Classification::Perfect}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

std::optional<Parity> parse_parity(const std::string& s) {
  for (auto p : {Parity::All, Parity::Odd, Parity::Even}) {
    if (s == to_string(p)) return p;
  }
  return std::nullopt;
}

DivisorKind divisor_kind(Classification c) {
  return c == Classification::USP || c == Classification::UnitaryPerfect ? DivisorKind::Unitary
                                                                         : DivisorKind::Ordinary;
}

namespace {

bool iterated(Classification c) {
  return c == Classification::USP || c == Classification::SuperPerfect;
}

}  // namespace

bool classify(Natural n, Classification c) {
  if (n == 0) return false;
  const DivisorKind kind = divisor_kind(c);
  const Natural first = divisor_function(n, kind);
  if (!iterated(c)) return first == 2 * n;
  return divisor_function(first, kind) == 2 * n;
}

SearchHit verify_hit(Natural n, Classification c) {
  if (n == 0) throw std::logic_error("0 is never a hit");
  const DivisorKind kind = divisor_kind(c);
  SearchHit hit;
  hit.n = n;
  hit.classification = c;
  hit.first = divisor_function(n, kind);
  auto image = arith::factorize(hit.first);
  hit.second = kind == DivisorKind::Unitary ? arith::unitary_sigma(image) : arith::divisor_sigma(image);
  const Natural checked = iterated(c) ? hit.second : hit.first;
  if (checked != 2 * n) {
    throw std::logic_error("recomputation rejects " + std::to_string(n) + " as " + to_string(c));
  }
  if (c == Classification::USP && hit.odd()) {
    hit.structure = structure::check_usp_structure(n, image);
  }
  return hit;
}

std::string to_json_line(const SearchHit& hit) {
  nlohmann::ordered_json j;
  j["n"] = hit.n;
  j["class"] = to_string(hit.classification);
  j["parity"] = hit.odd() ? "odd" : "even";
  j["function"] = divisor_kind(hit.classification) == DivisorKind::Unitary ? "sigma*" : "sigma";
  j["f_n"] = hit.first;
  j["f_f_n"] = hit.second;
  if (hit.structure) {
    const auto& s = *hit.structure;
    nlohmann::ordered_json v;
    v["ok"] = s.ok();
    v["f1"] = s.f1;
    v["q"] = s.q;
    v["f2"] = s.f2;
    auto clauses = nlohmann::ordered_json::array();
    for (const auto& c : s.clauses) {
      clauses.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    v["clauses"] = std::move(clauses);
    j["structure"] = std::move(v);
  } else {
    j["structure"] = nullptr;
  }
  return j.dump();
}

}  // namespace usp::search
