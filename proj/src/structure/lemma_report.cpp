#include <nlohmann/json.hpp>

#include "usp/structure.hpp"

namespace usp::structure {

namespace {
nlohmann::ordered_json witnesses(const std::vector<Witness>& list) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& w : list) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [k, v] : w) obj[k] = v;
    out.push_back(std::move(obj));
  }
  return out;
}
}  // namespace

std::string to_json_line(const LemmaReport& report) {
  nlohmann::ordered_json j;
  j["lemma_id"] = report.lemma_id;
  j["range"] = report.range;
  j["checked"] = report.checked;
  j["applicable"] = report.applicable;
  j["counterexamples"] = witnesses(report.counterexamples);
  j["solutions"] = witnesses(report.solutions);
  j["ms"] = report.elapsed.count();
  return j.dump();
}

}  // namespace usp::structure
