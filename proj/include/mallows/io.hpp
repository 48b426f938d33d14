#pragma once

// Text forms shared by the CLI and the report writers. CSV always carries a
// header row; reals go through format_real.

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "mallows/format.hpp"
#include "mallows/measure.hpp"
#include "mallows/oracle.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rect.hpp"

namespace mallows {

inline nlohmann::json to_json(const Permutation& p) {
  return nlohmann::json(std::vector<Permutation::value_type>(p.values().begin(), p.values().end()));
}

inline nlohmann::json to_json(const Rect& r) {
  return {{"x", {r.x1, r.x2}},
          {"y", {r.y1, r.y2}},
          {"closed", {{"left", r.left_closed}, {"right", r.right_closed},
                      {"bottom", r.bottom_closed}, {"top", r.top_closed}}}};
}

inline nlohmann::json to_json(const DiscrepancyReport& rep) {
  nlohmann::json j{{"max_abs_dev", rep.max_abs_dev}, {"argmax_rect", to_json(rep.argmax_rect)}};
  if (rep.per_rect_devs) {
    auto& rows = j["per_rect_devs"] = nlohmann::json::array();
    for (const auto& d : *rep.per_rect_devs)
      rows.push_back({{"rect", to_json(d.rect)}, {"empirical", d.empirical}, {"reference", d.reference}});
  }
  return j;
}

// One-line form needs quoting inside a CSV field once n > 1.
inline std::string csv_field(const Permutation& p) {
  const std::string s = to_string(p);
  return p.size() > 1 ? "\"" + s + "\"" : s;
}

/// Row-major "a,b,count".
inline std::string to_csv(const GridCounts& g) {
  std::string out = "a,b,count\n";
  for (std::size_t a = 1; a <= g.m; ++a)
    for (std::size_t b = 1; b <= g.m; ++b)
      out += std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(g.at(a, b)) + "\n";
  return out;
}

/// "permutation,probability" in lexicographic order.
inline std::string to_csv(const ExactDistribution& d) {
  std::string out = "permutation,probability\n";
  for (std::size_t k = 0; k < d.perms.size(); ++k) out += csv_field(d.perms[k]) + "," + format_real(d.probs[k]) + "\n";
  return out;
}

}  // namespace mallows
