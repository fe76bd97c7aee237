#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperball/json.hpp"

namespace hyperball {

enum class Verdict { holds, refuted, inconclusive };

std::string_view to_string(Verdict verdict);

/// Outcome of a predicate plus whatever is needed to re-check it.
///
/// Randomized searches never report `holds`; only exhaustive checks do.
struct PropertyReport {
  std::string check;
  Verdict verdict = Verdict::inconclusive;
  Json certificate = Json::object();
  std::vector<std::string> warnings;
  std::optional<std::uint64_t> seed;
  std::uint64_t checked = 0;
  bool exhaustive = false;

  bool holds() const { return verdict == Verdict::holds; }
  bool refuted() const { return verdict == Verdict::refuted; }
};

Json to_json(const PropertyReport& report);

}  // namespace hyperball
