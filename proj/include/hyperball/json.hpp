#pragma once

#include <json.hpp>

#include "hyperball/scalar.hpp"

// Rationals travel as "p/q" strings, never as JSON numbers.
namespace nlohmann {
template <>
struct adl_serializer<mpq_class> {
  static void to_json(json& j, const mpq_class& value) { j = hyperball::format_scalar(value); }
  static void from_json(const json& j, mpq_class& value);
};
}  // namespace nlohmann

namespace hyperball {
using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;
}  // namespace hyperball
