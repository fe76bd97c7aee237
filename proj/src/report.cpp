#include "hyperball/report.hpp"

#include "hyperball/error.hpp"

void nlohmann::adl_serializer<mpq_class>::from_json(const json& j, mpq_class& value) {
  if (!j.is_string()) {
    throw hyperball::Error(hyperball::ErrorCode::ParseError, "rational must be a \"p/q\" string");
  }
  value = hyperball::parse_scalar(j.get<std::string>());
}

namespace hyperball {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::holds: return "holds";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Json to_json(const PropertyReport& report) {
  Json j;
  j["check"] = report.check;
  j["verdict"] = std::string(to_string(report.verdict));
  j["certificate"] = report.certificate;
  j["exhaustive"] = report.exhaustive;
  j["checked"] = report.checked;
  if (report.seed) j["seed"] = *report.seed;
  if (!report.warnings.empty()) j["warnings"] = report.warnings;
  return j;
}

}  // namespace hyperball
