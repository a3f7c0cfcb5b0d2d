#include "orientsel/feature.hpp"

namespace orientsel {

const char* feature_type_name(FeatureType t) {
  switch (t) {
    case FeatureType::PL: return "PL";
    case FeatureType::LL: return "LL";
    case FeatureType::AL: return "AL";
    case FeatureType::AR: return "AR";
    case FeatureType::ER: return "ER";
  }
  return "PL";
}

std::optional<FeatureType> feature_type_from(const std::string& name) {
  if (name == "PL") return FeatureType::PL;
  if (name == "LL") return FeatureType::LL;
  if (name == "AL") return FeatureType::AL;
  if (name == "AR") return FeatureType::AR;
  if (name == "ER") return FeatureType::ER;
  return std::nullopt;
}

}  // namespace orientsel
